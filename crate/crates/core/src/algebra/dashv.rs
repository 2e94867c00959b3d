use serde::{Deserialize, Serialize};

use super::FiniteForestAlgebra;

/// How a pair of the relation was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Derivation {
    Generator,
    /// `pairs[prefix] · generator`, componentwise.
    Product {
        prefix: usize,
        generator: (u32, u32),
    },
}

/// The relation `⊣` on `V`: the submonoid of `V × V` generated by the
/// pairs `(v, v)`, `([], h + [])` and `([], [] + h)`.
#[derive(Debug, Clone)]
pub struct DashvRelation {
    n: usize,
    member: Vec<bool>,
    pairs: Vec<(u32, u32)>,
    trace: Vec<Derivation>,
}

impl DashvRelation {
    /// Closure of the generators under right multiplication by generators.
    pub fn compute(alg: &FiniteForestAlgebra) -> Self {
        let n = alg.v_len();
        let e = alg.identity() as u32;
        let mut gens: Vec<(u32, u32)> = (0..n as u32).map(|v| (v, v)).collect();
        for h in 0..alg.h_len() {
            gens.push((e, alg.embed_left(h) as u32));
            gens.push((e, alg.embed_right(h) as u32));
        }
        let mut rel = DashvRelation {
            n,
            member: vec![false; n * n],
            pairs: Vec::new(),
            trace: Vec::new(),
        };
        for &g in &gens {
            rel.insert(g, Derivation::Generator);
        }
        let mut next = 0;
        while next < rel.pairs.len() {
            let (u, w) = rel.pairs[next];
            let (cu, cw) = (alg.compose_row(u as usize), alg.compose_row(w as usize));
            for &g in &gens {
                let p = (cu[g.0 as usize], cw[g.1 as usize]);
                rel.insert(
                    p,
                    Derivation::Product {
                        prefix: next,
                        generator: g,
                    },
                );
            }
            next += 1;
        }
        rel
    }

    fn insert(&mut self, (u, w): (u32, u32), how: Derivation) {
        let k = u as usize * self.n + w as usize;
        if !self.member[k] {
            self.member[k] = true;
            self.pairs.push((u, w));
            self.trace.push(how);
        }
    }

    pub fn contains(&self, u: usize, w: usize) -> bool {
        u < self.n && w < self.n && self.member[u * self.n + w]
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in discovery order, parallel to [`DashvRelation::trace`].
    pub fn discovered(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn trace(&self) -> &[Derivation] {
        &self.trace
    }

    /// Pairs in lexicographic order.
    pub fn sorted_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n * self.n)
            .filter(|&k| self.member[k])
            .map(|k| (k / self.n, k % self.n))
            .collect()
    }

    /// Replay every recorded derivation against the algebra.
    pub fn verify_trace(&self, alg: &FiniteForestAlgebra) -> Result<(), String> {
        for (i, (&(u, w), how)) in self.pairs.iter().zip(&self.trace).enumerate() {
            let gen_ok = |(a, b): (u32, u32)| {
                let e = alg.identity() as u32;
                a == b
                    || (a == e
                        && (0..alg.h_len()).any(|h| {
                            alg.embed_left(h) as u32 == b || alg.embed_right(h) as u32 == b
                        }))
            };
            match *how {
                Derivation::Generator => {
                    if !gen_ok((u, w)) {
                        return Err(format!("pair {i} is not a generator"));
                    }
                }
                Derivation::Product { prefix, generator } => {
                    if prefix >= i || !gen_ok(generator) {
                        return Err(format!("pair {i} has a bad derivation"));
                    }
                    let (pu, pw) = self.pairs[prefix];
                    if alg.compose(pu as usize, generator.0 as usize) != u as usize
                        || alg.compose(pw as usize, generator.1 as usize) != w as usize
                    {
                        return Err(format!("pair {i} does not match its derivation"));
                    }
                }
            }
        }
        Ok(())
    }
}
