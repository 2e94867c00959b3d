/// A finite forest algebra `(H, V)` given by tables.
///
/// `H` is numbered `0..h_len()`, `V` is numbered `0..v_len()`. Composition
/// follows function composition: `act(compose(v, w), h) == act(v, act(w, h))`.
/// `embed_left(h)` is the context `h + []` and `embed_right(h)` is `[] + h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteForestAlgebra {
    h: usize,
    v: usize,
    add: Vec<u32>,
    compose: Vec<u32>,
    act: Vec<u32>,
    identity: u32,
    embed_left: Vec<u32>,
    embed_right: Vec<u32>,
}

impl FiniteForestAlgebra {
    /// Build from row-major tables. Shapes and ranges are checked; the
    /// axioms are checked separately by [`FiniteForestAlgebra::check_axioms`].
    pub fn from_tables(
        add: Vec<Vec<usize>>,
        compose: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
        identity: usize,
        embed_left: Vec<usize>,
        embed_right: Vec<usize>,
    ) -> Result<Self, String> {
        let h = add.len();
        let v = compose.len();
        let flat = |rows: Vec<Vec<usize>>, width: usize, bound: usize, what: &str| {
            let mut out = Vec::with_capacity(rows.len() * width);
            for row in rows {
                if row.len() != width {
                    return Err(format!(
                        "{what}: row of length {}, expected {width}",
                        row.len()
                    ));
                }
                for x in row {
                    if x >= bound {
                        return Err(format!("{what}: entry {x} out of range"));
                    }
                    out.push(x as u32);
                }
            }
            Ok(out)
        };
        if h == 0 || v == 0 {
            return Err("empty carrier".into());
        }
        if act.len() != v {
            return Err(format!("act: {} rows, expected {v}", act.len()));
        }
        if identity >= v || embed_left.len() != h || embed_right.len() != h {
            return Err("identity or embedding out of shape".into());
        }
        let emb = |e: Vec<usize>| -> Result<Vec<u32>, String> {
            e.into_iter()
                .map(|x| {
                    if x < v {
                        Ok(x as u32)
                    } else {
                        Err(format!("embedding {x} out of range"))
                    }
                })
                .collect()
        };
        Ok(FiniteForestAlgebra {
            h,
            v,
            add: flat(add, h, h, "add")?,
            compose: flat(compose, v, v, "compose")?,
            act: flat(act, h, h, "act")?,
            identity: identity as u32,
            embed_left: emb(embed_left)?,
            embed_right: emb(embed_right)?,
        })
    }

    pub fn h_len(&self) -> usize {
        self.h
    }

    pub fn v_len(&self) -> usize {
        self.v
    }

    #[inline]
    pub fn add(&self, g: usize, h: usize) -> usize {
        self.add[g * self.h + h] as usize
    }

    #[inline]
    pub fn compose(&self, v: usize, w: usize) -> usize {
        self.compose[v * self.v + w] as usize
    }

    #[inline]
    pub fn act(&self, v: usize, h: usize) -> usize {
        self.act[v * self.h + h] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn embed_left(&self, h: usize) -> usize {
        self.embed_left[h] as usize
    }

    pub fn embed_right(&self, h: usize) -> usize {
        self.embed_right[h] as usize
    }

    /// `h + v`, the context `(h + []) ∘ v`.
    pub fn add_left(&self, h: usize, v: usize) -> usize {
        self.compose(self.embed_left(h), v)
    }

    /// `v + h`.
    pub fn add_right(&self, v: usize, h: usize) -> usize {
        self.compose(self.embed_right(h), v)
    }

    /// `vⁿ`, with `v⁰` the identity.
    pub fn power(&self, v: usize, n: usize) -> usize {
        (0..n).fold(self.identity(), |acc, _| self.compose(acc, v))
    }

    pub fn add_row(&self, g: usize) -> &[u32] {
        &self.add[g * self.h..(g + 1) * self.h]
    }

    pub fn act_row(&self, v: usize) -> &[u32] {
        &self.act[v * self.h..(v + 1) * self.h]
    }

    pub fn compose_row(&self, v: usize) -> &[u32] {
        &self.compose[v * self.v..(v + 1) * self.v]
    }

    /// Check the forest-algebra axioms exhaustively; the message names the
    /// first violated one.
    pub fn check_axioms(&self) -> Result<(), String> {
        let (h, v) = (self.h, self.v);
        for a in 0..h {
            for b in 0..h {
                for c in 0..h {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("add not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        for a in 0..v {
            for b in 0..v {
                let ab = self.compose(a, b);
                for x in 0..h {
                    if self.act(ab, x) != self.act(a, self.act(b, x)) {
                        return Err(format!("action not compatible at ({a},{b},{x})"));
                    }
                }
                for c in 0..v {
                    if self.compose(ab, c) != self.compose(a, self.compose(b, c)) {
                        return Err(format!("compose not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        let e = self.identity();
        for a in 0..v {
            if self.compose(e, a) != a || self.compose(a, e) != a {
                return Err(format!("identity not neutral for {a}"));
            }
        }
        if (0..h).any(|x| self.act(e, x) != x) {
            return Err("identity does not act trivially".into());
        }
        let mut rows: Vec<&[u32]> = (0..v).map(|a| self.act_row(a)).collect();
        rows.sort_unstable();
        if rows.windows(2).any(|w| w[0] == w[1]) {
            return Err("action is not faithful".into());
        }
        for g in 0..h {
            for x in 0..h {
                if self.act(self.embed_left(g), x) != self.add(g, x) {
                    return Err(format!("embed_left({g}) is not {g} + []"));
                }
                if self.act(self.embed_right(g), x) != self.add(x, g) {
                    return Err(format!("embed_right({g}) is not [] + {g}"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// `H = V = {0..n-1}`, every operation is `max`, identity 0.
    pub(crate) fn max_semilattice(n: usize) -> FiniteForestAlgebra {
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| i.max(j)).collect()).collect();
        FiniteForestAlgebra::from_tables(
            table.clone(),
            table.clone(),
            table,
            0,
            (0..n).collect(),
            (0..n).collect(),
        )
        .unwrap()
    }

    #[test]
    fn semilattice_is_a_forest_algebra() {
        let alg = max_semilattice(5);
        alg.check_axioms().unwrap();
        assert_eq!(alg.power(3, 4), 3);
        assert_eq!(alg.power(3, 0), 0);
        assert_eq!(alg.add_left(2, 1), 2);
    }

    #[test]
    fn detects_broken_tables() {
        let bad = FiniteForestAlgebra::from_tables(
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 1], vec![1, 1]],
            0,
            vec![0, 0],
            vec![0, 0],
        )
        .unwrap();
        assert!(bad.check_axioms().is_err());
        assert!(FiniteForestAlgebra::from_tables(
            vec![vec![3]],
            vec![vec![0]],
            vec![vec![0]],
            0,
            vec![0],
            vec![0]
        )
        .is_err());
    }
}
