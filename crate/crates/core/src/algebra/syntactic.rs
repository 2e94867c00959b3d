use std::collections::HashMap;

use super::generate::{explore_forests, Carrier};
use super::{AlgebraError, AlgebraMorphism, FiniteForestAlgebra, SemigroupAutomaton};

/// Number classes by first occurrence of their signature.
fn renumber<K: Eq + std::hash::Hash>(sigs: impl Iterator<Item = K>) -> (Vec<usize>, usize) {
    let mut ids: HashMap<K, usize> = HashMap::new();
    let class: Vec<usize> = sigs
        .map(|s| {
            let next = ids.len();
            *ids.entry(s).or_insert(next)
        })
        .collect();
    (class, ids.len())
}

/// Coarsest congruence of the carrier that saturates `accept`: classes are
/// split until stable under `b`, `k + []` and `[] + k` for every `k`.
pub(crate) fn refine(c: &Carrier, accept: &[bool]) -> (Vec<usize>, usize) {
    let n = c.add.len();
    let (mut class, mut count) = renumber(accept.iter().copied());
    loop {
        let (next, next_count) = renumber((0..n).map(|h| {
            let mut sig = Vec::with_capacity(1 + c.inner.len() + 2 * n);
            sig.push(class[h]);
            sig.extend(c.inner.values().map(|row| class[row[h]]));
            sig.extend((0..n).map(|k| class[c.add[k][h]]));
            sig.extend((0..n).map(|k| class[c.add[h][k]]));
            sig
        }));
        if next_count == count {
            return (class, count);
        }
        class = next;
        count = next_count;
    }
}

/// The syntactic forest algebra of the automaton's language, computed by
/// partition refinement of the reachable types before generating contexts.
pub fn syntactic_morphism(
    aut: &SemigroupAutomaton,
    max_contexts: usize,
) -> Result<AlgebraMorphism, AlgebraError> {
    let full = Carrier::of_automaton(aut);
    let (reachable, _) = explore_forests(&full);
    let c = full.restrict(&reachable);
    let accept: Vec<bool> = reachable.iter().map(|h| aut.accept.contains(h)).collect();
    let (class, count) = refine(&c, &accept);
    let q = c.quotient(&class, count);
    let mut members = vec![Vec::new(); count];
    for (i, &h) in reachable.iter().enumerate() {
        members[class[i]].push(h);
    }
    for m in &mut members {
        m.sort_unstable();
    }
    let names: Vec<String> = members
        .iter()
        .map(|m| {
            m.iter()
                .map(|&h| aut.elements[h].as_str())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    let mut q_accept = vec![false; count];
    for (i, &a) in accept.iter().enumerate() {
        q_accept[class[i]] = a;
    }
    AlgebraMorphism::generate(&q, &q_accept, &members, &names, &aut.alphabet, max_contexts)
}

/// Quotient of a morphism's algebra by the syntactic congruence of the
/// accepting set: `h ~ g` iff `v h` and `v g` agree on `accept` for every
/// `v`, and `v ~ w` iff `v h ~ w h` for every `h`.
pub fn syntactic_quotient(
    m: &AlgebraMorphism,
    accept: &[bool],
) -> Result<AlgebraMorphism, AlgebraError> {
    let alg = &m.algebra;
    let (h_len, v_len) = (alg.h_len(), alg.v_len());
    let (hc, hn) = renumber((0..h_len).map(|h| {
        (0..v_len)
            .map(|v| accept[alg.act(v, h)])
            .collect::<Vec<_>>()
    }));
    let (vc, vn) =
        renumber((0..v_len).map(|v| (0..h_len).map(|h| hc[alg.act(v, h)]).collect::<Vec<_>>()));
    let first = |class: &[usize], count: usize| {
        let mut rep = vec![usize::MAX; count];
        for (x, &c) in class.iter().enumerate().rev() {
            rep[c] = x;
        }
        rep
    };
    let (hr, vr) = (first(&hc, hn), first(&vc, vn));
    let broken =
        |what: &str| AlgebraError::Invalid(format!("{what} does not respect the congruence"));

    for g in 0..h_len {
        for h in 0..h_len {
            if hc[alg.add(g, h)] != hc[alg.add(hr[hc[g]], hr[hc[h]])] {
                return Err(broken("add"));
            }
        }
    }
    for v in 0..v_len {
        for h in 0..h_len {
            if hc[alg.act(v, h)] != hc[alg.act(vr[vc[v]], hr[hc[h]])] {
                return Err(broken("act"));
            }
        }
        for w in 0..v_len {
            if vc[alg.compose(v, w)] != vc[alg.compose(vr[vc[v]], vr[vc[w]])] {
                return Err(broken("compose"));
            }
        }
    }

    let algebra = FiniteForestAlgebra::from_tables(
        hr.iter()
            .map(|&g| hr.iter().map(|&h| hc[alg.add(g, h)]).collect())
            .collect(),
        vr.iter()
            .map(|&v| vr.iter().map(|&w| vc[alg.compose(v, w)]).collect())
            .collect(),
        vr.iter()
            .map(|&v| hr.iter().map(|&h| hc[alg.act(v, h)]).collect())
            .collect(),
        vc[alg.identity()],
        hr.iter().map(|&h| vc[alg.embed_left(h)]).collect(),
        hr.iter().map(|&h| vc[alg.embed_right(h)]).collect(),
    )
    .map_err(AlgebraError::Invalid)?;

    let mut members = vec![Vec::new(); hn];
    for h in 0..h_len {
        members[hc[h]].extend(m.members[h].iter().copied());
    }
    for x in &mut members {
        x.sort_unstable();
    }
    let mut names = vec![Vec::new(); hn];
    for h in 0..h_len {
        names[hc[h]].push(m.h_names[h].clone());
    }
    Ok(AlgebraMorphism {
        algebra,
        alphabet: m.alphabet.clone(),
        accept: hr.iter().map(|&h| accept[h]).collect(),
        members,
        h_names: names.into_iter().map(|n| n.join(",")).collect(),
        witness_h: hr.iter().map(|&h| m.witness_h[h].clone()).collect(),
        witness_v: vr.iter().map(|&v| m.witness_v[v].clone()).collect(),
        leaf: m.leaf.iter().map(|(a, &h)| (a.clone(), hc[h])).collect(),
        inner: m.inner.iter().map(|(b, &v)| (b.clone(), vc[v])).collect(),
    })
}
