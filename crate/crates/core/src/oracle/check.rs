use std::collections::BTreeSet;

use serde::Serialize;

use super::{enumerate_forests, EnumerationSpec};
use crate::algebra::{AlgebraError, DashvRelation, FiniteForestAlgebra, Kind, SemigroupAutomaton};
use crate::logic::{forest_accepts, forest_game_winner, ForestFormula, Player};
use crate::terms::Forest;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum CrossCheck {
    Agree {
        checked: usize,
    },
    Counterexample {
        forest: Forest,
        expected: bool,
        automaton: bool,
    },
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        matches!(self, CrossCheck::Agree { .. })
    }
}

fn domain(aut: &SemigroupAutomaton, max_nodes: usize) -> impl Iterator<Item = Forest> {
    let tree_only = aut.kind == Kind::Tree;
    enumerate_forests(&EnumerationSpec::new(aut.alphabet.clone(), max_nodes))
        .filter(move |f| !tree_only || f.is_tree())
}

/// First forest with at most `max_nodes` nodes on which `expected` and the
/// automaton disagree.
pub fn cross_check_with(
    expected: impl Fn(&Forest) -> bool,
    aut: &SemigroupAutomaton,
    max_nodes: usize,
) -> Result<CrossCheck, AlgebraError> {
    let mut checked = 0;
    for f in domain(aut, max_nodes) {
        let (e, a) = (expected(&f), aut.accepts(&f)?);
        if e != a {
            return Ok(CrossCheck::Counterexample {
                forest: f,
                expected: e,
                automaton: a,
            });
        }
        checked += 1;
    }
    Ok(CrossCheck::Agree { checked })
}

pub fn cross_check(
    psi: &ForestFormula,
    aut: &SemigroupAutomaton,
    max_nodes: usize,
) -> Result<CrossCheck, AlgebraError> {
    cross_check_with(|f| forest_accepts(psi, f), aut, max_nodes)
}

/// A pair `s0 ∈ L`, `s1 ∉ L` on which Duplicator wins the `rounds`-round
/// game. Its existence shows no formula of nesting depth `rounds` defines
/// the language; its absence shows nothing.
pub fn bounded_indefinability_search(
    aut: &SemigroupAutomaton,
    rounds: usize,
    max_nodes: usize,
) -> Result<Option<(Forest, Forest)>, AlgebraError> {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for f in domain(aut, max_nodes) {
        if aut.accepts(&f)? {
            inside.push(f);
        } else {
            outside.push(f);
        }
    }
    for s0 in &inside {
        for s1 in &outside {
            if forest_game_winner(rounds, s0, s1) == Player::Duplicator {
                if !aut.accepts(s0)? || aut.accepts(s1)? {
                    return Err(AlgebraError::Internal("search pair lost membership".into()));
                }
                return Ok(Some((s0.clone(), s1.clone())));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DashvCheck {
    /// Pairs obtained from decompositions of length at most the bound.
    pub direct: usize,
    pub fixpoint: usize,
    /// A directly derived pair missing from the fixpoint.
    pub missing: Option<(usize, usize)>,
    pub trace_error: Option<String>,
    /// Whether the bounded direct relation already equals the fixpoint.
    pub saturated: bool,
}

impl DashvCheck {
    pub fn agrees(&self) -> bool {
        self.missing.is_none() && self.trace_error.is_none()
    }
}

/// Compare the fixpoint `⊣` with the relation read off the definition:
/// `v ⊣ w` when `v = v₀v₁⋯vₙ` and `w = v₀(h₁ ⊕ v₁)⋯(hₙ ⊕ vₙ)`, each `⊕`
/// adding `hᵢ` on the left or on the right, for `n ≤ max_len`.
pub fn dashv_direct_check(alg: &FiniteForestAlgebra, max_len: usize) -> DashvCheck {
    let (h_len, v_len) = (alg.h_len(), alg.v_len());
    let mut all: BTreeSet<(usize, usize)> = (0..v_len).map(|v| (v, v)).collect();
    let mut layer = all.clone();
    for _ in 0..max_len {
        let mut next = BTreeSet::new();
        for &(u, w) in &layer {
            for v in 0..v_len {
                let left = alg.compose(u, v);
                for h in 0..h_len {
                    next.insert((left, alg.compose(w, alg.add_left(h, v))));
                    next.insert((left, alg.compose(w, alg.add_right(v, h))));
                }
            }
        }
        all.extend(next.iter().copied());
        layer = next;
    }
    let fix = DashvRelation::compute(alg);
    DashvCheck {
        direct: all.len(),
        fixpoint: fix.len(),
        missing: all.iter().copied().find(|&(u, w)| !fix.contains(u, w)),
        trace_error: fix.verify_trace(alg).err(),
        saturated: all.len() == fix.len(),
    }
}
