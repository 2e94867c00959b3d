//! Antichain formulas, simultaneous subtree substitution at antichain
//! nodes, and the formulas that express substitution inside the logic.

use thiserror::Error;

use super::eval::{eval_mask, holds_at_root};
use super::{ForestFormula, Formula};
use crate::terms::{Alphabet, Forest, Label, NodeId, NodeTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AntichainError {
    #[error("formula selects comparable nodes {0} and {1}")]
    NotAntichain(NodeId, NodeId),
    #[error("classifiers {1} and {2} both match the subtree at {0}")]
    Ambiguous(NodeId, usize, usize),
    #[error("substitution label `{0}` is not fresh")]
    NotFresh(Label),
}

/// A tree-language membership test paired with the leaf label that replaces
/// matching subtrees.
pub struct Classifier<'a> {
    pub test: Box<dyn Fn(&Forest) -> bool + 'a>,
    pub label: Label,
}

impl<'a> Classifier<'a> {
    pub fn new(test: impl Fn(&Forest) -> bool + 'a, label: impl Into<Label>) -> Self {
        Classifier {
            test: Box::new(test),
            label: label.into(),
        }
    }

    /// Membership: `phi` holds at the root of the tree.
    pub fn formula(phi: &'a Formula, label: impl Into<Label>) -> Self {
        Classifier::new(move |t| holds_at_root(phi, t), label)
    }
}

fn first_comparable(mask: &[bool], table: &NodeTable<'_>) -> Option<(usize, usize)> {
    (0..table.len())
        .filter(|&i| mask[i])
        .find_map(|i| table.descendants(i).find(|&j| mask[j]).map(|j| (i, j)))
}

/// Whether the nodes selected by `phi` in `f` are pairwise incomparable.
pub fn check_antichain_on(phi: &Formula, f: &Forest) -> bool {
    let table = NodeTable::from_forest(f);
    first_comparable(&eval_mask(phi, &table), &table).is_none()
}

/// Replace, simultaneously, the subtree of every `phi`-node whose subtree
/// is matched by exactly one classifier with a leaf carrying that
/// classifier's label.
pub fn antichain_substitute(
    f: &Forest,
    phi: &Formula,
    classifiers: &[Classifier<'_>],
) -> Result<Forest, AntichainError> {
    let table = NodeTable::from_forest(f);
    let mask = eval_mask(phi, &table);
    let ids = table.ids();
    if let Some((i, j)) = first_comparable(&mask, &table) {
        return Err(AntichainError::NotAntichain(ids[i].clone(), ids[j].clone()));
    }
    let mut replacements = Vec::new();
    for (i, id) in ids.iter().enumerate().filter(|(i, _)| mask[*i]) {
        let subtree = f.subtree(id).expect("id comes from the forest");
        let mut hits = classifiers
            .iter()
            .enumerate()
            .filter(|(_, c)| (c.test)(&subtree))
            .map(|(k, _)| k);
        if let Some(first) = hits.next() {
            if let Some(second) = hits.next() {
                return Err(AntichainError::Ambiguous(ids[i].clone(), first, second));
            }
            replacements.push((id.clone(), classifiers[first].label.clone()));
        }
    }
    Ok(f.replace_subtrees(&replacements))
}

/// A forest formula accepting `t` iff `k` accepts the result of
/// substituting, at the `phi`-nodes of `t`, the leaf `aᵢ` for every subtree
/// whose root satisfies `Lᵢ`.
///
/// Valid on forests where `phi` selects an antichain and the `Lᵢ` are
/// disjoint on the selected subtrees.
pub fn compose_antichain_formula(
    phi: &Formula,
    parts: &[(Formula, Label)],
    k: &ForestFormula,
    alphabet: &Alphabet,
) -> Result<ForestFormula, AntichainError> {
    let mut used = alphabet.labels();
    phi.labels(&mut used);
    for (l, _) in parts {
        l.labels(&mut used);
    }
    let mut seen = std::collections::BTreeSet::new();
    for (_, a) in parts {
        if used.contains(a) || !seen.insert(a.clone()) {
            return Err(AntichainError::NotFresh(a.clone()));
        }
    }

    // Inside the subtree of a phi-node x, every node satisfies phi or has a
    // phi ancestor, and no node outside it does (phi is an antichain).
    let guard = phi.clone().or(phi.clone().fp());
    let selected: Vec<(Formula, &Label)> = parts
        .iter()
        .map(|(l, a)| (phi.clone().and(l.relativize(&guard)), a))
        .collect();
    let any_selected = selected
        .iter()
        .map(|(s, _)| s.clone())
        .reduce(Formula::or)
        .unwrap_or(Formula::False);
    let survives = any_selected.clone().fp().not();

    fn translate(
        chi: &Formula,
        selected: &[(Formula, &Label)],
        any_selected: &Formula,
        survives: &Formula,
    ) -> Formula {
        let go = |f: &Formula| translate(f, selected, any_selected, survives);
        match chi {
            Formula::True | Formula::False => chi.clone(),
            Formula::Atom(l) => match selected.iter().find(|(_, a)| *a == l) {
                Some((sel, _)) => sel.clone(),
                None => chi.clone().and(any_selected.clone().not()),
            },
            Formula::Not(f) => go(f).not(),
            Formula::And(a, b) => go(a).and(go(b)),
            Formula::Or(a, b) => go(a).or(go(b)),
            // a selected node is a leaf after substitution
            Formula::Ef(f) => any_selected
                .clone()
                .not()
                .and(go(f).and(survives.clone()).ef()),
            // ancestors of a surviving node survive
            Formula::Fp(f) => go(f).fp(),
        }
    }

    if parts.is_empty() {
        return Ok(k.clone());
    }
    Ok(k.map_atoms(&mut |chi| translate(chi, &selected, &any_selected, &survives)))
}

/// `EF(FP true & !FP FP true & φ̂)` where `φ̂` conjoins `FP true` to every
/// subformula of `phi`: true at the root of a tree iff some child's subtree
/// satisfies `phi` at its root.
pub fn xk_formula(phi: &Formula) -> Formula {
    let not_root = Formula::True.fp();
    let depth_one = not_root.clone().and(Formula::True.fp().fp().not());
    depth_one.and(phi.relativize(&not_root)).ef()
}
