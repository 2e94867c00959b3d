use std::collections::BTreeSet;

use super::{ForestFormula, Formula};
use crate::terms::{Forest, NodeId, NodeTable};

/// Truth value of `phi` at every node of `table`, indexed in preorder.
pub fn eval_mask(phi: &Formula, table: &NodeTable<'_>) -> Vec<bool> {
    let n = table.len();
    match phi {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(l) => table.labels.iter().map(|x| *x == l).collect(),
        Formula::Not(f) => eval_mask(f, table).into_iter().map(|b| !b).collect(),
        Formula::And(a, b) => {
            let mut x = eval_mask(a, table);
            let y = eval_mask(b, table);
            x.iter_mut().zip(y).for_each(|(p, q)| *p &= q);
            x
        }
        Formula::Or(a, b) => {
            let mut x = eval_mask(a, table);
            let y = eval_mask(b, table);
            x.iter_mut().zip(y).for_each(|(p, q)| *p |= q);
            x
        }
        Formula::Ef(f) => {
            let inner = eval_mask(f, table);
            let mut below = vec![false; n];
            for i in (0..n).rev() {
                if let Some(p) = table.parent[i] {
                    below[p] |= inner[i] || below[i];
                }
            }
            below
        }
        Formula::Fp(f) => {
            let inner = eval_mask(f, table);
            let mut above = vec![false; n];
            for i in 0..n {
                if let Some(p) = table.parent[i] {
                    above[i] = above[p] || inner[p];
                }
            }
            above
        }
    }
}

/// Nodes of `f` where `phi` holds.
pub fn eval_nodes(phi: &Formula, f: &Forest) -> BTreeSet<NodeId> {
    let table = NodeTable::from_forest(f);
    let mask = eval_mask(phi, &table);
    table
        .ids()
        .into_iter()
        .zip(mask)
        .filter_map(|(id, keep)| keep.then_some(id))
        .collect()
}

pub fn forest_accepts_table(psi: &ForestFormula, table: &NodeTable<'_>) -> bool {
    psi.eval_skeleton(&mut |phi| {
        let mask = eval_mask(phi, table);
        table.roots.iter().any(|&r| mask[r])
    })
}

/// Whether some root of `f` satisfies each `Exists` atom, combined by the
/// boolean skeleton of `psi`.
pub fn forest_accepts(psi: &ForestFormula, f: &Forest) -> bool {
    forest_accepts_table(psi, &NodeTable::from_forest(f))
}

/// Whether `phi` holds at the root of the single tree `f`.
pub fn holds_at_root(phi: &Formula, f: &Forest) -> bool {
    let table = NodeTable::from_forest(f);
    eval_mask(phi, &table)[0]
}
