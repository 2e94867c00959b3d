#![allow(dead_code)]

use std::path::PathBuf;

use forestdef::algebra::SemigroupAutomaton;
use forestdef::{Forest, Tree};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn load(name: &str) -> SemigroupAutomaton {
    let text = std::fs::read_to_string(data_path(name)).expect("test data");
    SemigroupAutomaton::from_json(&text).expect("valid automaton")
}

pub fn forest(s: &str) -> Forest {
    Forest::parse(s).expect("forest")
}

fn children(t: &Tree) -> &[Tree] {
    match t {
        Tree::Leaf(_) => &[],
        Tree::Inner(_, f) => f.trees(),
    }
}

/// Every node with an `a1` child has a proper ancestor with an `a2` child.
pub fn ancestor_child(f: &Forest) -> bool {
    fn ok(t: &Tree, above: bool) -> bool {
        let kids = children(t);
        let has = |l: &str| kids.iter().any(|c| c.label() == l);
        if has("a1") && !above {
            return false;
        }
        let below = above || has("a2");
        kids.iter().all(|c| ok(c, below))
    }
    f.trees().iter().all(|t| ok(t, false))
}

/// Every `b` has an `a1` or `a2` sibling, and `a1` and `a2` do not both
/// occur.
pub fn sibling_constraint(f: &Forest) -> bool {
    fn group(ts: &[Tree], seen: &mut [bool; 2]) -> bool {
        let leafy = ts.iter().any(|t| matches!(t.label(), "a1" | "a2"));
        ts.iter().all(|t| {
            match t.label() {
                "a1" => seen[0] = true,
                "a2" => seen[1] = true,
                _ => {}
            }
            (t.label() != "b" || leafy) && group(children(t), seen)
        })
    }
    let mut seen = [false; 2];
    group(f.trees(), &mut seen) && !(seen[0] && seen[1])
}

/// The root of a single tree is `b` and some child of it is `a`.
pub fn child_of_root(f: &Forest) -> bool {
    match f.trees() {
        [Tree::Inner(_, kids)] => kids.trees().iter().any(|c| c.label() == "a"),
        _ => false,
    }
}

/// `s0 = (bb)ⁿ((b+a2)(b+a1))ⁿ a2` and `s1 = (bb)ⁿ b(b+a1)((b+a2)(b+a1))ⁿ a2`,
/// spelled out by string substitution.
pub fn pumped_pair_text(n: usize) -> (String, String) {
    let wrap = |ctx: &str, inner: &str| ctx.replace("[]", inner);
    let chain =
        |ctxs: &[&str], inner: String| ctxs.iter().rev().fold(inner, |acc, c| wrap(c, &acc));
    let mut head = Vec::new();
    for _ in 0..n {
        head.extend(["b([])", "b([])"]);
    }
    let mut tail = Vec::new();
    for _ in 0..n {
        tail.extend(["b([])+a2", "b([])+a1"]);
    }
    let s0 = chain(&[head.clone(), tail.clone()].concat(), "a2".into());
    let s1 = chain(
        &[head, vec!["b([])", "b([])+a1"], tail].concat(),
        "a2".into(),
    );
    (s0, s1)
}
