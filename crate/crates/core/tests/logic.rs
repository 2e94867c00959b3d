mod common;

use std::collections::BTreeSet;

use forestdef::logic::{
    antichain_substitute, check_antichain_on, compose_antichain_formula, eval_nodes,
    forest_accepts, forest_game_winner, holds_at_root, xk_formula, Classifier, Player,
};
use forestdef::oracle::{
    enumerate_contexts, enumerate_forests, random_forest_formulas, EnumerationSpec,
};
use forestdef::{Alphabet, ForestFormula, Formula, NodeId};
use proptest::prelude::*;

use common::forest;

fn phi(s: &str) -> Formula {
    Formula::parse(s).unwrap()
}

fn psi(s: &str) -> ForestFormula {
    ForestFormula::parse(s).unwrap()
}

#[test]
fn parse_examples() {
    assert_eq!(
        phi("EF(a & !FP(!b))"),
        Formula::atom("a")
            .and(Formula::atom("b").not().fp().not())
            .ef()
    );
    assert!(Formula::parse("EF(a & FP true & !FP FP true)").is_ok());
    assert!(ForestFormula::parse("E(a) & !E(b)").is_ok());
    assert!(Formula::parse("a &").is_err());
    assert_eq!(phi("EF(a & !FP(!b))").nesting_depth(), 2);
    assert_eq!(psi("E(a)|E(b)").nesting_depth(), 0);
    for s in ["a | b & c", "!EF a", "FP(a | b) & EF true"] {
        let f = phi(s);
        assert_eq!(phi(&f.to_string()), f);
    }
}

#[test]
fn evaluation_examples() {
    let root: BTreeSet<NodeId> = [NodeId::root(0)].into();
    assert_eq!(eval_nodes(&phi("EF true"), &forest("b(a)")), root);
    assert!(eval_nodes(&phi("FP a"), &forest("a")).is_empty());
    let guard = eval_nodes(&phi("EF(a & !FP(!b))"), &forest("b(b(a)+c(a))"));
    assert_eq!(guard, [NodeId::root(0), NodeId(vec![0, 0])].into());
    assert!(forest_accepts(&psi("E(a)"), &forest("a+b(a)")));
    assert!(!forest_accepts(&psi("E(a)"), &forest("b(a)")));
    let no_leaf_root = psi("!E(!EF true)");
    assert!(!forest_accepts(&no_leaf_root, &forest("a")));
    assert!(forest_accepts(&no_leaf_root, &forest("b(a)")));
}

#[test]
fn modal_semantics_match_definition() {
    let alpha = Alphabet::new(["a", "c"], ["b"]).unwrap();
    let inner = phi("a | EF c");
    let (ef, fp) = (inner.clone().ef(), inner.clone().fp());
    for f in enumerate_forests(&EnumerationSpec::new(alpha, 6)) {
        let base = eval_nodes(&inner, &f);
        for x in f.nodes() {
            let below = f.proper_descendants(&x).unwrap();
            let above = f.ancestors(&x).unwrap();
            assert_eq!(
                eval_nodes(&ef, &f).contains(&x),
                below.iter().any(|y| base.contains(y))
            );
            assert_eq!(
                eval_nodes(&fp, &f).contains(&x),
                above.iter().any(|y| base.contains(y))
            );
        }
    }
}

#[test]
fn acceptance_ignores_sibling_order_and_duplicates() {
    let alpha = Alphabet::new(["a"], ["b"]).unwrap();
    let formulas = random_forest_formulas(&alpha, 40, 3, 3);
    let forests: Vec<_> = enumerate_forests(&EnumerationSpec::new(alpha.clone(), 3)).collect();
    for p in enumerate_contexts(&alpha, 3) {
        for s in &forests {
            for t in &forests {
                for f in &formulas {
                    let acc = |x: &forestdef::Forest| forest_accepts(f, &p.plug(x));
                    assert_eq!(acc(&s.concat(t)), acc(&t.concat(s)));
                }
            }
            for f in &formulas {
                assert_eq!(
                    forest_accepts(f, &p.plug(&s.concat(s))),
                    forest_accepts(f, &p.plug(s))
                );
            }
        }
    }
}

#[test]
fn game_examples() {
    let w = |n, x: &str, y: &str| forest_game_winner(n, &forest(x), &forest(y));
    assert_eq!(w(0, "a", "a"), Player::Duplicator);
    assert_eq!(w(1, "b(a)", "b(c)"), Player::Spoiler);
    for n in 0..=5 {
        assert_eq!(w(n, "a+a", "a"), Player::Duplicator);
    }
    assert_eq!(w(0, "a", "b(a)"), Player::Spoiler);
}

#[test]
fn game_is_monotone_in_rounds() {
    let alpha = Alphabet::new(["a"], ["b"]).unwrap();
    let forests: Vec<_> = enumerate_forests(&EnumerationSpec::new(alpha, 4)).collect();
    for s in &forests {
        for t in &forests {
            for n in 1..=3 {
                if forest_game_winner(n, s, t) == Player::Duplicator {
                    assert_eq!(forest_game_winner(n - 1, s, t), Player::Duplicator);
                }
            }
            assert_eq!(forest_game_winner(2, s, t), forest_game_winner(2, t, s));
        }
    }
}

#[test]
fn antichain_examples() {
    let f = forest("b(b(a))");
    assert!(!check_antichain_on(&phi("b"), &f));
    assert!(check_antichain_on(&phi("b & !FP b"), &f));
    assert!(antichain_substitute(&f, &phi("b"), &[]).is_err());

    let g = forest("b(b(a)+c)");
    let leaf_a = phi("a");
    let out =
        antichain_substitute(&g, &phi("!EF true"), &[Classifier::formula(&leaf_a, "a1")]).unwrap();
    assert_eq!(out.to_string(), "b(b(a1)+c)");
}

#[test]
fn composed_formula_matches_substitution() {
    let alpha = Alphabet::new(["a", "c"], ["b"]).unwrap();
    let sel = phi("b & !FP b");
    let parts = vec![
        (phi("EF a"), "a1".to_string()),
        (phi("!EF a"), "a2".to_string()),
    ];
    let ks = [psi("E(a1)"), psi("E(EF a2) | E(c)"), psi("!E(a2) & E(b)")];
    let classifiers: Vec<Classifier> = parts
        .iter()
        .map(|(l, a)| Classifier::formula(l, a.clone()))
        .collect();
    for k in &ks {
        let composed = compose_antichain_formula(&sel, &parts, k, &alpha).unwrap();
        for f in enumerate_forests(&EnumerationSpec::new(alpha.clone(), 6)) {
            let sub = antichain_substitute(&f, &sel, &classifiers).unwrap();
            assert_eq!(
                forest_accepts(&composed, &f),
                forest_accepts(k, &sub),
                "{k} on {f}"
            );
        }
    }
    assert!(compose_antichain_formula(&sel, &[(phi("a"), "a".into())], &ks[0], &alpha).is_err());
}

#[test]
fn child_formula_reads_depth_one() {
    let alpha = Alphabet::new(["a", "c"], ["b"]).unwrap();
    for inner in [phi("a"), phi("true"), phi("b & EF c")] {
        let x = xk_formula(&inner);
        for f in enumerate_forests(&EnumerationSpec::new(alpha.clone(), 6)) {
            if !f.is_tree() {
                continue;
            }
            let expected = match &f.trees()[0] {
                forestdef::Tree::Leaf(_) => false,
                forestdef::Tree::Inner(_, kids) => kids
                    .trees()
                    .iter()
                    .any(|k| holds_at_root(&inner, &forestdef::Forest::single(k.clone()))),
            };
            assert_eq!(holds_at_root(&x, &f), expected, "{inner} on {f}");
        }
    }
}

proptest! {
    #[test]
    fn rendering_round_trips(seed in 0u64..500) {
        let alpha = Alphabet::new(["a", "c"], ["b", "d"]).unwrap();
        for f in random_forest_formulas(&alpha, 5, 3, seed) {
            prop_assert_eq!(ForestFormula::parse(&f.to_string()).unwrap(), f);
        }
    }
}
