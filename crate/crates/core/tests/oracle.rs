mod common;

use forestdef::algebra::syntactic_morphism;
use forestdef::logic::{forest_game_winner, Player};
use forestdef::oracle::{
    bounded_indefinability_search, cross_check, dashv_direct_check, enumerate_contexts,
    enumerate_forests, forest_counts, forests_of_size, random_label_morphisms, Dedup,
    EnumerationSpec,
};
use forestdef::{Alphabet, ForestFormula};

use common::{forest, load, pumped_pair_text};

#[test]
fn enumeration_matches_recurrence() {
    for (leaves, inner) in [(vec!["a"], vec!["b"]), (vec!["a", "c"], vec!["b", "d"])] {
        let alpha = Alphabet::new(leaves.clone(), inner.clone()).unwrap();
        let counts = forest_counts(leaves.len() as u64, inner.len() as u64, 5);
        for (n, &count) in counts.iter().enumerate().skip(1) {
            let fs = forests_of_size(&alpha, n, Dedup::None);
            assert_eq!(fs.len() as u64, count, "size {n}");
            assert!(fs.iter().all(|f| f.size() == n));
            assert!(fs.windows(2).all(|w| w[0].to_string() < w[1].to_string()));
        }
    }
    assert_eq!(forest_counts(1, 1, 5)[1..], [1, 2, 5, 14, 42]);
}

#[test]
fn multiset_dedup_collapses_reorderings() {
    let alpha = Alphabet::new(["a", "c"], ["b"]).unwrap();
    let all: Vec<_> = enumerate_forests(&EnumerationSpec::new(alpha.clone(), 4)).collect();
    let dedup: Vec<_> = enumerate_forests(&EnumerationSpec::new(alpha, 4).multiset()).collect();
    assert!(dedup.len() < all.len());
    assert!(dedup.iter().any(|f| f.to_string() == "a+c"));
    assert!(!dedup.iter().any(|f| f.to_string() == "c+a"));
}

#[test]
fn contexts_have_one_hole() {
    let alpha = Alphabet::new(["a"], ["b"]).unwrap();
    let ctxs = enumerate_contexts(&alpha, 4);
    assert_eq!(ctxs[0].to_string(), "[]");
    assert!(ctxs.iter().all(|p| p.size() <= 4));
    let t = forest("a");
    assert!(ctxs.iter().all(|p| p.plug(&t).size() == p.size()));
}

#[test]
fn cross_check_finds_minimal_counterexample() {
    let aut = load("some_a.json");
    assert!(
        cross_check(&ForestFormula::parse("E(a | EF a)").unwrap(), &aut, 5)
            .unwrap()
            .agrees()
    );
    let cc = cross_check(&ForestFormula::parse("E(a)").unwrap(), &aut, 5).unwrap();
    assert_eq!(
        serde_json::to_value(&cc).unwrap()["forest"],
        serde_json::json!("b(a)")
    );
}

#[test]
fn search_examples() {
    let pair = bounded_indefinability_search(&load("two_a.json"), 3, 2).unwrap();
    assert_eq!(pair, Some((forest("a+a"), forest("a"))));
    assert_eq!(
        bounded_indefinability_search(&load("some_a.json"), 1, 3).unwrap(),
        None
    );
}

#[test]
fn pumped_pair_fools_two_rounds() {
    let (s0, s1) = pumped_pair_text(4);
    let (s0, s1) = (forest(&s0), forest(&s1));
    let aut = load("ancestor_child.json");
    assert!(aut.accepts(&s0).unwrap() && !aut.accepts(&s1).unwrap());
    assert_eq!(forest_game_winner(2, &s0, &s1), Player::Duplicator);
}

#[test]
fn direct_relation_agrees_with_fixpoint() {
    for name in [
        "some_a.json",
        "two_a.json",
        "ancestor_child.json",
        "root_is_a.json",
    ] {
        let m = syntactic_morphism(&load(name), 20_000).unwrap();
        let c = dashv_direct_check(&m.algebra, 4);
        assert!(c.agrees(), "{name}: {c:?}");
    }
    let m = syntactic_morphism(&load("some_a.json"), 100).unwrap();
    let c = dashv_direct_check(&m.algebra, 3);
    assert_eq!(c.fixpoint, 3);
}

#[test]
fn random_morphisms_are_reproducible() {
    let labels = vec!["a".to_string(), "b".to_string()];
    assert_eq!(
        random_label_morphisms(&labels, &labels, 10, 5),
        random_label_morphisms(&labels, &labels, 10, 5)
    );
}
