use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::{ForestFormula, Formula};
use crate::terms::{Alphabet, Label, LabelMorphism, OneSortedContext};

fn node_formula(rng: &mut ChaCha8Rng, labels: &[Label], depth: usize, budget: usize) -> Formula {
    let pick = if budget <= 1 { 0 } else { rng.gen_range(0..10) };
    match pick {
        0..=2 => match rng.gen_range(0..8) {
            0 => Formula::True,
            _ => Formula::atom(labels.choose(rng).expect("labels").clone()),
        },
        3 => node_formula(rng, labels, depth, budget - 1).not(),
        4 | 5 => {
            let a = node_formula(rng, labels, depth, budget / 2);
            let b = node_formula(rng, labels, depth, budget / 2);
            if pick == 4 {
                a.and(b)
            } else {
                a.or(b)
            }
        }
        _ if depth == 0 => node_formula(rng, labels, depth, budget - 1),
        6..=7 => node_formula(rng, labels, depth - 1, budget - 1).ef(),
        _ => node_formula(rng, labels, depth - 1, budget - 1).fp(),
    }
}

fn forest_formula(
    rng: &mut ChaCha8Rng,
    labels: &[Label],
    depth: usize,
    atoms: usize,
) -> ForestFormula {
    if atoms <= 1 {
        let f = ForestFormula::exists(node_formula(rng, labels, depth, 7));
        return if rng.gen_bool(0.25) { f.not() } else { f };
    }
    let split = rng.gen_range(1..atoms);
    let a = forest_formula(rng, labels, depth, split);
    let b = forest_formula(rng, labels, depth, atoms - split);
    let f = if rng.gen_bool(0.5) { a.and(b) } else { a.or(b) };
    if rng.gen_bool(0.2) {
        f.not()
    } else {
        f
    }
}

/// `count` pseudo-random forest formulas of nesting depth at most
/// `max_depth` over the labels of `alphabet`, reproducible from `seed`.
pub fn random_forest_formulas(
    alphabet: &Alphabet,
    count: usize,
    max_depth: usize,
    seed: u64,
) -> Vec<ForestFormula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<Label> = alphabet.labels().into_iter().collect();
    (0..count)
        .map(|_| {
            let atoms = rng.gen_range(1..=3);
            forest_formula(&mut rng, &labels, max_depth, atoms)
        })
        .collect()
}

fn small_tree(rng: &mut ChaCha8Rng, labels: &[Label]) -> String {
    let l = labels.choose(rng).expect("labels");
    if rng.gen_bool(0.7) {
        l.clone()
    } else {
        format!("{l}({})", labels.choose(rng).expect("labels"))
    }
}

/// A random one-sorted context with at most `steps` wrapping or padding
/// steps around the hole.
pub fn random_context(rng: &mut ChaCha8Rng, labels: &[Label], steps: usize) -> OneSortedContext {
    let mut text = "[]".to_string();
    for _ in 0..rng.gen_range(0..=steps) {
        text = match rng.gen_range(0..3) {
            0 => format!("{}({text})", labels.choose(rng).expect("labels")),
            1 => format!("{}+{text}", small_tree(rng, labels)),
            _ => format!("{text}+{}", small_tree(rng, labels)),
        };
    }
    OneSortedContext::parse(&text).expect("generated context parses")
}

/// Random morphisms sending each of `domain` to a context over `codomain`.
pub fn random_label_morphisms(
    domain: &[Label],
    codomain: &[Label],
    count: usize,
    seed: u64,
) -> Vec<LabelMorphism> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let map: BTreeMap<Label, OneSortedContext> = domain
                .iter()
                .map(|l| (l.clone(), random_context(&mut rng, codomain, 3)))
                .collect();
            LabelMorphism::new(map)
        })
        .collect()
}
