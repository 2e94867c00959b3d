//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use forestdef::algebra::{
    analyze, check_identities, omega, pump_identity3, separating_witnesses, tree_sub_verdicts,
    DashvRelation, FiniteForestAlgebra, Identity, IdentityFailure, SemigroupAutomaton,
};
use forestdef::logic::{ef_game_winner, forest_accepts, forest_game_winner, Player};
use forestdef::oracle::{
    bounded_indefinability_search, cross_check, cross_check_with, dashv_direct_check,
    enumerate_contexts, enumerate_forests, random_forest_formulas, random_label_morphisms,
    EnumerationSpec,
};
use forestdef::{
    compile_forest_formula, decide_definable, Alphabet, Context, DecideOptions, Forest,
    ForestFormula, Tree, Verdict,
};

use common::{ancestor_child, child_of_root, forest, load, pumped_pair_text, sibling_constraint};

type Outcome = Result<String, String>;
type Criterion = fn(&mut Seen) -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Syntactic algebras met along the way, for the `⊣` cross-check.
#[derive(Default)]
struct Seen {
    algebras: Vec<(String, FiniteForestAlgebra)>,
    compiled: Vec<(ForestFormula, SemigroupAutomaton)>,
}

impl Seen {
    fn keep(&mut self, name: &str, aut: &SemigroupAutomaton) -> Result<(), String> {
        let an = analyze(aut, &DecideOptions::default()).map_err(|e| e.to_string())?;
        self.algebras.push((name.to_string(), an.morphism.algebra));
        Ok(())
    }
}

const REFERENCE_FORMULAS: [&str; 3] = [
    "E(EF(a & !FP(!b)))",
    "E(EF(a & FP(true) & !FP(FP(true))))",
    "!E(!EF(true))",
];

fn corpus() -> Vec<ForestFormula> {
    let alpha = Alphabet::new(["a", "c"], ["b", "d"]).unwrap();
    let mut out: Vec<ForestFormula> = REFERENCE_FORMULAS
        .iter()
        .map(|s| ForestFormula::parse(s).expect("formula"))
        .collect();
    out.extend(random_forest_formulas(&alpha, 100, 3, 20_240_901));
    out
}

fn round_trip(seen: &mut Seen) -> Outcome {
    let alpha = Alphabet::new(["a", "c"], ["b", "d"]).unwrap();
    let start = Instant::now();
    let formulas = corpus();
    for psi in &formulas {
        ensure(psi.nesting_depth() <= 3, || format!("{psi} too deep"))?;
        let aut = compile_forest_formula(psi, &alpha).map_err(|e| format!("{psi}: {e}"))?;
        let verdict =
            decide_definable(&aut, &DecideOptions::default()).map_err(|e| format!("{psi}: {e}"))?;
        ensure(verdict.is_definable(), || format!("{psi}: {verdict}"))?;
        seen.keep(&psi.to_string(), &aut)?;
        seen.compiled.push((psi.clone(), aut));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "{} formulas definable after compilation in {secs:.1}s",
        formulas.len()
    ))
}

fn compile_fidelity(seen: &mut Seen) -> Outcome {
    ensure(!seen.compiled.is_empty(), || "no compiled corpus".into())?;
    let mut checked = 0;
    for (psi, aut) in &seen.compiled {
        match cross_check(psi, aut, 7).map_err(|e| e.to_string())? {
            forestdef::oracle::CrossCheck::Agree { checked: n } => checked = n,
            other => return Err(format!("{psi}: {other:?}")),
        }
    }
    Ok(format!(
        "{} formulas agree on all {checked} forests up to 7 nodes",
        seen.compiled.len()
    ))
}

fn ancestor_child_example(seen: &mut Seen) -> Outcome {
    let aut = load("ancestor_child.json");
    let cc = cross_check_with(ancestor_child, &aut, 8).map_err(|e| e.to_string())?;
    ensure(cc.agrees(), || format!("automaton vs predicate: {cc:?}"))?;
    seen.keep("ancestor-child", &aut)?;

    let verdict = decide_definable(&aut, &DecideOptions::default()).map_err(|e| e.to_string())?;
    let v = verdict
        .violation()
        .ok_or_else(|| "decided definable".to_string())?;
    ensure(v.identity == Identity::Special, || format!("{verdict}"))?;

    // The contexts b, b and b+a2, b+a1 violate the guarded identity.
    let an = analyze(&aut, &DecideOptions::default()).map_err(|e| e.to_string())?;
    let m = &an.morphism;
    let ctx = |s: &str| Context::parse(s).unwrap();
    let (p1, q1, p2, q2) = (ctx("b([])"), ctx("b([])"), ctx("b([])+a2"), ctx("b([])+a1"));
    let val = |c: &Context| m.eval_context(c).expect("labels in alphabet");
    let (u1, w1, u2, w2) = (val(&p1), val(&q1), val(&p2), val(&q2));
    ensure(
        an.dashv.contains(u1, u2) && an.dashv.contains(w1, w2),
        || "the displayed contexts are not ⊣-related".into(),
    )?;
    let om = omega(&m.algebra).map_err(|v| format!("v{v} not aperiodic"))?;
    let alg = &m.algebra;
    let (a, b) = (
        alg.power(alg.compose(u1, w1), om.exponent),
        alg.power(alg.compose(u2, w2), om.exponent),
    );
    let lhs = alg.compose(a, b);
    let rhs = alg.compose(alg.compose(alg.compose(a, u1), w2), b);
    ensure(lhs != rhs, || {
        "the displayed contexts satisfy the identity".into()
    })?;

    let (t0, t1) = pumped_pair_text(2);
    let (s0, s1) = pump_identity3(&ctx("[]"), &p1, &q1, &p2, &q2, &forest("a2"), 2);
    ensure(s0.to_string() == t0 && s1.to_string() == t1, || {
        format!("assembled {s0} / {s1}, displayed {t0} / {t1}")
    })?;
    let mem = |s: &Forest| aut.accepts(s).map_err(|e| e.to_string());
    ensure(mem(&s0)? && !mem(&s1)?, || {
        "displayed pair memberships".into()
    })?;
    ensure(ancestor_child(&s0) && !ancestor_child(&s1), || {
        "predicate memberships".into()
    })?;

    let failure = IdentityFailure::Special { u1, u2, w1, w2 };
    let sep = separating_witnesses(&aut, m, &failure, 2).map_err(|e| e.to_string())?;
    ensure(sep.member0 && !sep.member1, || {
        format!("library pair {} / {} has wrong memberships", sep.s0, sep.s1)
    })?;
    ensure(ancestor_child(&sep.s0) && !ancestor_child(&sep.s1), || {
        "library pair disagrees with predicate".into()
    })?;
    Ok(format!(
        "not definable, identity (3); displayed pair at n=2 reproduced ({} nodes in L, {} nodes not in L); canonical pair {} / {}",
        s0.size(),
        s1.size(),
        sep.s0,
        sep.s1
    ))
}

fn two_as(seen: &mut Seen) -> Outcome {
    let aut = load("two_a.json");
    seen.keep("two-a", &aut)?;
    let verdict = decide_definable(&aut, &DecideOptions::default()).map_err(|e| e.to_string())?;
    let id = verdict.violation().map(|v| v.identity);
    ensure(
        matches!(id, Some(Identity::Idempotent | Identity::Commutative)),
        || format!("{verdict}"),
    )?;
    let pair = bounded_indefinability_search(&aut, 3, 2).map_err(|e| e.to_string())?;
    let got = pair.map(|(x, y)| (x.to_string(), y.to_string()));
    ensure(got == Some(("a+a".into(), "a".into())), || {
        format!("{got:?}")
    })?;
    Ok("not definable, identity (1); search returns (a+a, a)".into())
}

fn non_transitive(seen: &mut Seen) -> Outcome {
    let aut = load("sibling.json");
    let cc = cross_check_with(sibling_constraint, &aut, 7).map_err(|e| e.to_string())?;
    ensure(cc.agrees(), || format!("automaton vs predicate: {cc:?}"))?;
    seen.keep("sibling", &aut)?;
    let an = analyze(&aut, &DecideOptions::default()).map_err(|e| e.to_string())?;
    // Larger than the bound used in criterion 6, so checked here.
    let direct = dashv_direct_check(&an.morphism.algebra, 4);
    ensure(direct.agrees(), || {
        format!("fixpoint vs definition: {direct:?}")
    })?;
    let mut first: BTreeMap<usize, Context> = BTreeMap::new();
    let contexts = enumerate_contexts(&aut.alphabet, 6);
    for p in &contexts {
        let v = an.morphism.eval_context(p).expect("labels in alphabet");
        first.entry(v).or_insert_with(|| p.clone());
    }
    let reached: Vec<usize> = first.keys().copied().collect();
    for &v1 in &reached {
        for &v2 in &reached {
            if !an.dashv.contains(v1, v2) {
                continue;
            }
            for &v3 in &reached {
                if an.dashv.contains(v2, v3) && !an.dashv.contains(v1, v3) {
                    return Ok(format!(
                        "{} ⊣ {} ⊣ {} but not {} ⊣ {} ({} contexts, {} context types, |V|={})",
                        first[&v1],
                        first[&v2],
                        first[&v3],
                        first[&v1],
                        first[&v3],
                        contexts.len(),
                        reached.len(),
                        an.morphism.v_len()
                    ));
                }
            }
        }
    }
    Err(format!(
        "no non-transitive triple among {} context types",
        reached.len()
    ))
}

fn fixpoint_vs_definition(seen: &mut Seen) -> Outcome {
    let mut checked = 0;
    let mut saturated = 0;
    for (name, alg) in &seen.algebras {
        if alg.v_len() > 12 {
            continue;
        }
        let c = dashv_direct_check(alg, 4);
        ensure(c.agrees(), || format!("{name}: {c:?}"))?;
        checked += 1;
        saturated += usize::from(c.saturated);
    }
    ensure(checked > 0, || "no algebra with |V| ≤ 12".into())?;
    Ok(format!(
        "{checked} of {} algebras checked, {saturated} reach the fixpoint within 4 steps",
        seen.algebras.len()
    ))
}

fn game_adequacy(_: &mut Seen) -> Outcome {
    let alpha = Alphabet::new(["a"], ["b"]).unwrap();
    let forests: Vec<Forest> = enumerate_forests(&EnumerationSpec::new(alpha.clone(), 5)).collect();
    let mut formulas = random_forest_formulas(&alpha, 200, 2, 7);
    formulas.extend(
        [
            "E(a)",
            "E(b & EF(a))",
            "E(EF(EF(true)))",
            "E(FP(b) & !EF(true))",
            "E(EF(b & EF(a)))",
            "!E(!EF(true))",
        ]
        .iter()
        .map(|s| ForestFormula::parse(s).unwrap()),
    );
    let truth: Vec<Vec<bool>> = forests
        .iter()
        .map(|f| formulas.iter().map(|psi| forest_accepts(psi, f)).collect())
        .collect();
    let depth: Vec<usize> = formulas.iter().map(|f| f.nesting_depth()).collect();
    let mut dup_wins = 0;
    for (i, s) in forests.iter().enumerate() {
        for (j, t) in forests.iter().enumerate() {
            for n in 0..=2 {
                if forest_game_winner(n, s, t) != Player::Duplicator {
                    continue;
                }
                dup_wins += 1;
                if let Some(k) =
                    (0..formulas.len()).find(|&k| depth[k] <= n && truth[i][k] != truth[j][k])
                {
                    return Err(format!("{s} ~{n} {t} but {} separates them", formulas[k]));
                }
            }
        }
    }
    Ok(format!(
        "{} forests, {} formulas, {dup_wins} Duplicator wins, 0 violations",
        forests.len(),
        formulas.len()
    ))
}

fn strategy_transfer(_: &mut Seen) -> Outcome {
    let alpha = Alphabet::new(["a"], ["b"]).unwrap();
    let forests: Vec<_> = enumerate_forests(&EnumerationSpec::new(alpha, 4))
        .map(|f| f.to_one_sorted())
        .collect();
    let labels = vec!["a".to_string(), "b".to_string()];
    let morphisms = random_label_morphisms(&labels, &labels, 100, 11);
    let mut transferred = 0;
    for (k, alpha) in morphisms.iter().enumerate() {
        let images: Vec<_> = forests
            .iter()
            .map(|f| alpha.apply(f).expect("labels covered"))
            .collect();
        for (i, s) in forests.iter().enumerate() {
            for (j, t) in forests.iter().enumerate() {
                for n in 0..=2 {
                    let before = ef_game_winner(n, s, t, None).map_err(|e| e.to_string())?;
                    if before != Player::Duplicator {
                        continue;
                    }
                    let after = ef_game_winner(n, &images[i], &images[j], None)
                        .map_err(|e| e.to_string())?;
                    ensure(after == Player::Duplicator, || {
                        format!("morphism {k}: {s} ~{n} {t} but images differ")
                    })?;
                    transferred += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} morphisms, {} forests, {transferred} Duplicator wins preserved",
        morphisms.len(),
        forests.len()
    ))
}

fn polynomial(_: &mut Seen) -> Outcome {
    let n = 200;
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| i.max(j)).collect()).collect();
    let alg = FiniteForestAlgebra::from_tables(
        table.clone(),
        table.clone(),
        table,
        0,
        (0..n).collect(),
        (0..n).collect(),
    )
    .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let dashv = DashvRelation::compute(&alg);
    let report = check_identities(&alg, &dashv, 1);
    let secs = start.elapsed().as_secs_f64();
    let d = dashv.len() as u64;
    ensure(report.holds(), || format!("{:?}", report.first_failure()))?;
    ensure(report.da_pairs_checked == (n * n) as u64, || {
        format!("DA loop visited {}", report.da_pairs_checked)
    })?;
    ensure(report.special_pairs_checked == d * d, || {
        format!("guarded loop visited {}", report.special_pairs_checked)
    })?;
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "|V|={n}, |⊣|={d}, loops visited {} and {} pairs in {secs:.1}s",
        report.da_pairs_checked, report.special_pairs_checked
    ))
}

fn tree_reduction(_: &mut Seen) -> Outcome {
    let tree_aut = load("child_of_root.json");
    let forest_aut = load("root_is_a.json");
    let cc = cross_check_with(child_of_root, &tree_aut, 7).map_err(|e| e.to_string())?;
    ensure(cc.agrees(), || {
        format!("tree automaton vs predicate: {cc:?}")
    })?;
    let opts = DecideOptions::default();
    let verdict = decide_definable(&tree_aut, &opts).map_err(|e| e.to_string())?;
    ensure(verdict.is_definable(), || format!("{verdict}"))?;
    let independent = decide_definable(&forest_aut, &opts).map_err(|e| e.to_string())?;
    let subs = tree_sub_verdicts(&tree_aut, &opts).map_err(|e| e.to_string())?;
    ensure(subs.len() == 1, || format!("{} sub-verdicts", subs.len()))?;
    for (b, v) in &subs {
        ensure(*v == independent, || {
            format!("under {b}: {v} vs {independent}")
        })?;
    }
    let mut checked = 0;
    for t in enumerate_forests(&EnumerationSpec::new(tree_aut.alphabet.clone(), 6)) {
        let bt = Forest::single(Tree::inner("b", t.clone()));
        let (x, y) = (
            tree_aut.accepts(&bt).map_err(|e| e.to_string())?,
            forest_aut.accepts(&t).map_err(|e| e.to_string())?,
        );
        ensure(x == y, || format!("b({t}) vs {t}"))?;
        checked += 1;
    }
    ensure(independent == Verdict::Definable, || {
        format!("{independent}")
    })?;
    Ok(format!(
        "definable; sub-verdict under b matches the forest decision; languages agree on {checked} forests"
    ))
}

fn main() {
    let criteria: [(usize, Criterion); 10] = [
        (1, round_trip),
        (2, compile_fidelity),
        (3, ancestor_child_example),
        (4, two_as),
        (5, non_transitive),
        (6, fixpoint_vs_definition),
        (7, game_adequacy),
        (8, strategy_transfer),
        (9, polynomial),
        (10, tree_reduction),
    ];
    let mut seen = Seen::default();
    let mut failed = 0;
    for (n, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut seen))).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.1}s) {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
