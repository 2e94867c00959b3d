use std::fmt;

use serde::{Deserialize, Serialize};

use super::{
    check_identities, syntactic_morphism, AlgebraError, AlgebraMorphism, DashvRelation,
    IdentityFailure, IdentityReport, Kind, SemigroupAutomaton,
};
use crate::terms::{Context, Forest, Label, Tree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecideOptions {
    /// Build a separating pair for a failure.
    pub witnesses: bool,
    /// Pumping exponent for witnesses of identities (2) and (3); raised to
    /// the algebra's `ω` when it does not separate.
    pub pump: usize,
    pub jobs: usize,
    pub max_contexts: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            witnesses: false,
            pump: 1,
            jobs: 1,
            max_contexts: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identity {
    #[serde(rename = "1-idempotent")]
    Idempotent,
    #[serde(rename = "1-commutative")]
    Commutative,
    #[serde(rename = "2")]
    Da,
    #[serde(rename = "3")]
    Special,
}

impl Identity {
    pub fn of(failure: &IdentityFailure) -> Self {
        match failure {
            IdentityFailure::Idempotent { .. } => Identity::Idempotent,
            IdentityFailure::Commutative { .. } => Identity::Commutative,
            IdentityFailure::Aperiodic { .. } | IdentityFailure::Da { .. } => Identity::Da,
            IdentityFailure::Special { .. } => Identity::Special,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingPair {
    pub s0: Forest,
    pub s1: Forest,
    pub member0: bool,
    pub member1: bool,
    pub pump: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Set for tree languages: the root label whose forest language fails.
    pub inner_label: Option<Label>,
    pub identity: Identity,
    pub failure: IdentityFailure,
    /// Offending elements, `role=name`.
    pub elements: Vec<String>,
    pub witness_terms: Vec<String>,
    pub separating_pair: Option<SeparatingPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "violation", rename_all = "snake_case")]
pub enum Verdict {
    Definable,
    NotDefinable(Violation),
}

impl Verdict {
    pub fn is_definable(&self) -> bool {
        matches!(self, Verdict::Definable)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Definable => None,
            Verdict::NotDefinable(v) => Some(v),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self {
            Verdict::Definable => return f.write_str("definable"),
            Verdict::NotDefinable(v) => v,
        };
        if let Some(b) = &v.inner_label {
            write!(f, "under root label {b}: ")?;
        }
        let (num, eq, what) = match v.failure {
            IdentityFailure::Idempotent { .. } => (1, "h+h ≠ h", "forest"),
            IdentityFailure::Commutative { .. } => (1, "g+h ≠ h+g", "forests"),
            IdentityFailure::Aperiodic { .. } => (2, "V is not aperiodic", "context"),
            IdentityFailure::Da { .. } => (2, "(vw)^ω ≠ (vw)^ω w (vw)^ω", "contexts"),
            IdentityFailure::Special { .. } => {
                (3, "(u1w1)^ω (u2w2)^ω ≠ (u1w1)^ω u1 w2 (u2w2)^ω", "contexts")
            }
        };
        write!(
            f,
            "identity ({num}) fails: {eq} at {}, witness {what} {}",
            v.elements.join(", "),
            v.witness_terms.join(", ")
        )?;
        if let Some(p) = &v.separating_pair {
            let mem = |b: bool| if b { "in L" } else { "not in L" };
            write!(
                f,
                "\nseparating forests (pump {}):\n  {} ({})\n  {} ({})",
                p.pump,
                p.s0,
                mem(p.member0),
                p.s1,
                mem(p.member1)
            )?;
        }
        Ok(())
    }
}

/// Everything computed for one forest language.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub morphism: AlgebraMorphism,
    pub dashv: DashvRelation,
    pub report: IdentityReport,
}

/// Syntactic algebra, `⊣` and identity report of a forest-kind automaton.
pub fn analyze(aut: &SemigroupAutomaton, opts: &DecideOptions) -> Result<Analysis, AlgebraError> {
    let morphism = syntactic_morphism(aut, opts.max_contexts)?;
    let dashv = DashvRelation::compute(&morphism.algebra);
    let report = check_identities(&morphism.algebra, &dashv, opts.jobs);
    Ok(Analysis {
        morphism,
        dashv,
        report,
    })
}

fn describe(m: &AlgebraMorphism, failure: &IdentityFailure) -> (Vec<String>, Vec<String>) {
    let h = |role: &str, x: usize| {
        (
            format!("{role}={}", m.h_label(x)),
            m.witness_h[x].to_string(),
        )
    };
    let v = |role: &str, x: usize| (format!("{role}=v{x}"), m.witness_v[x].to_string());
    let parts = match *failure {
        IdentityFailure::Idempotent { h: x } => vec![h("h", x)],
        IdentityFailure::Commutative { g, h: x } => vec![h("g", g), h("h", x)],
        IdentityFailure::Aperiodic { v: x } => vec![v("v", x)],
        IdentityFailure::Da { v: a, w } => vec![v("v", a), v("w", w)],
        IdentityFailure::Special { u1, u2, w1, w2 } => {
            vec![v("u1", u1), v("u2", u2), v("w1", w1), v("w2", w2)]
        }
    };
    parts.into_iter().unzip()
}

/// `s0 = p (p1 q1)ⁿ (p2 q2)ⁿ t` and `s1 = p (p1 q1)ⁿ p1 q2 (p2 q2)ⁿ t`.
pub fn pump_identity3(
    p: &Context,
    p1: &Context,
    q1: &Context,
    p2: &Context,
    q2: &Context,
    t: &Forest,
    n: usize,
) -> (Forest, Forest) {
    let a = p1.compose(q1).power(n);
    let b = p2.compose(q2).power(n);
    let s0 = p.compose(&a).compose(&b).plug(t);
    let s1 = p.compose(&a).compose(p1).compose(q2).compose(&b).plug(t);
    (s0, s1)
}

/// The two sides of a failure as `(values, terms)` at pumping exponent `n`.
enum Sides {
    Forests(usize, usize, Forest, Forest),
    Contexts(usize, usize, Context, Context),
}

fn sides(m: &AlgebraMorphism, failure: &IdentityFailure, n: usize) -> Sides {
    let alg = &m.algebra;
    let (wh, wv) = (&m.witness_h, &m.witness_v);
    match *failure {
        IdentityFailure::Idempotent { h } => {
            Sides::Forests(h, alg.add(h, h), wh[h].clone(), wh[h].concat(&wh[h]))
        }
        IdentityFailure::Commutative { g, h } => Sides::Forests(
            alg.add(g, h),
            alg.add(h, g),
            wh[g].concat(&wh[h]),
            wh[h].concat(&wh[g]),
        ),
        IdentityFailure::Aperiodic { v } => Sides::Contexts(
            alg.power(v, n),
            alg.power(v, n + 1),
            wv[v].power(n),
            wv[v].power(n + 1),
        ),
        IdentityFailure::Da { v, w } => {
            let x = alg.power(alg.compose(v, w), n);
            let c = wv[v].compose(&wv[w]).power(n);
            Sides::Contexts(
                x,
                alg.compose(alg.compose(x, w), x),
                c.clone(),
                c.compose(&wv[w]).compose(&c),
            )
        }
        IdentityFailure::Special { u1, u2, w1, w2 } => {
            let a = alg.power(alg.compose(u1, w1), n);
            let b = alg.power(alg.compose(u2, w2), n);
            let (s0, s1) = {
                let c1 = wv[u1].compose(&wv[w1]).power(n);
                let c2 = wv[u2].compose(&wv[w2]).power(n);
                (
                    c1.compose(&c2),
                    c1.compose(&wv[u1]).compose(&wv[w2]).compose(&c2),
                )
            };
            Sides::Contexts(
                alg.compose(a, b),
                alg.compose(alg.compose(alg.compose(a, u1), w2), b),
                s0,
                s1,
            )
        }
    }
}

/// Least `(p, t)` in index order telling the two sides apart, then the
/// forests built from their witnesses.
fn separate(m: &AlgebraMorphism, s: &Sides) -> Option<(Forest, Forest)> {
    let alg = &m.algebra;
    let acc = |v: usize, h: usize| m.accept[alg.act(v, h)];
    match s {
        Sides::Forests(x0, x1, f0, f1) => (0..alg.v_len())
            .find(|&p| acc(p, *x0) != acc(p, *x1))
            .map(|p| (m.witness_v[p].plug(f0), m.witness_v[p].plug(f1))),
        Sides::Contexts(c0, c1, k0, k1) => (0..alg.v_len())
            .flat_map(|p| (0..alg.h_len()).map(move |h| (p, h)))
            .find(|&(p, h)| acc(p, alg.act(*c0, h)) != acc(p, alg.act(*c1, h)))
            .map(|(p, h)| {
                let (p, t) = (&m.witness_v[p], &m.witness_h[h]);
                (p.compose(k0).plug(t), p.compose(k1).plug(t))
            }),
    }
}

/// Concrete forests on either side of a failed identity, with memberships
/// checked against the automaton.
pub fn separating_witnesses(
    aut: &SemigroupAutomaton,
    m: &AlgebraMorphism,
    failure: &IdentityFailure,
    pump: usize,
) -> Result<SeparatingPair, AlgebraError> {
    let mut n = pump;
    let mut pair = separate(m, &sides(m, failure, n));
    if pair.is_none() {
        if let Ok(om) = super::omega(&m.algebra) {
            if om.exponent > n {
                n = om.exponent;
                pair = separate(m, &sides(m, failure, n));
            }
        }
    }
    let (s0, s1) = pair.ok_or_else(|| {
        AlgebraError::Internal("failure sides are not separated by any context".into())
    })?;
    let (member0, member1) = (aut.accepts(&s0)?, aut.accepts(&s1)?);
    if member0 == member1 {
        return Err(AlgebraError::Internal(format!(
            "separating pair {s0} / {s1} has equal membership"
        )));
    }
    Ok(SeparatingPair {
        s0,
        s1,
        member0,
        member1,
        pump: n,
    })
}

fn forest_verdict(aut: &SemigroupAutomaton, opts: &DecideOptions) -> Result<Verdict, AlgebraError> {
    let analysis = analyze(aut, opts)?;
    let Some(failure) = analysis.report.first_failure() else {
        return Ok(Verdict::Definable);
    };
    let (elements, witness_terms) = describe(&analysis.morphism, &failure);
    let separating_pair = if opts.witnesses {
        Some(separating_witnesses(
            aut,
            &analysis.morphism,
            &failure,
            opts.pump,
        )?)
    } else {
        None
    };
    Ok(Verdict::NotDefinable(Violation {
        inner_label: None,
        identity: Identity::of(&failure),
        failure,
        elements,
        witness_terms,
        separating_pair,
    }))
}

/// Per inner label `b`, the verdict for `{t : b t ∈ L}` (tree kind only).
pub fn tree_sub_verdicts(
    aut: &SemigroupAutomaton,
    opts: &DecideOptions,
) -> Result<Vec<(Label, Verdict)>, AlgebraError> {
    aut.tree_sub_automata()
        .into_iter()
        .map(|(b, sub)| Ok((b, forest_verdict(&sub, opts)?)))
        .collect()
}

/// Whether the automaton's language is definable. A tree language is
/// definable iff every `{t : b t ∈ L}` is.
pub fn decide_definable(
    aut: &SemigroupAutomaton,
    opts: &DecideOptions,
) -> Result<Verdict, AlgebraError> {
    if aut.kind == Kind::Forest {
        return forest_verdict(aut, opts);
    }
    for (b, verdict) in tree_sub_verdicts(aut, opts)? {
        if let Verdict::NotDefinable(mut v) = verdict {
            v.inner_label = Some(b.clone());
            if let Some(p) = &mut v.separating_pair {
                let wrap = |t: &Forest| Forest::single(Tree::inner(b.clone(), t.clone()));
                p.s0 = wrap(&p.s0);
                p.s1 = wrap(&p.s1);
                p.member0 = aut.accepts(&p.s0)?;
                p.member1 = aut.accepts(&p.s1)?;
            }
            return Ok(Verdict::NotDefinable(v));
        }
    }
    Ok(Verdict::Definable)
}
