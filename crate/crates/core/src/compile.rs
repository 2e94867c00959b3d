//! Compile a forest formula into a semigroup automaton.
//!
//! The type of a forest is its profile: for each ancestor set `A` (the
//! closure formulas holding at some proper ancestor of the roots), the
//! formulas holding at some root and at some node. Profiles are tabulated on
//! the ancestor sets reached top-down from `∅`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::algebra::{Kind, SemigroupAutomaton};
use crate::logic::{ForestFormula, Formula};
use crate::terms::Alphabet;

const MAX_CLOSURE: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("formula closure has {0} members, at most {MAX_CLOSURE} are supported")]
    ClosureTooLarge(usize),
    #[error("more than {0} forest types")]
    ResourceBound(usize),
    #[error("fixpoint for `{0}` did not stabilise")]
    Unstable(String),
}

type Mask = u128;

/// Closure formulas in children-first order.
struct Closure {
    nodes: Vec<Node>,
    rank: Vec<usize>,
    index: HashMap<Formula, usize>,
}

enum Node {
    True,
    False,
    Atom(String),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Ef(usize),
    Fp(usize),
}

impl Closure {
    fn build(psi: &ForestFormula) -> Result<Self, CompileError> {
        let mut c = Closure {
            nodes: Vec::new(),
            rank: Vec::new(),
            index: HashMap::new(),
        };
        for phi in psi.atoms() {
            c.add(phi);
        }
        if c.nodes.len() > MAX_CLOSURE {
            return Err(CompileError::ClosureTooLarge(c.nodes.len()));
        }
        Ok(c)
    }

    fn add(&mut self, phi: &Formula) -> usize {
        if let Some(&i) = self.index.get(phi) {
            return i;
        }
        let (node, rank) = match phi {
            Formula::True => (Node::True, 0),
            Formula::False => (Node::False, 0),
            Formula::Atom(l) => (Node::Atom(l.clone()), 0),
            Formula::Not(f) => {
                let i = self.add(f);
                (Node::Not(i), self.rank[i])
            }
            Formula::And(a, b) => {
                let (i, j) = (self.add(a), self.add(b));
                (Node::And(i, j), self.rank[i].max(self.rank[j]))
            }
            Formula::Or(a, b) => {
                let (i, j) = (self.add(a), self.add(b));
                (Node::Or(i, j), self.rank[i].max(self.rank[j]))
            }
            Formula::Ef(f) => {
                let i = self.add(f);
                (Node::Ef(i), self.rank[i] + 1)
            }
            Formula::Fp(f) => {
                let i = self.add(f);
                (Node::Fp(i), self.rank[i] + 1)
            }
        };
        let i = self.nodes.len();
        self.nodes.push(node);
        self.rank.push(rank);
        self.index.insert(phi.clone(), i);
        i
    }

    fn max_rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// Formulas true at a node labelled `label`, given those true at some
    /// proper ancestor and at some proper descendant.
    fn eval_node(&self, label: &str, above: Mask, below: Mask) -> Mask {
        let mut t: Mask = 0;
        for (i, node) in self.nodes.iter().enumerate() {
            let bit = |j: usize, m: Mask| m >> j & 1 == 1;
            let holds = match *node {
                Node::True => true,
                Node::False => false,
                Node::Atom(ref l) => l == label,
                Node::Not(j) => !bit(j, t),
                Node::And(j, k) => bit(j, t) && bit(k, t),
                Node::Or(j, k) => bit(j, t) || bit(k, t),
                Node::Ef(j) => bit(j, below),
                Node::Fp(j) => bit(j, above),
            };
            if holds {
                t |= 1 << i;
            }
        }
        t
    }
}

/// `(roots, anywhere)` per ancestor set of the domain.
type Profile = Vec<(Mask, Mask)>;

struct NeedDomain(Mask);

struct Builder<'a> {
    closure: &'a Closure,
    domain: &'a [Mask],
    position: HashMap<Mask, usize>,
}

impl Builder<'_> {
    fn at(&self, h: &Profile, a: Mask) -> Result<(Mask, Mask), NeedDomain> {
        self.position.get(&a).map(|&i| h[i]).ok_or(NeedDomain(a))
    }

    fn leaf(&self, label: &str) -> Profile {
        self.domain
            .iter()
            .map(|&a| {
                let t = self.closure.eval_node(label, a, 0);
                (t, t)
            })
            .collect()
    }

    fn inner(&self, label: &str, h: &Profile) -> Result<Result<Profile, CompileError>, NeedDomain> {
        let rounds = self.closure.max_rank() + 1;
        let mut out = Vec::with_capacity(self.domain.len());
        for &a in self.domain {
            let mut t: Mask = 0;
            for _ in 0..rounds {
                t = self.closure.eval_node(label, a, self.at(h, a | t)?.1);
            }
            let below = self.at(h, a | t)?.1;
            if self.closure.eval_node(label, a, below) != t {
                return Ok(Err(CompileError::Unstable(label.to_string())));
            }
            out.push((t, t | below));
        }
        Ok(Ok(out))
    }
}

fn union(g: &Profile, h: &Profile) -> Profile {
    g.iter()
        .zip(h)
        .map(|(x, y)| (x.0 | y.0, x.1 | y.1))
        .collect()
}

struct Tables {
    profiles: Vec<Profile>,
    add: Vec<Vec<usize>>,
    leaf: BTreeMap<String, usize>,
    inner: BTreeMap<String, Vec<usize>>,
}

fn explore(
    closure: &Closure,
    domain: &[Mask],
    alphabet: &Alphabet,
    cap: usize,
) -> Result<Result<Tables, CompileError>, NeedDomain> {
    let b = Builder {
        closure,
        domain,
        position: domain.iter().enumerate().map(|(i, &a)| (a, i)).collect(),
    };
    let mut index: HashMap<Profile, usize> = HashMap::new();
    let mut profiles: Vec<Profile> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |p: Profile, profiles: &mut Vec<Profile>, queue: &mut VecDeque<usize>| {
        *index.entry(p.clone()).or_insert_with(|| {
            profiles.push(p);
            queue.push_back(profiles.len() - 1);
            profiles.len() - 1
        })
    };
    let mut leaf = BTreeMap::new();
    for a in &alphabet.leaf_labels {
        let i = intern(b.leaf(a), &mut profiles, &mut queue);
        leaf.insert(a.clone(), i);
    }
    let mut add: HashMap<(usize, usize), usize> = HashMap::new();
    let mut inner: BTreeMap<String, HashMap<usize, usize>> = BTreeMap::new();
    while let Some(i) = queue.pop_front() {
        if profiles.len() > cap {
            return Ok(Err(CompileError::ResourceBound(cap)));
        }
        for label in &alphabet.inner_labels {
            let p = match b.inner(label, &profiles[i])? {
                Ok(p) => p,
                Err(e) => return Ok(Err(e)),
            };
            let j = intern(p, &mut profiles, &mut queue);
            inner.entry(label.clone()).or_default().insert(i, j);
        }
        for j in 0..=i {
            let k = intern(union(&profiles[i], &profiles[j]), &mut profiles, &mut queue);
            add.insert((i, j), k);
            add.insert((j, i), k);
        }
    }
    let n = profiles.len();
    Ok(Ok(Tables {
        add: (0..n)
            .map(|i| (0..n).map(|j| add[&(i, j)]).collect())
            .collect(),
        inner: inner
            .into_iter()
            .map(|(l, m)| (l, (0..n).map(|i| m[&i]).collect()))
            .collect(),
        leaf,
        profiles,
    }))
}

/// Default bound on the number of forest types.
pub const DEFAULT_TYPE_BOUND: usize = 4096;

/// Automaton for the forests over `alphabet` satisfying `psi`.
pub fn compile_forest_formula(
    psi: &ForestFormula,
    alphabet: &Alphabet,
) -> Result<SemigroupAutomaton, CompileError> {
    compile_with_bound(psi, alphabet, DEFAULT_TYPE_BOUND)
}

pub fn compile_with_bound(
    psi: &ForestFormula,
    alphabet: &Alphabet,
    cap: usize,
) -> Result<SemigroupAutomaton, CompileError> {
    let closure = Closure::build(psi)?;
    let mut domain: Vec<Mask> = vec![0];
    let tables = loop {
        match explore(&closure, &domain, alphabet, cap) {
            Ok(result) => break result?,
            Err(NeedDomain(a)) => domain.push(a),
        }
    };
    let n = tables.profiles.len();
    let accept: BTreeSet<usize> = (0..n)
        .filter(|&h| {
            let roots = tables.profiles[h][0].0;
            psi.eval_skeleton(&mut |phi| roots >> closure.index[phi] & 1 == 1)
        })
        .collect();
    Ok(SemigroupAutomaton {
        name: psi.to_string(),
        alphabet: alphabet.clone(),
        elements: (0..n).map(|i| format!("h{i}")).collect(),
        add: tables.add,
        leaf_map: tables.leaf,
        inner_map: tables.inner,
        accept,
        kind: Kind::Forest,
    })
}
