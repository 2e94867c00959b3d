use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use super::{AlgebraError, FiniteForestAlgebra, SemigroupAutomaton};
use crate::terms::{Alphabet, Context, Forest, Label, Spine, Tree};

/// Semigroup with leaf and inner maps: the operations that generate types.
#[derive(Debug, Clone)]
pub(crate) struct Carrier {
    pub add: Vec<Vec<usize>>,
    pub leaf: BTreeMap<Label, usize>,
    pub inner: BTreeMap<Label, Vec<usize>>,
}

impl Carrier {
    pub fn of_automaton(aut: &SemigroupAutomaton) -> Self {
        Carrier {
            add: aut.add.clone(),
            leaf: aut.leaf_map.clone(),
            inner: aut.inner_map.clone(),
        }
    }

    /// Restrict to the listed elements, renumbered by position. The list
    /// must be closed under the operations.
    pub fn restrict(&self, elems: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.add.len()];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        Carrier {
            add: elems
                .iter()
                .map(|&g| elems.iter().map(|&h| pos[self.add[g][h]]).collect())
                .collect(),
            leaf: self
                .leaf
                .iter()
                .map(|(l, &h)| (l.clone(), pos[h]))
                .collect(),
            inner: self
                .inner
                .iter()
                .map(|(l, row)| (l.clone(), elems.iter().map(|&h| pos[row[h]]).collect()))
                .collect(),
        }
    }

    /// Quotient by a congruence given as a class number per element.
    pub fn quotient(&self, class: &[usize], classes: usize) -> Self {
        let mut rep = vec![usize::MAX; classes];
        for (h, &c) in class.iter().enumerate().rev() {
            rep[c] = h;
        }
        Carrier {
            add: rep
                .iter()
                .map(|&g| rep.iter().map(|&h| class[self.add[g][h]]).collect())
                .collect(),
            leaf: self
                .leaf
                .iter()
                .map(|(l, &h)| (l.clone(), class[h]))
                .collect(),
            inner: self
                .inner
                .iter()
                .map(|(l, row)| (l.clone(), rep.iter().map(|&h| class[row[h]]).collect()))
                .collect(),
        }
    }
}

/// Rendering used for tie-breaking; the hole sorts after every label.
fn order_key(text: &str) -> String {
    text.replace("[]", "\u{10FFFF}")
}

/// Dijkstra-style search keyed by `(size, canonical text)`: every value is
/// finalised with its least witness.
struct Frontier<V, T> {
    heap: BinaryHeap<Reverse<(usize, String, usize)>>,
    slots: Vec<Option<(V, T)>>,
    best: HashMap<V, (usize, String)>,
}

impl<V: Clone + Eq + std::hash::Hash, T: ToString> Frontier<V, T> {
    fn new() -> Self {
        Frontier {
            heap: BinaryHeap::new(),
            slots: Vec::new(),
            best: HashMap::new(),
        }
    }

    fn offer(&mut self, size: usize, value: V, term: impl FnOnce() -> T) {
        if let Some((s, _)) = self.best.get(&value) {
            if *s < size {
                return;
            }
        }
        let term = term();
        let text = order_key(&term.to_string());
        if let Some(b) = self.best.get(&value) {
            if *b <= (size, text.clone()) {
                return;
            }
        }
        self.best.insert(value.clone(), (size, text.clone()));
        self.heap.push(Reverse((size, text, self.slots.len())));
        self.slots.push(Some((value, term)));
    }

    /// Next value with its least witness. Values already returned are
    /// filtered through `done`.
    fn pop(&mut self, done: impl Fn(&V) -> bool) -> Option<(V, T)> {
        while let Some(Reverse((_, _, slot))) = self.heap.pop() {
            let (value, term) = self.slots[slot].take().expect("slot used once");
            if !done(&value) {
                return Some((value, term));
            }
        }
        None
    }
}

/// Reachable elements of the carrier, ordered by least witness forest.
pub(crate) fn explore_forests(c: &Carrier) -> (Vec<usize>, Vec<Forest>) {
    let n = c.add.len();
    let mut index = vec![usize::MAX; n];
    let mut values: Vec<usize> = Vec::new();
    let mut witnesses: Vec<Forest> = Vec::new();
    let mut frontier: Frontier<usize, Forest> = Frontier::new();
    for (a, &h) in &c.leaf {
        frontier.offer(1, h, || Forest::leaf(a.clone()));
    }
    while let Some((h, t)) = frontier.pop(|&h| index[h] != usize::MAX) {
        index[h] = values.len();
        values.push(h);
        witnesses.push(t.clone());
        let size = t.size();
        for (b, row) in &c.inner {
            if index[row[h]] == usize::MAX {
                frontier.offer(size + 1, row[h], || {
                    Forest::single(Tree::inner(b.clone(), t.clone()))
                });
            }
        }
        for (j, &g) in values.iter().enumerate() {
            let other = &witnesses[j];
            let s = size + other.size();
            if index[c.add[h][g]] == usize::MAX {
                frontier.offer(s, c.add[h][g], || t.concat(other));
            }
            if index[c.add[g][h]] == usize::MAX {
                frontier.offer(s, c.add[g][h], || other.concat(&t));
            }
        }
    }
    (values, witnesses)
}

/// Context types as functions on the carrier, ordered by least witness.
/// The hole comes first. Fails when more than `cap` types exist.
fn explore_contexts(
    c: &Carrier,
    witness_h: &[Forest],
    cap: usize,
) -> Result<(Vec<Vec<u32>>, Vec<Context>), AlgebraError> {
    let n = c.add.len();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut funcs: Vec<Vec<u32>> = Vec::new();
    let mut witnesses: Vec<Context> = Vec::new();
    let mut frontier: Frontier<Vec<u32>, Context> = Frontier::new();
    frontier.offer(1, (0..n as u32).collect(), Context::hole);
    while let Some((f, p)) = frontier.pop(|f| index.contains_key(f)) {
        if funcs.len() == cap {
            return Err(AlgebraError::ResourceBound(format!(
                "more than {cap} context types"
            )));
        }
        index.insert(f.clone(), funcs.len());
        let size = p.size();
        for (b, row) in &c.inner {
            let g: Vec<u32> = f.iter().map(|&x| row[x as usize] as u32).collect();
            if !index.contains_key(&g) {
                frontier.offer(size + 1, g, || p.clone().wrap(b.clone()));
            }
        }
        for (h, t) in witness_h.iter().enumerate() {
            let s = size + t.size();
            let g: Vec<u32> = f.iter().map(|&x| c.add[h][x as usize] as u32).collect();
            if !index.contains_key(&g) {
                frontier.offer(s, g, || p.clone().with_left(t));
            }
            let g: Vec<u32> = f.iter().map(|&x| c.add[x as usize][h] as u32).collect();
            if !index.contains_key(&g) {
                frontier.offer(s, g, || p.clone().with_right(t));
            }
        }
        funcs.push(f);
        witnesses.push(p);
    }
    Ok((funcs, witnesses))
}

/// A surjective morphism from forests and contexts onto a finite forest
/// algebra, with a least witness for every element.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    pub algebra: FiniteForestAlgebra,
    pub alphabet: Alphabet,
    /// Which elements of `H` are accepting.
    pub accept: Vec<bool>,
    /// Automaton elements mapped onto each element of `H`.
    pub members: Vec<Vec<usize>>,
    pub h_names: Vec<String>,
    pub witness_h: Vec<Forest>,
    pub witness_v: Vec<Context>,
    pub leaf: BTreeMap<Label, usize>,
    /// Image of `b([])` in `V`.
    pub inner: BTreeMap<Label, usize>,
}

impl AlgebraMorphism {
    /// Generate `(H, V)` from a carrier whose elements are all reachable.
    pub(crate) fn generate(
        c: &Carrier,
        accept: &[bool],
        members: &[Vec<usize>],
        names: &[String],
        alphabet: &Alphabet,
        cap: usize,
    ) -> Result<Self, AlgebraError> {
        let (order, witness_h) = explore_forests(c);
        let c = c.restrict(&order);
        let (funcs, witness_v) = explore_contexts(&c, &witness_h, cap)?;
        let index: HashMap<&[u32], usize> = funcs
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let lookup = |f: &[u32]| index[f];
        let h = order.len();
        let compose: Vec<Vec<usize>> = funcs
            .iter()
            .map(|fv| {
                funcs
                    .iter()
                    .map(|fw| {
                        let g: Vec<u32> = fw.iter().map(|&x| fv[x as usize]).collect();
                        lookup(&g)
                    })
                    .collect()
            })
            .collect();
        let embed = |left: bool| -> Vec<usize> {
            (0..h)
                .map(|g| {
                    let f: Vec<u32> = (0..h)
                        .map(|x| if left { c.add[g][x] } else { c.add[x][g] } as u32)
                        .collect();
                    lookup(&f)
                })
                .collect()
        };
        let embed_left = embed(true);
        let embed_right = embed(false);
        let act: Vec<Vec<usize>> = funcs
            .iter()
            .map(|f| f.iter().map(|&x| x as usize).collect())
            .collect();
        let inner = c
            .inner
            .iter()
            .map(|(b, row)| {
                let f: Vec<u32> = row.iter().map(|&x| x as u32).collect();
                (b.clone(), lookup(&f))
            })
            .collect();
        let algebra = FiniteForestAlgebra::from_tables(
            c.add.clone(),
            compose,
            act,
            0,
            embed_left,
            embed_right,
        )
        .map_err(AlgebraError::Invalid)?;
        Ok(AlgebraMorphism {
            algebra,
            alphabet: alphabet.clone(),
            accept: order.iter().map(|&e| accept[e]).collect(),
            members: order.iter().map(|&e| members[e].clone()).collect(),
            h_names: order.iter().map(|&e| names[e].clone()).collect(),
            witness_h,
            witness_v,
            leaf: c.leaf.clone(),
            inner,
        })
    }

    pub fn h_len(&self) -> usize {
        self.algebra.h_len()
    }

    pub fn v_len(&self) -> usize {
        self.algebra.v_len()
    }

    /// `⟨names⟩` of an element of `H`.
    pub fn h_label(&self, h: usize) -> String {
        format!("⟨{}⟩", self.h_names[h])
    }

    fn eval_trees(&self, trees: &[Tree]) -> Option<Option<usize>> {
        let mut acc = None;
        for t in trees {
            let x = self.eval_tree(t)?;
            acc = Some(match acc {
                None => x,
                Some(a) => self.algebra.add(a, x),
            });
        }
        Some(acc)
    }

    fn eval_tree(&self, t: &Tree) -> Option<usize> {
        match t {
            Tree::Leaf(a) => self.leaf.get(a).copied(),
            Tree::Inner(b, children) => {
                let v = *self.inner.get(b)?;
                Some(self.algebra.act(v, self.eval_forest(children)?))
            }
        }
    }

    /// Image in `H`; `None` on labels outside the alphabet.
    pub fn eval_forest(&self, t: &Forest) -> Option<usize> {
        self.eval_trees(t.trees())
            .map(|x| x.expect("forests are nonempty"))
    }

    /// Image in `V`.
    pub fn eval_context(&self, p: &Context) -> Option<usize> {
        let alg = &self.algebra;
        let mut v = match p.spine() {
            Spine::Hole => alg.identity(),
            Spine::Node(b, inner) => alg.compose(*self.inner.get(b)?, self.eval_context(inner)?),
        };
        if let Some(r) = self.eval_trees(p.right())? {
            v = alg.add_right(v, r);
        }
        if let Some(l) = self.eval_trees(p.left())? {
            v = alg.add_left(l, v);
        }
        Some(v)
    }

    /// Membership of a forest in the recognised language.
    pub fn accepts(&self, t: &Forest) -> Option<bool> {
        self.eval_forest(t).map(|h| self.accept[h])
    }
}

/// The forest algebra generated by an automaton's reachable types, without
/// any quotient.
pub fn generate_algebra(
    aut: &SemigroupAutomaton,
    max_contexts: usize,
) -> Result<AlgebraMorphism, AlgebraError> {
    let n = aut.size();
    let accept: Vec<bool> = (0..n).map(|h| aut.accept.contains(&h)).collect();
    let members: Vec<Vec<usize>> = (0..n).map(|h| vec![h]).collect();
    AlgebraMorphism::generate(
        &Carrier::of_automaton(aut),
        &accept,
        &members,
        &aut.elements,
        &aut.alphabet,
        max_contexts,
    )
}
