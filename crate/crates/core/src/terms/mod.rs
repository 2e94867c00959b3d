//! Forests, trees and contexts over a two-sorted alphabet.
//!
//! A forest is a nonempty ordered sequence of trees. Leaves carry labels
//! from the leaf set `A`, inner nodes carry labels from the inner set `B`
//! and always have at least one child. A context is a forest in which
//! exactly one leaf position is the hole `[]`.

mod one_sorted;
mod parse;
mod table;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use one_sorted::{
    apply_label_morphism, LabelMorphism, MaybeEmptyForest, OneSortedContext, OneSortedTree,
};
pub use table::NodeTable;

pub type Label = String;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("label `{0}` is not a leaf label")]
    NotLeafLabel(Label),
    #[error("label `{0}` is not an inner label")]
    NotInnerLabel(Label),
    #[error("hole in forest mode")]
    HoleInForest,
    #[error("context must contain exactly one hole, found {0}")]
    HoleCount(usize),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("no node at {0}")]
    InvalidNode(NodeId),
    #[error("empty forest")]
    EmptyForest,
}

pub fn is_valid_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Leaf labels `A` and inner labels `B`. The two sets may overlap; whether a
/// label acts as a leaf or an inner label is decided by its position.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Alphabet {
    pub leaf_labels: BTreeSet<Label>,
    pub inner_labels: BTreeSet<Label>,
}

impl Alphabet {
    pub fn new<I, J, S, T>(leaves: I, inner: J) -> Result<Self, TermError>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: Into<Label>,
        T: Into<Label>,
    {
        let leaf_labels: BTreeSet<Label> = leaves.into_iter().map(Into::into).collect();
        let inner_labels: BTreeSet<Label> = inner.into_iter().map(Into::into).collect();
        if let Some(bad) = leaf_labels
            .iter()
            .chain(inner_labels.iter())
            .find(|l| !is_valid_label(l))
        {
            return Err(TermError::InvalidLabel(bad.clone()));
        }
        Ok(Alphabet {
            leaf_labels,
            inner_labels,
        })
    }

    pub fn is_leaf(&self, label: &str) -> bool {
        self.leaf_labels.contains(label)
    }

    pub fn is_inner(&self, label: &str) -> bool {
        self.inner_labels.contains(label)
    }

    /// All label strings, each once, in sorted order.
    pub fn labels(&self) -> BTreeSet<Label> {
        self.leaf_labels
            .union(&self.inner_labels)
            .cloned()
            .collect()
    }

    /// Smallest alphabet over which `forest` is well sorted.
    pub fn of_forest(forest: &Forest) -> Self {
        let mut alphabet = Alphabet::default();
        forest.collect_labels(&mut alphabet);
        alphabet
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet {
            leaf_labels: self
                .leaf_labels
                .union(&other.leaf_labels)
                .cloned()
                .collect(),
            inner_labels: self
                .inner_labels
                .union(&other.inner_labels)
                .cloned()
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(Label),
    Inner(Label, Forest),
}

impl Tree {
    pub fn leaf(label: impl Into<Label>) -> Self {
        Tree::Leaf(label.into())
    }

    pub fn inner(label: impl Into<Label>, children: Forest) -> Self {
        Tree::Inner(label.into(), children)
    }

    pub fn label(&self) -> &str {
        match self {
            Tree::Leaf(l) | Tree::Inner(l, _) => l,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Inner(_, children) => 1 + children.size(),
        }
    }

    fn check_sorts(&self, alphabet: &Alphabet) -> Result<(), TermError> {
        match self {
            Tree::Leaf(l) if alphabet.is_leaf(l) => Ok(()),
            Tree::Leaf(l) => Err(TermError::NotLeafLabel(l.clone())),
            Tree::Inner(l, _) if !alphabet.is_inner(l) => Err(TermError::NotInnerLabel(l.clone())),
            Tree::Inner(_, children) => children.check_sorts(alphabet),
        }
    }
}

/// A nonempty ordered sequence of trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest(Vec<Tree>);

impl Forest {
    pub fn new(trees: Vec<Tree>) -> Result<Self, TermError> {
        if trees.is_empty() {
            Err(TermError::EmptyForest)
        } else {
            Ok(Forest(trees))
        }
    }

    pub fn single(tree: Tree) -> Self {
        Forest(vec![tree])
    }

    pub fn leaf(label: impl Into<Label>) -> Self {
        Forest::single(Tree::leaf(label))
    }

    pub fn trees(&self) -> &[Tree] {
        &self.0
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Tree::size).sum()
    }

    pub fn is_tree(&self) -> bool {
        self.0.len() == 1
    }

    /// Parse without sort validation.
    pub fn parse(text: &str) -> Result<Self, TermError> {
        parse::parse_forest(text)
    }

    /// Parse and check that leaf labels are in `A` and inner labels in `B`.
    pub fn parse_in(text: &str, alphabet: &Alphabet) -> Result<Self, TermError> {
        let forest = parse::parse_forest(text)?;
        forest.check_sorts(alphabet)?;
        Ok(forest)
    }

    pub fn check_sorts(&self, alphabet: &Alphabet) -> Result<(), TermError> {
        self.0.iter().try_for_each(|t| t.check_sorts(alphabet))
    }

    /// `self + other`.
    pub fn concat(&self, other: &Forest) -> Forest {
        let mut trees = self.0.clone();
        trees.extend(other.0.iter().cloned());
        Forest(trees)
    }

    fn collect_labels(&self, alphabet: &mut Alphabet) {
        for tree in &self.0 {
            match tree {
                Tree::Leaf(l) => {
                    alphabet.leaf_labels.insert(l.clone());
                }
                Tree::Inner(l, children) => {
                    alphabet.inner_labels.insert(l.clone());
                    children.collect_labels(alphabet);
                }
            }
        }
    }

    fn tree_at(&self, node: &NodeId) -> Result<&Tree, TermError> {
        let invalid = || TermError::InvalidNode(node.clone());
        let (&root, rest) = node.0.split_first().ok_or_else(invalid)?;
        let mut tree = self.0.get(root).ok_or_else(invalid)?;
        for &i in rest {
            tree = match tree {
                Tree::Inner(_, children) => children.0.get(i).ok_or_else(invalid)?,
                Tree::Leaf(_) => return Err(invalid()),
            };
        }
        Ok(tree)
    }

    pub fn label_at(&self, node: &NodeId) -> Result<&str, TermError> {
        self.tree_at(node).map(Tree::label)
    }

    /// Proper ancestors of `node`, nearest first.
    pub fn ancestors(&self, node: &NodeId) -> Result<Vec<NodeId>, TermError> {
        self.tree_at(node)?;
        Ok((1..node.0.len())
            .rev()
            .map(|len| NodeId(node.0[..len].to_vec()))
            .collect())
    }

    /// Proper descendants of `node` in preorder.
    pub fn proper_descendants(&self, node: &NodeId) -> Result<Vec<NodeId>, TermError> {
        fn walk(tree: &Tree, path: &mut Vec<usize>, out: &mut Vec<NodeId>) {
            if let Tree::Inner(_, children) = tree {
                for (i, child) in children.0.iter().enumerate() {
                    path.push(i);
                    out.push(NodeId(path.clone()));
                    walk(child, path, out);
                    path.pop();
                }
            }
        }
        let tree = self.tree_at(node)?;
        let mut out = Vec::new();
        walk(tree, &mut node.0.clone(), &mut out);
        Ok(out)
    }

    /// The subtree rooted at `node`, as a one-tree forest.
    pub fn subtree(&self, node: &NodeId) -> Result<Forest, TermError> {
        self.tree_at(node).map(|t| Forest::single(t.clone()))
    }

    /// All nodes in preorder.
    pub fn nodes(&self) -> Vec<NodeId> {
        NodeTable::from_forest(self).ids()
    }

    pub fn to_one_sorted(&self) -> MaybeEmptyForest {
        fn conv(tree: &Tree) -> OneSortedTree {
            match tree {
                Tree::Leaf(l) => OneSortedTree::new(l.clone(), Vec::new()),
                Tree::Inner(l, children) => {
                    OneSortedTree::new(l.clone(), children.0.iter().map(conv).collect())
                }
            }
        }
        MaybeEmptyForest::new(self.0.iter().map(conv).collect())
    }

    /// Replace the subtrees at the given (pairwise incomparable) nodes by
    /// leaves. Nodes absent from `replacements` are kept.
    pub(crate) fn replace_subtrees(&self, replacements: &[(NodeId, Label)]) -> Forest {
        fn go(tree: &Tree, path: &mut Vec<usize>, repl: &[(NodeId, Label)]) -> Tree {
            if let Some((_, l)) = repl.iter().find(|(n, _)| n.0 == *path) {
                return Tree::Leaf(l.clone());
            }
            match tree {
                Tree::Leaf(_) => tree.clone(),
                Tree::Inner(l, children) => {
                    let mut out = Vec::with_capacity(children.0.len());
                    for (i, c) in children.0.iter().enumerate() {
                        path.push(i);
                        out.push(go(c, path, repl));
                        path.pop();
                    }
                    Tree::Inner(l.clone(), Forest(out))
                }
            }
        }
        let mut path = Vec::new();
        Forest(
            self.0
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    path.push(i);
                    let t = go(t, &mut path, replacements);
                    path.pop();
                    t
                })
                .collect(),
        )
    }
}

/// A context `left + spine + right`, where the spine is the hole or an inner
/// node whose children form a smaller context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    left: Vec<Tree>,
    spine: Spine,
    right: Vec<Tree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spine {
    Hole,
    Node(Label, Box<Context>),
}

impl Context {
    /// The empty context `[]`.
    pub fn hole() -> Self {
        Context {
            left: Vec::new(),
            spine: Spine::Hole,
            right: Vec::new(),
        }
    }

    /// `label([])`.
    pub fn node(label: impl Into<Label>) -> Self {
        Context::hole().wrap(label)
    }

    /// `label(self)`.
    pub fn wrap(self, label: impl Into<Label>) -> Self {
        Context {
            left: Vec::new(),
            spine: Spine::Node(label.into(), Box::new(self)),
            right: Vec::new(),
        }
    }

    /// `forest + self`.
    pub fn with_left(mut self, forest: &Forest) -> Self {
        let mut left = forest.0.clone();
        left.append(&mut self.left);
        self.left = left;
        self
    }

    /// `self + forest`.
    pub fn with_right(mut self, forest: &Forest) -> Self {
        self.right.extend(forest.0.iter().cloned());
        self
    }

    pub fn is_hole(&self) -> bool {
        self.left.is_empty() && self.right.is_empty() && self.spine == Spine::Hole
    }

    pub fn left(&self) -> &[Tree] {
        &self.left
    }

    pub fn right(&self) -> &[Tree] {
        &self.right
    }

    pub fn spine(&self) -> &Spine {
        &self.spine
    }

    /// Node count, counting the hole as one node.
    pub fn size(&self) -> usize {
        let spine = match &self.spine {
            Spine::Hole => 1,
            Spine::Node(_, inner) => 1 + inner.size(),
        };
        spine
            + self.left.iter().map(Tree::size).sum::<usize>()
            + self.right.iter().map(Tree::size).sum::<usize>()
    }

    pub fn parse(text: &str) -> Result<Self, TermError> {
        parse::parse_context(text)
    }

    pub fn parse_in(text: &str, alphabet: &Alphabet) -> Result<Self, TermError> {
        let ctx = parse::parse_context(text)?;
        ctx.check_sorts(alphabet)?;
        Ok(ctx)
    }

    pub fn check_sorts(&self, alphabet: &Alphabet) -> Result<(), TermError> {
        for t in self.left.iter().chain(&self.right) {
            t.check_sorts(alphabet)?;
        }
        match &self.spine {
            Spine::Hole => Ok(()),
            Spine::Node(l, _) if !alphabet.is_inner(l) => Err(TermError::NotInnerLabel(l.clone())),
            Spine::Node(_, inner) => inner.check_sorts(alphabet),
        }
    }

    /// Substitute a forest for the hole.
    pub fn plug(&self, forest: &Forest) -> Forest {
        let mut trees = self.left.clone();
        match &self.spine {
            Spine::Hole => trees.extend(forest.0.iter().cloned()),
            Spine::Node(l, inner) => trees.push(Tree::Inner(l.clone(), inner.plug(forest))),
        }
        trees.extend(self.right.iter().cloned());
        Forest(trees)
    }

    /// Context composition: `(self.compose(q)).plug(t) == self.plug(&q.plug(t))`.
    pub fn compose(&self, inner_ctx: &Context) -> Context {
        match &self.spine {
            Spine::Hole => {
                let mut left = self.left.clone();
                left.extend(inner_ctx.left.iter().cloned());
                let mut right = inner_ctx.right.clone();
                right.extend(self.right.iter().cloned());
                Context {
                    left,
                    spine: inner_ctx.spine.clone(),
                    right,
                }
            }
            Spine::Node(l, inner) => Context {
                left: self.left.clone(),
                spine: Spine::Node(l.clone(), Box::new(inner.compose(inner_ctx))),
                right: self.right.clone(),
            },
        }
    }

    /// n-fold self-composition; the zeroth power is `[]`.
    pub fn power(&self, n: usize) -> Context {
        (0..n).fold(Context::hole(), |acc, _| acc.compose(self))
    }
}

/// Substitute `forest` for the hole in `outer`.
pub fn plug(outer: &Context, forest: &Forest) -> Forest {
    outer.plug(forest)
}

/// `left + right`.
pub fn concat(left: &Forest, right: &Forest) -> Forest {
    left.concat(right)
}

pub fn context_power(p: &Context, n: usize) -> Context {
    p.power(n)
}

/// Address of a node: index of the root in the forest, followed by
/// zero-based child indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub Vec<usize>);

impl NodeId {
    pub fn root(i: usize) -> Self {
        NodeId(vec![i])
    }

    pub fn is_root(&self) -> bool {
        self.0.len() == 1
    }

    pub fn is_ancestor_of(&self, other: &NodeId) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

fn write_trees(f: &mut fmt::Formatter<'_>, trees: &[Tree], mut first: bool) -> fmt::Result {
    for t in trees {
        if !first {
            f.write_str("+")?;
        }
        first = false;
        write!(f, "{t}")?;
    }
    Ok(())
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(l) => f.write_str(l),
            Tree::Inner(l, children) => write!(f, "{l}({children})"),
        }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_trees(f, &self.0, true)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_trees(f, &self.left, true)?;
        if !self.left.is_empty() {
            f.write_str("+")?;
        }
        match &self.spine {
            Spine::Hole => f.write_str("[]")?,
            Spine::Node(l, inner) => write!(f, "{l}({inner})")?,
        }
        write_trees(f, &self.right, false)
    }
}

macro_rules! serde_as_text {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                <$ty>::parse(&text).map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_as_text!(Forest);
serde_as_text!(Context);
