//! One-sorted forests (any label may sit anywhere, the empty forest is
//! allowed) and the letter-to-context morphisms acting on them.

use std::collections::BTreeMap;
use std::fmt;

use super::parse::{parse_raw, Raw};
use super::{Label, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneSortedTree {
    pub label: Label,
    pub children: Vec<OneSortedTree>,
}

impl OneSortedTree {
    pub fn new(label: Label, children: Vec<OneSortedTree>) -> Self {
        OneSortedTree { label, children }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MaybeEmptyForest(Vec<OneSortedTree>);

impl MaybeEmptyForest {
    pub fn new(trees: Vec<OneSortedTree>) -> Self {
        MaybeEmptyForest(trees)
    }

    pub fn empty() -> Self {
        MaybeEmptyForest(Vec::new())
    }

    pub fn trees(&self) -> &[OneSortedTree] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        fn sz(t: &OneSortedTree) -> usize {
            1 + t.children.iter().map(sz).sum::<usize>()
        }
        self.0.iter().map(sz).sum()
    }

    /// The empty string denotes the empty forest.
    pub fn parse(text: &str) -> Result<Self, TermError> {
        if text.trim().is_empty() {
            return Ok(MaybeEmptyForest::empty());
        }
        let raw = parse_raw(text)?;
        raw.into_iter()
            .map(|r| to_tree(r).ok_or(TermError::HoleInForest))
            .collect::<Result<_, _>>()
            .map(MaybeEmptyForest)
    }

    pub fn concat(mut self, mut other: MaybeEmptyForest) -> Self {
        self.0.append(&mut other.0);
        self
    }
}

fn to_tree(raw: Raw) -> Option<OneSortedTree> {
    match raw {
        Raw::Hole => None,
        Raw::Node(label, children) => Some(OneSortedTree {
            label,
            children: children.into_iter().map(to_tree).collect::<Option<_>>()?,
        }),
    }
}

/// A one-sorted context; the bare hole is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneSortedContext {
    left: Vec<OneSortedTree>,
    spine: Option<(Label, Box<OneSortedContext>)>,
    right: Vec<OneSortedTree>,
}

impl OneSortedContext {
    pub fn hole() -> Self {
        OneSortedContext {
            left: Vec::new(),
            spine: None,
            right: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, TermError> {
        let raw = parse_raw(text)?;
        Self::from_raw(raw)
    }

    fn from_raw(mut raw: Vec<Raw>) -> Result<Self, TermError> {
        fn holes(r: &Raw) -> usize {
            match r {
                Raw::Hole => 1,
                Raw::Node(_, c) => c.iter().map(holes).sum(),
            }
        }
        let total: usize = raw.iter().map(holes).sum();
        if total != 1 {
            return Err(TermError::HoleCount(total));
        }
        let at = raw.iter().position(|r| holes(r) == 1).unwrap();
        let mut right = raw.split_off(at);
        let spine = match right.remove(0) {
            Raw::Hole => None,
            Raw::Node(l, children) => Some((l, Box::new(Self::from_raw(children)?))),
        };
        let conv = |v: Vec<Raw>| v.into_iter().map(|r| to_tree(r).unwrap()).collect();
        Ok(OneSortedContext {
            left: conv(raw),
            spine,
            right: conv(right),
        })
    }

    pub fn plug(&self, forest: &MaybeEmptyForest) -> MaybeEmptyForest {
        let mut trees = self.left.clone();
        match &self.spine {
            None => trees.extend(forest.0.iter().cloned()),
            Some((l, inner)) => trees.push(OneSortedTree {
                label: l.clone(),
                children: inner.plug(forest).0,
            }),
        }
        trees.extend(self.right.iter().cloned());
        MaybeEmptyForest(trees)
    }

    /// Composition in the same sense as two-sorted contexts.
    pub fn compose(&self, inner_ctx: &OneSortedContext) -> OneSortedContext {
        match &self.spine {
            None => {
                let mut left = self.left.clone();
                left.extend(inner_ctx.left.iter().cloned());
                let mut right = inner_ctx.right.clone();
                right.extend(self.right.iter().cloned());
                OneSortedContext {
                    left,
                    spine: inner_ctx.spine.clone(),
                    right,
                }
            }
            Some((l, inner)) => OneSortedContext {
                left: self.left.clone(),
                spine: Some((l.clone(), Box::new(inner.compose(inner_ctx)))),
                right: self.right.clone(),
            },
        }
    }
}

/// Assigns to every source label a one-sorted context over the target labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelMorphism {
    map: BTreeMap<Label, OneSortedContext>,
}

impl LabelMorphism {
    pub fn new(map: BTreeMap<Label, OneSortedContext>) -> Self {
        LabelMorphism { map }
    }

    /// Build from `(label, context text)` pairs.
    pub fn parse<'a, I>(pairs: I) -> Result<Self, TermError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let map = pairs
            .into_iter()
            .map(|(l, c)| Ok((l.to_string(), OneSortedContext::parse(c)?)))
            .collect::<Result<_, TermError>>()?;
        Ok(LabelMorphism { map })
    }

    pub fn get(&self, label: &str) -> Option<&OneSortedContext> {
        self.map.get(label)
    }

    /// Image of a forest. Labels missing from the map are an error.
    pub fn apply(&self, forest: &MaybeEmptyForest) -> Result<MaybeEmptyForest, TermError> {
        let mut out = MaybeEmptyForest::empty();
        for t in &forest.0 {
            out = out.concat(self.apply_tree(t)?);
        }
        Ok(out)
    }

    fn apply_tree(&self, tree: &OneSortedTree) -> Result<MaybeEmptyForest, TermError> {
        let image = self
            .map
            .get(&tree.label)
            .ok_or_else(|| TermError::InvalidLabel(tree.label.clone()))?;
        let children = self.apply(&MaybeEmptyForest(tree.children.clone()))?;
        Ok(image.plug(&children))
    }

    /// Image of a context: the hole maps to the hole.
    pub fn apply_context(&self, ctx: &OneSortedContext) -> Result<OneSortedContext, TermError> {
        let mut result = OneSortedContext {
            left: self.apply(&MaybeEmptyForest(ctx.left.clone()))?.0,
            spine: None,
            right: Vec::new(),
        };
        if let Some((l, inner)) = &ctx.spine {
            let image = self
                .map
                .get(l)
                .ok_or_else(|| TermError::InvalidLabel(l.clone()))?;
            result = result.compose(image).compose(&self.apply_context(inner)?);
        }
        let right = self.apply(&MaybeEmptyForest(ctx.right.clone()))?;
        Ok(append_right(result, right.0))
    }
}

fn append_right(mut ctx: OneSortedContext, trees: Vec<OneSortedTree>) -> OneSortedContext {
    ctx.right.extend(trees);
    ctx
}

pub fn apply_label_morphism(
    m: &LabelMorphism,
    f: &MaybeEmptyForest,
) -> Result<MaybeEmptyForest, TermError> {
    m.apply(f)
}

fn write_trees(
    f: &mut fmt::Formatter<'_>,
    trees: &[OneSortedTree],
    mut first: bool,
) -> fmt::Result {
    for t in trees {
        if !first {
            f.write_str("+")?;
        }
        first = false;
        write!(f, "{t}")?;
    }
    Ok(())
}

impl fmt::Display for OneSortedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            write_trees(f, &self.children, true)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for MaybeEmptyForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_trees(f, &self.0, true)
    }
}

impl fmt::Display for OneSortedContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_trees(f, &self.left, true)?;
        if !self.left.is_empty() {
            f.write_str("+")?;
        }
        match &self.spine {
            None => f.write_str("[]")?,
            Some((l, inner)) => write!(f, "{l}({inner})")?,
        }
        write_trees(f, &self.right, false)
    }
}
