use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::AlgebraError;
use crate::terms::{Alphabet, Context, Forest, Label, Spine, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Forest,
    Tree,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Forest => "forest",
            Kind::Tree => "tree",
        })
    }
}

/// Bottom-up device assigning an element of the finite semigroup `H` to
/// every forest:
///
/// ```text
/// β(a)           = leaf_map[a]
/// β(s₁ + … + sₙ) = β(s₁) + … + β(sₙ)
/// β(b t)         = inner_map[b][β(t)]
/// ```
///
/// In tree kind the acceptance condition is only meaningful on trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupAutomaton {
    pub name: String,
    pub alphabet: Alphabet,
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub leaf_map: BTreeMap<Label, usize>,
    pub inner_map: BTreeMap<Label, Vec<usize>>,
    pub accept: BTreeSet<usize>,
    pub kind: Kind,
}

/// On-disk JSON form; elements are referenced by name except in `add`,
/// which holds row-major indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonDocument {
    #[serde(default)]
    pub name: String,
    pub leaf_labels: Vec<String>,
    pub inner_labels: Vec<String>,
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub leaf: BTreeMap<String, String>,
    pub inner: BTreeMap<String, Vec<String>>,
    pub accept: Vec<String>,
    pub kind: String,
}

impl SemigroupAutomaton {
    /// Parse and validate a JSON automaton document.
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let doc: AutomatonDocument =
            serde_json::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn from_document(doc: AutomatonDocument) -> Result<Self, AlgebraError> {
        let kind = match doc.kind.as_str() {
            "forest" => Kind::Forest,
            "tree" => Kind::Tree,
            other => return Err(AlgebraError::UnknownKind(other.to_string())),
        };
        let alphabet = Alphabet::new(
            doc.leaf_labels.iter().cloned(),
            doc.inner_labels.iter().cloned(),
        )
        .map_err(|e| AlgebraError::Invalid(e.to_string()))?;
        let n = doc.elements.len();
        if n == 0 {
            return Err(AlgebraError::Invalid("no elements".into()));
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, e) in doc.elements.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(AlgebraError::Invalid(format!("duplicate element `{e}`")));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| AlgebraError::Dangling(name.to_string()))
        };

        if doc.add.len() != n || doc.add.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::Invalid(format!("add table must be {n}x{n}")));
        }
        if let Some(&bad) = doc.add.iter().flatten().find(|&&x| x >= n) {
            return Err(AlgebraError::Dangling(format!("add entry {bad}")));
        }

        let mut leaf_map = BTreeMap::new();
        for label in &alphabet.leaf_labels {
            let target = doc
                .leaf
                .get(label)
                .ok_or_else(|| AlgebraError::MissingLeaf(label.clone()))?;
            leaf_map.insert(label.clone(), lookup(target)?);
        }
        if let Some(extra) = doc.leaf.keys().find(|l| !alphabet.is_leaf(l)) {
            return Err(AlgebraError::Dangling(format!("leaf label `{extra}`")));
        }

        let mut inner_map = BTreeMap::new();
        for label in &alphabet.inner_labels {
            let row = doc
                .inner
                .get(label)
                .ok_or_else(|| AlgebraError::MissingInner(label.clone()))?;
            if row.len() != n {
                return Err(AlgebraError::Invalid(format!(
                    "inner map for `{label}` has {} entries, expected {n}",
                    row.len()
                )));
            }
            let row = row
                .iter()
                .map(|x| lookup(x))
                .collect::<Result<Vec<_>, _>>()?;
            inner_map.insert(label.clone(), row);
        }
        if let Some(extra) = doc.inner.keys().find(|l| !alphabet.is_inner(l)) {
            return Err(AlgebraError::Dangling(format!("inner label `{extra}`")));
        }

        let accept = doc
            .accept
            .iter()
            .map(|x| lookup(x))
            .collect::<Result<BTreeSet<_>, _>>()?;

        let aut = SemigroupAutomaton {
            name: doc.name,
            alphabet,
            elements: doc.elements,
            add: doc.add,
            leaf_map,
            inner_map,
            accept,
            kind,
        };
        aut.check_associative()?;
        Ok(aut)
    }

    pub fn to_document(&self) -> AutomatonDocument {
        let name = |i: usize| self.elements[i].clone();
        AutomatonDocument {
            name: self.name.clone(),
            leaf_labels: self.alphabet.leaf_labels.iter().cloned().collect(),
            inner_labels: self.alphabet.inner_labels.iter().cloned().collect(),
            elements: self.elements.clone(),
            add: self.add.clone(),
            leaf: self
                .leaf_map
                .iter()
                .map(|(l, &h)| (l.clone(), name(h)))
                .collect(),
            inner: self
                .inner_map
                .iter()
                .map(|(l, row)| (l.clone(), row.iter().map(|&h| name(h)).collect()))
                .collect(),
            accept: self.accept.iter().map(|&h| name(h)).collect(),
            kind: self.kind.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document is serialisable")
    }

    /// Full `|H|³` associativity check of `add`.
    pub fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.elements.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.add[a][b];
                for c in 0..n {
                    if self.add[ab][c] != self.add[a][self.add[b][c]] {
                        return Err(AlgebraError::NonAssociative(
                            self.elements[a].clone(),
                            self.elements[b].clone(),
                            self.elements[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    fn beta_tree(&self, t: &Tree) -> Result<usize, AlgebraError> {
        match t {
            Tree::Leaf(l) => self
                .leaf_map
                .get(l)
                .copied()
                .ok_or_else(|| AlgebraError::UnknownLabel(l.clone())),
            Tree::Inner(l, children) => {
                let row = self
                    .inner_map
                    .get(l)
                    .ok_or_else(|| AlgebraError::UnknownLabel(l.clone()))?;
                Ok(row[self.beta_forest(children)?])
            }
        }
    }

    fn sum_trees(&self, trees: &[Tree]) -> Result<Option<usize>, AlgebraError> {
        let mut acc: Option<usize> = None;
        for t in trees {
            let v = self.beta_tree(t)?;
            acc = Some(match acc {
                None => v,
                Some(a) => self.add[a][v],
            });
        }
        Ok(acc)
    }

    /// Type of a forest.
    pub fn beta_forest(&self, t: &Forest) -> Result<usize, AlgebraError> {
        Ok(self.sum_trees(t.trees())?.expect("forests are nonempty"))
    }

    /// The map `h ↦ β(p t)` for any `t` with `β(t) = h`, as a table over `H`.
    pub fn beta_context(&self, p: &Context) -> Result<Vec<usize>, AlgebraError> {
        let left = self.sum_trees(p.left())?;
        let right = self.sum_trees(p.right())?;
        let spine: Vec<usize> = match p.spine() {
            Spine::Hole => (0..self.size()).collect(),
            Spine::Node(l, inner) => {
                let row = self
                    .inner_map
                    .get(l)
                    .ok_or_else(|| AlgebraError::UnknownLabel(l.clone()))?;
                self.beta_context(inner)?
                    .into_iter()
                    .map(|h| row[h])
                    .collect()
            }
        };
        Ok(spine
            .into_iter()
            .map(|mut h| {
                if let Some(l) = left {
                    h = self.add[l][h];
                }
                if let Some(r) = right {
                    h = self.add[h][r];
                }
                h
            })
            .collect())
    }

    /// Membership of `t`. Tree-kind automata only accept single trees.
    pub fn accepts(&self, t: &Forest) -> Result<bool, AlgebraError> {
        if self.kind == Kind::Tree && !t.is_tree() {
            return Err(AlgebraError::KindViolation(t.to_string()));
        }
        Ok(self.accept.contains(&self.beta_forest(t)?))
    }

    /// For a tree-kind automaton: for each inner label `b`, the forest-kind
    /// automaton recognising `{t : b t ∈ L}`.
    pub fn tree_sub_automata(&self) -> Vec<(Label, SemigroupAutomaton)> {
        self.inner_map
            .iter()
            .map(|(b, row)| {
                let accept = (0..self.size())
                    .filter(|&h| self.accept.contains(&row[h]))
                    .collect();
                let sub = SemigroupAutomaton {
                    name: format!("{}[{b}]", self.name),
                    kind: Kind::Forest,
                    accept,
                    ..self.clone()
                };
                (b.clone(), sub)
            })
            .collect()
    }
}

pub fn load_validate_automaton(document: &[u8]) -> Result<SemigroupAutomaton, AlgebraError> {
    let text = std::str::from_utf8(document).map_err(|e| AlgebraError::Parse(e.to_string()))?;
    SemigroupAutomaton::from_json(text)
}
