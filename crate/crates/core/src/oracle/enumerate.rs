use crate::terms::{Alphabet, Context, Forest, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dedup {
    #[default]
    None,
    /// One representative per forest up to reordering siblings. Only sound
    /// for consumers that cannot see sibling order, such as formulas.
    Multiset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub alphabet: Alphabet,
    pub max_nodes: usize,
    pub dedup: Dedup,
}

impl EnumerationSpec {
    pub fn new(alphabet: Alphabet, max_nodes: usize) -> Self {
        EnumerationSpec {
            alphabet,
            max_nodes: max_nodes.max(1),
            dedup: Dedup::None,
        }
    }

    pub fn multiset(mut self) -> Self {
        self.dedup = Dedup::Multiset;
        self
    }
}

/// Trees and forests by exact size, built on demand.
struct Tables {
    alphabet: Alphabet,
    trees: Vec<Vec<Tree>>,
    forests: Vec<Vec<Vec<Tree>>>,
}

impl Tables {
    fn new(alphabet: Alphabet) -> Self {
        Tables {
            alphabet,
            trees: vec![Vec::new()],
            forests: vec![vec![Vec::new()]],
        }
    }

    fn grow(&mut self, n: usize) {
        while self.trees.len() <= n {
            let k = self.trees.len();
            let mut trees: Vec<Tree> = Vec::new();
            if k == 1 {
                trees.extend(self.alphabet.leaf_labels.iter().map(Tree::leaf));
            } else {
                for b in &self.alphabet.inner_labels {
                    for f in &self.forests[k - 1] {
                        let children = Forest::new(f.clone()).expect("nonempty");
                        trees.push(Tree::inner(b.clone(), children));
                    }
                }
            }
            let mut forests = Vec::new();
            for first in 1..=k {
                let heads: &[Tree] = if first == k {
                    &trees
                } else {
                    &self.trees[first]
                };
                for t in heads {
                    for rest in &self.forests[k - first] {
                        let mut f = Vec::with_capacity(rest.len() + 1);
                        f.push(t.clone());
                        f.extend(rest.iter().cloned());
                        forests.push(f);
                    }
                }
            }
            self.trees.push(trees);
            self.forests.push(forests);
        }
    }
}

fn siblings_sorted(trees: &[Tree]) -> bool {
    let keys: Vec<String> = trees.iter().map(|t| t.to_string()).collect();
    keys.windows(2).all(|w| w[0] <= w[1])
        && trees.iter().all(|t| match t {
            Tree::Leaf(_) => true,
            Tree::Inner(_, children) => siblings_sorted(children.trees()),
        })
}

/// All forests of exactly `n` nodes in canonical-rendering order.
pub fn forests_of_size(alphabet: &Alphabet, n: usize, dedup: Dedup) -> Vec<Forest> {
    if n == 0 {
        return Vec::new();
    }
    let mut t = Tables::new(alphabet.clone());
    t.grow(n);
    sized(std::mem::take(&mut t.forests[n]), dedup)
}

fn sized(forests: Vec<Vec<Tree>>, dedup: Dedup) -> Vec<Forest> {
    let mut out: Vec<(String, Forest)> = forests
        .into_iter()
        .filter(|f| dedup == Dedup::None || siblings_sorted(f))
        .map(|f| {
            let f = Forest::new(f).expect("nonempty");
            (f.to_string(), f)
        })
        .collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, f)| f).collect()
}

/// Every forest with at most `max_nodes` nodes, by size and then canonical
/// rendering.
pub fn enumerate_forests(spec: &EnumerationSpec) -> impl Iterator<Item = Forest> {
    let mut tables = Tables::new(spec.alphabet.clone());
    let dedup = spec.dedup;
    (1..=spec.max_nodes).flat_map(move |n| {
        tables.grow(n);
        sized(tables.forests[n].clone(), dedup)
    })
}

/// Every context with at most `max_nodes` nodes, the hole counting as one,
/// by size and then canonical rendering.
pub fn enumerate_contexts(alphabet: &Alphabet, max_nodes: usize) -> Vec<Context> {
    let labels = alphabet.labels();
    let marker = (0..)
        .map(|i| format!("hole{i}"))
        .find(|m| !labels.contains(m))
        .expect("a fresh label exists");
    let mut extended = alphabet.clone();
    extended.leaf_labels.insert(marker.clone());
    let mut out: Vec<(usize, String, Context)> =
        enumerate_forests(&EnumerationSpec::new(extended, max_nodes))
            .filter_map(|f| {
                let text = f.to_string();
                let holes = f
                    .nodes()
                    .iter()
                    .filter(|id| f.label_at(id) == Ok(marker.as_str()))
                    .count();
                (holes == 1).then(|| {
                    let p = Context::parse(&text.replace(&marker, "[]")).expect("one hole");
                    (p.size(), p.to_string(), p)
                })
            })
            .collect();
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out.into_iter().map(|(_, _, p)| p).collect()
}

/// Forest counts by exact size from the recurrence
/// `trees(1) = |A|`, `trees(n) = |B|·forests(n-1)`,
/// `forests(n) = Σₖ trees(k)·forests(n-k)` with `forests(0) = 1`.
pub fn forest_counts(leaves: u64, inner: u64, max_nodes: usize) -> Vec<u64> {
    let mut trees = vec![0u64; max_nodes + 1];
    let mut forests = vec![0u64; max_nodes + 1];
    forests[0] = 1;
    for n in 1..=max_nodes {
        trees[n] = if n == 1 {
            leaves
        } else {
            inner * forests[n - 1]
        };
        forests[n] = (1..=n).map(|k| trees[k] * forests[n - k]).sum();
    }
    forests
}
