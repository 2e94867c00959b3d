use super::{Forest, MaybeEmptyForest, NodeId, OneSortedTree, Tree};

/// Preorder flattening of a (possibly empty, possibly one-sorted) forest.
///
/// Node `i` has proper descendants `i+1..end[i]`; ancestors are reached via
/// `parent`.
#[derive(Debug, Clone, Default)]
pub struct NodeTable<'a> {
    pub labels: Vec<&'a str>,
    pub parent: Vec<Option<usize>>,
    pub end: Vec<usize>,
    pub roots: Vec<usize>,
}

impl<'a> NodeTable<'a> {
    pub fn from_forest(forest: &'a Forest) -> Self {
        fn walk<'a>(t: &'a Tree, parent: Option<usize>, table: &mut NodeTable<'a>) {
            let me = table.push(t.label(), parent);
            if let Tree::Inner(_, children) = t {
                for c in children.trees() {
                    walk(c, Some(me), table);
                }
            }
            table.end[me] = table.labels.len();
        }
        let mut table = NodeTable::default();
        for t in forest.trees() {
            table.roots.push(table.labels.len());
            walk(t, None, &mut table);
        }
        table
    }

    pub fn from_one_sorted(forest: &'a MaybeEmptyForest) -> Self {
        fn walk<'a>(t: &'a OneSortedTree, parent: Option<usize>, table: &mut NodeTable<'a>) {
            let me = table.push(&t.label, parent);
            for c in &t.children {
                walk(c, Some(me), table);
            }
            table.end[me] = table.labels.len();
        }
        let mut table = NodeTable::default();
        for t in forest.trees() {
            table.roots.push(table.labels.len());
            walk(t, None, &mut table);
        }
        table
    }

    fn push(&mut self, label: &'a str, parent: Option<usize>) -> usize {
        self.labels.push(label);
        self.parent.push(parent);
        self.end.push(0);
        self.labels.len() - 1
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn descendants(&self, i: usize) -> std::ops::Range<usize> {
        i + 1..self.end[i]
    }

    pub fn ancestors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(self.parent[i], move |&p| self.parent[p])
    }

    /// Path addresses of every node, in preorder.
    pub fn ids(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = Vec::with_capacity(self.len());
        let mut next_child = vec![0usize; self.len()];
        let mut next_root = 0;
        for i in 0..self.len() {
            let id = match self.parent[i] {
                None => {
                    next_root += 1;
                    NodeId(vec![next_root - 1])
                }
                Some(p) => {
                    let mut path = ids[p].0.clone();
                    path.push(next_child[p]);
                    next_child[p] += 1;
                    NodeId(path)
                }
            };
            ids.push(id);
        }
        ids
    }

    pub fn index_of(&self, id: &NodeId) -> Option<usize> {
        let (&root, rest) = id.0.split_first()?;
        let mut node = *self.roots.get(root)?;
        for &k in rest {
            let mut child = node + 1;
            let mut seen = 0;
            loop {
                if child >= self.end[node] {
                    return None;
                }
                if seen == k {
                    break;
                }
                child = self.end[child];
                seen += 1;
            }
            node = child;
        }
        Some(node)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_layout() {
        let f = Forest::parse("b(a+b(a))+a").unwrap();
        let t = NodeTable::from_forest(&f);
        assert_eq!(t.labels, vec!["b", "a", "b", "a", "a"]);
        assert_eq!(t.parent, vec![None, Some(0), Some(0), Some(2), None]);
        assert_eq!(t.end, vec![4, 2, 4, 4, 5]);
        assert_eq!(t.roots, vec![0, 4]);
        assert_eq!(t.ancestors(3).collect::<Vec<_>>(), vec![2, 0]);
        let ids = t.ids();
        assert_eq!(ids[3], NodeId(vec![0, 1, 0]));
        for (i, id) in ids.iter().enumerate() {
            assert_eq!(t.index_of(id), Some(i));
        }
        assert_eq!(t.index_of(&NodeId(vec![0, 2])), None);
    }
}
