use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AlgebraMorphism, DashvRelation};

/// JSON form of a syntactic algebra: the automaton skeleton over `H`
/// followed by the context tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub name: String,
    pub leaf_labels: Vec<String>,
    pub inner_labels: Vec<String>,
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub leaf: BTreeMap<String, String>,
    pub inner: BTreeMap<String, Vec<String>>,
    pub accept: Vec<String>,
    pub kind: String,
    pub contexts: Vec<String>,
    pub compose: Vec<Vec<usize>>,
    pub act: Vec<Vec<usize>>,
    pub embed_left: Vec<usize>,
    pub embed_right: Vec<usize>,
    pub witness_h: Vec<String>,
    pub witness_v: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dashv: Option<Vec<(usize, usize)>>,
}

impl AlgebraDump {
    pub fn new(name: &str, m: &AlgebraMorphism, dashv: Option<&DashvRelation>) -> Self {
        let alg = &m.algebra;
        let (h, v) = (alg.h_len(), alg.v_len());
        let names: Vec<String> = (0..h).map(|x| m.h_label(x)).collect();
        AlgebraDump {
            name: name.to_string(),
            leaf_labels: m.alphabet.leaf_labels.iter().cloned().collect(),
            inner_labels: m.alphabet.inner_labels.iter().cloned().collect(),
            elements: names.clone(),
            add: (0..h)
                .map(|g| (0..h).map(|x| alg.add(g, x)).collect())
                .collect(),
            leaf: m
                .leaf
                .iter()
                .map(|(a, &x)| (a.clone(), names[x].clone()))
                .collect(),
            inner: m
                .inner
                .iter()
                .map(|(b, &c)| {
                    (
                        b.clone(),
                        (0..h).map(|x| names[alg.act(c, x)].clone()).collect(),
                    )
                })
                .collect(),
            accept: (0..h)
                .filter(|&x| m.accept[x])
                .map(|x| names[x].clone())
                .collect(),
            kind: "forest".into(),
            contexts: (0..v).map(|x| format!("v{x}")).collect(),
            compose: (0..v)
                .map(|a| (0..v).map(|b| alg.compose(a, b)).collect())
                .collect(),
            act: (0..v)
                .map(|a| (0..h).map(|x| alg.act(a, x)).collect())
                .collect(),
            embed_left: (0..h).map(|x| alg.embed_left(x)).collect(),
            embed_right: (0..h).map(|x| alg.embed_right(x)).collect(),
            witness_h: m.witness_h.iter().map(ToString::to_string).collect(),
            witness_v: m.witness_v.iter().map(ToString::to_string).collect(),
            dashv: dashv.map(DashvRelation::sorted_pairs),
        }
    }
}
