//! Crystal graph generation, classical decomposition, characters and
//! DOT/JSON export.
//!
//! Generation is a breadth-first closure under `e_i` and `f_i`; each BFS
//! layer is sorted before it is expanded, so node numbering is deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::crystal::Crystal;
use crate::error::{domain, Error, Result};
use crate::tableau::{Column, Letter};
use crate::weight::Weight;

/// Default cap on the number of nodes a closure may produce.
pub const DEFAULT_NODE_BUDGET: usize = 10_000_000;

/// A labelled edge `source --label--> target`, meaning `f_label(source) = target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

/// A finite crystal graph with deterministically numbered nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph<E> {
    pub rank: usize,
    pub labels: Vec<usize>,
    /// True when label `0` is absent, i.e. only the classical arrows are drawn.
    pub classical_only: bool,
    pub nodes: Vec<E>,
    pub edges: Vec<Edge>,
}

impl<E: Clone + Eq + std::hash::Hash> CrystalGraph<E> {
    pub fn node_index(&self) -> HashMap<E, usize> {
        self.nodes.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect()
    }

    pub fn edges_with_label(&self, label: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.label == label)
    }

    /// Number of connected components of the underlying undirected graph.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.nodes.len()).filter(|&x| find(&mut parent, x) == x).count()
    }
}

fn check_labels<C: Crystal>(crystal: &C, labels: &[usize]) -> Result<()> {
    let allowed = crystal.labels();
    if let Some(bad) = labels.iter().find(|i| !allowed.contains(i)) {
        return domain(format!("label {bad} is not defined on this crystal (allowed {allowed:?})"));
    }
    Ok(())
}

/// Closure of `seeds` under `e_i` and `f_i` for `i` in `labels`, with the
/// `f_i` edges among the generated nodes.
pub fn generate<C: Crystal>(
    crystal: &C,
    seeds: &[C::Elt],
    labels: &[usize],
    budget: usize,
) -> Result<CrystalGraph<C::Elt>> {
    check_labels(crystal, labels)?;
    let mut labels = labels.to_vec();
    labels.sort_unstable();
    labels.dedup();
    let mut seen: HashSet<C::Elt> = HashSet::new();
    let mut nodes = Vec::new();
    let mut layer: Vec<C::Elt> = seeds.to_vec();
    layer.sort();
    layer.dedup();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for b in layer {
            if !seen.insert(b.clone()) {
                continue;
            }
            if seen.len() > budget {
                return Err(Error::Budget { budget, what: "crystal graph".into() });
            }
            for &i in &labels {
                for x in [crystal.f(i, &b), crystal.e(i, &b)].into_iter().flatten() {
                    if !seen.contains(&x) {
                        next.insert(x);
                    }
                }
            }
            nodes.push(b);
        }
        layer = next.into_iter().collect();
    }
    let index: HashMap<&C::Elt, usize> = nodes.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut edges = Vec::new();
    for (s, b) in nodes.iter().enumerate() {
        for &i in &labels {
            if let Some(x) = crystal.f(i, b) {
                let t = *index.get(&x).expect("closure contains every f-image");
                edges.push(Edge { source: s, label: i, target: t });
            }
        }
    }
    Ok(CrystalGraph { rank: crystal.rank(), classical_only: !labels.contains(&0), labels, nodes, edges })
}

/// The full crystal graph of a crystal generated from `seeds` on all of its labels.
pub fn generate_all<C: Crystal>(crystal: &C, seeds: &[C::Elt], budget: usize) -> Result<CrystalGraph<C::Elt>> {
    generate(crystal, seeds, &crystal.labels(), budget)
}

/// Closure of `seeds` under the `f_i` only.
pub fn forward_closure<C: Crystal>(
    crystal: &C,
    seeds: &[C::Elt],
    labels: &[usize],
    budget: usize,
) -> Result<BTreeSet<C::Elt>> {
    check_labels(crystal, labels)?;
    let mut seen: BTreeSet<C::Elt> = seeds.iter().cloned().collect();
    let mut frontier: Vec<C::Elt> = seen.iter().cloned().collect();
    while let Some(b) = frontier.pop() {
        for &i in labels {
            if let Some(x) = crystal.f(i, &b) {
                if seen.insert(x.clone()) {
                    if seen.len() > budget {
                        return Err(Error::Budget { budget, what: "f-closure".into() });
                    }
                    frontier.push(x);
                }
            }
        }
    }
    Ok(seen)
}

/// Classical connected component of `seed` (labels `1..=n`), sorted.
pub fn classical_component<C: Crystal>(crystal: &C, seed: &C::Elt, budget: usize) -> Result<Vec<C::Elt>> {
    let labels: Vec<usize> = (1..=crystal.rank()).collect();
    let g = generate(crystal, std::slice::from_ref(seed), &labels, budget)?;
    let mut nodes = g.nodes;
    nodes.sort();
    Ok(nodes)
}

/// Elements of `set` killed by every classical `e_i`, sorted.
pub fn classical_highest<C: Crystal>(crystal: &C, set: &[C::Elt]) -> Vec<C::Elt> {
    let n = crystal.rank();
    let mut out: Vec<C::Elt> = set.iter().filter(|b| (1..=n).all(|i| crystal.e(i, b).is_none())).cloned().collect();
    out.sort();
    out
}

/// Highest weights of the classical components of `set`, sorted. Fails if
/// `set` is not closed under the classical operators.
pub fn decompose<C: Crystal>(crystal: &C, set: &[C::Elt]) -> Result<Vec<Weight>> {
    let n = crystal.rank();
    let members: HashSet<&C::Elt> = set.iter().collect();
    for b in set {
        for i in 1..=n {
            for x in [crystal.e(i, b), crystal.f(i, b)].into_iter().flatten() {
                if !members.contains(&x) {
                    return domain(format!("set is not closed under e_{i}/f_{i}: {b:?} leaves it"));
                }
            }
        }
    }
    let mut out: Vec<Weight> = classical_highest(crystal, set).iter().map(|b| crystal.weight(b)).collect();
    out.sort();
    Ok(out)
}

/// A formal character: weight multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character(pub BTreeMap<Weight, usize>);

impl Character {
    pub fn add_weight(&mut self, w: Weight, mult: usize) {
        if mult > 0 {
            *self.0.entry(w).or_insert(0) += mult;
        }
    }

    pub fn add(&mut self, other: &Character) {
        for (w, m) in &other.0 {
            self.add_weight(w.clone(), *m);
        }
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }
}

/// Character of a set of crystal elements.
pub fn character<C: Crystal>(crystal: &C, set: &[C::Elt]) -> Character {
    let mut ch = Character::default();
    for b in set {
        ch.add_weight(crystal.weight(b), 1);
    }
    ch
}

/// Text and JSON codec for graph nodes.
pub trait NodeCodec: Sized {
    /// Human-readable label, used in DOT output.
    fn label(&self) -> String;
    fn to_json(&self) -> Value;
    fn from_json(rank: usize, v: &Value) -> Result<Self>;
}

impl NodeCodec for Column {
    fn label(&self) -> String {
        self.to_string()
    }

    fn to_json(&self) -> Value {
        json!(self.to_strings())
    }

    fn from_json(rank: usize, v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse(format!("column must be an array: {v}")))?;
        let letters = arr
            .iter()
            .map(|x| {
                let s = x.as_str().ok_or_else(|| Error::Parse(format!("letter must be a string: {x}")))?;
                Letter::parse(s, rank)
            })
            .collect::<Result<Vec<_>>>()?;
        Column::new(rank, letters)
    }
}

impl NodeCodec for Vec<Column> {
    fn label(&self) -> String {
        self.iter().map(Column::to_string).collect::<Vec<_>>().join(" (x) ")
    }

    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(NodeCodec::to_json).collect())
    }

    fn from_json(rank: usize, v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse(format!("tensor must be an array: {v}")))?;
        arr.iter().map(|c| Column::from_json(rank, c)).collect()
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl<E: NodeCodec> CrystalGraph<E> {
    /// GraphViz rendering; each edge carries its label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (i, b) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", dot_escape(&b.label()));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.source, e.target, e.label);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "labels": self.labels,
            "classical_only": self.classical_only,
            "nodes": self.nodes.iter().map(NodeCodec::to_json).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!([e.source, e.label, e.target])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("graph JSON: missing or malformed {what}"));
        let rank = v["rank"].as_u64().ok_or_else(|| bad("rank"))? as usize;
        let labels = v["labels"]
            .as_array()
            .ok_or_else(|| bad("labels"))?
            .iter()
            .map(|x| x.as_u64().map(|i| i as usize).ok_or_else(|| bad("labels")))
            .collect::<Result<Vec<_>>>()?;
        let classical_only = v["classical_only"].as_bool().ok_or_else(|| bad("classical_only"))?;
        let nodes = v["nodes"]
            .as_array()
            .ok_or_else(|| bad("nodes"))?
            .iter()
            .map(|x| E::from_json(rank, x))
            .collect::<Result<Vec<_>>>()?;
        let edges = v["edges"]
            .as_array()
            .ok_or_else(|| bad("edges"))?
            .iter()
            .map(|x| {
                let t = x.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("edge"))?;
                let get = |j: usize| t[j].as_u64().map(|u| u as usize).ok_or_else(|| bad("edge"));
                let e = Edge { source: get(0)?, label: get(1)?, target: get(2)? };
                if e.source >= nodes.len() || e.target >= nodes.len() {
                    return Err(bad("edge endpoint"));
                }
                Ok(e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rank, labels, classical_only, nodes, edges })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kr::{KnCrystal, KrCrystal};
    use crate::tensor::TensorCrystal;
    use crate::weight::fundamental;

    #[test]
    fn b11_graph_for_d4() {
        let kr = KrCrystal::new(4, 1).unwrap();
        let g = generate_all(&kr, &[kr.highest(0)], 100).unwrap();
        assert_eq!(g.nodes.len(), 8);
        assert_eq!(g.edges.len(), 10);
        assert_eq!(g.edges_with_label(0).count(), 2);
        assert_eq!(g.component_count(), 1);
        assert!(!g.classical_only);
    }

    #[test]
    fn empty_graph_dot() {
        let g: CrystalGraph<Column> =
            CrystalGraph { rank: 4, labels: vec![], classical_only: true, nodes: vec![], edges: vec![] };
        assert_eq!(g.to_dot(), "digraph crystal {\n}\n");
    }

    #[test]
    fn json_round_trip() {
        let kr = KrCrystal::new(5, 2).unwrap();
        let g = generate_all(&kr, &[kr.highest(0)], 1000).unwrap();
        let back: CrystalGraph<Column> = CrystalGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(CrystalGraph::<Column>::from_json(&reparsed).unwrap(), g);

        let t = TensorCrystal::new(vec![kr, kr]).unwrap();
        let seed = vec![kr.highest(0), kr.highest(1)];
        let g2 = generate(&t, &[seed], &[1, 2], 10_000).unwrap();
        assert!(g2.classical_only);
        assert_eq!(CrystalGraph::<Vec<Column>>::from_json(&g2.to_json()).unwrap(), g2);
        assert!(g2.to_dot().contains(" (x) "));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        let v = json!({"rank": 4, "labels": [1], "classical_only": true, "nodes": [["9"]], "edges": []});
        assert!(CrystalGraph::<Column>::from_json(&v).is_err());
        let v = json!({"rank": 4, "labels": [1], "classical_only": true, "nodes": [], "edges": [[0, 1, 0]]});
        assert!(matches!(CrystalGraph::<Column>::from_json(&v), Err(Error::Parse(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let kr = KrCrystal::new(5, 3).unwrap();
        assert!(matches!(generate_all(&kr, &[kr.highest(0)], 10), Err(Error::Budget { .. })));
        assert!(matches!(forward_closure(&kr, &[kr.highest(0)], &[1, 2, 3], 3), Err(Error::Budget { .. })));
    }

    #[test]
    fn unknown_label_is_rejected() {
        let kn = KnCrystal::new(4, 1).unwrap();
        assert!(generate(&kn, &[kn.highest()], &[0], 10).is_err());
    }

    #[test]
    fn decomposition_of_b21_for_d4() {
        let kr = KrCrystal::new(4, 2).unwrap();
        let all = kr.elements();
        let weights = decompose(&kr, &all).unwrap();
        let mut expected = vec![fundamental(4, 2).unwrap(), Weight::zero(4)];
        expected.sort();
        assert_eq!(weights, expected);
        assert!(decompose(&kr, &all[..3]).is_err());
    }

    #[test]
    fn character_counts() {
        let kn = KnCrystal::new(5, 2).unwrap();
        let comp = classical_component(&kn, &kn.highest(), 1000).unwrap();
        assert_eq!(comp, kn.elements());
        let ch = character(&kn, &comp);
        assert_eq!(ch.total(), comp.len());
        assert_eq!(ch.0.get(&fundamental(5, 2).unwrap()), Some(&1));
    }
}
