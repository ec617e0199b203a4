use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};
use petgraph::unionfind::UnionFind;

use crate::dissimilarity::{DissimilarityData, MISSING_PLACEHOLDER};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: u64,
    pub v: u64,
    /// Similarity (const-minus-weight) or length (shortest-path).
    pub weight: Option<f64>,
}

/// How edges become dissimilarities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphMode {
    /// Dissimilarity 1 on edges; every other pair missing.
    Binary,
    /// `const - s_jk` on edges with `const = max s + 1`; every other pair missing.
    ConstMinusWeight,
    /// Shortest-path length between every pair; edge weights are lengths.
    ShortestPath,
}

/// An undirected graph given by its edge list. Nodes are the ids appearing
/// in edges; matrix row `i` corresponds to the `i`-th smallest id.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphInput {
    edges: Vec<Edge>,
    nodes: Vec<u64>,
}

impl GraphInput {
    /// Rejects self-loops, non-positive weights, and repeated edges whose
    /// weights disagree. Exact repeats are dropped.
    pub fn new(edges: Vec<Edge>) -> Result<Self> {
        let mut seen: BTreeMap<(u64, u64), Option<f64>> = BTreeMap::new();
        let mut kept = Vec::with_capacity(edges.len());
        for e in edges {
            if e.u == e.v {
                return Err(Error::InvalidData(format!("self-loop on node {}", e.u)));
            }
            if let Some(w) = e.weight {
                if !(w > 0.0) || !w.is_finite() {
                    return Err(Error::InvalidData(format!(
                        "edge {}-{} has non-positive weight {w}",
                        e.u, e.v
                    )));
                }
            }
            let key = (e.u.min(e.v), e.u.max(e.v));
            match seen.get(&key) {
                Some(w) if *w == e.weight => continue,
                Some(_) => {
                    return Err(Error::InvalidData(format!(
                        "edge {}-{} listed twice with different weights",
                        key.0, key.1
                    )))
                }
                None => {
                    seen.insert(key, e.weight);
                    kept.push(e);
                }
            }
        }
        let nodes: BTreeSet<u64> = kept.iter().flat_map(|e| [e.u, e.v]).collect();
        Ok(GraphInput {
            edges: kept,
            nodes: nodes.into_iter().collect(),
        })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Node ids in matrix order.
    pub fn nodes(&self) -> &[u64] {
        &self.nodes
    }

    fn index_of(&self, id: u64) -> usize {
        self.nodes
            .binary_search(&id)
            .expect("edge endpoint is a node")
    }

    fn petgraph(&self, weight: impl Fn(&Edge) -> f64) -> UnGraph<(), f64> {
        let mut g = UnGraph::with_capacity(self.nodes.len(), self.edges.len());
        for _ in &self.nodes {
            g.add_node(());
        }
        for e in &self.edges {
            g.add_edge(
                NodeIndex::new(self.index_of(e.u)),
                NodeIndex::new(self.index_of(e.v)),
                weight(e),
            );
        }
        g
    }
}

/// Converts a graph into dissimilarities according to `mode`.
pub fn graph_to_dissimilarity(g: &GraphInput, mode: GraphMode) -> Result<DissimilarityData> {
    if g.edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = g.nodes.len();
    match mode {
        GraphMode::Binary | GraphMode::ConstMinusWeight => {
            let constant = g
                .edges
                .iter()
                .map(|e| e.weight.unwrap_or(1.0))
                .fold(f64::NEG_INFINITY, f64::max)
                + 1.0;
            let mut delta = SquareMatrix::filled(n, MISSING_PLACEHOLDER);
            let mut active = vec![false; n * n];
            for j in 0..n {
                delta.set(j, j, 0.0);
            }
            for e in &g.edges {
                let (j, k) = (g.index_of(e.u), g.index_of(e.v));
                let d = match mode {
                    GraphMode::Binary => 1.0,
                    _ => constant - e.weight.unwrap_or(1.0),
                };
                delta.set_sym(j, k, d);
                active[j * n + k] = true;
                active[k * n + j] = true;
            }
            DissimilarityData::new(delta, None, Some(active))
        }
        GraphMode::ShortestPath => {
            let pg = g.petgraph(|e| e.weight.unwrap_or(1.0));
            let mut delta = SquareMatrix::zeros(n);
            let mut unreachable = 0;
            for j in 0..n {
                let dist = dijkstra(&pg, NodeIndex::new(j), None, |e| *e.weight());
                for k in j + 1..n {
                    match dist.get(&NodeIndex::new(k)) {
                        Some(&d) => delta.set_sym(j, k, d),
                        None => unreachable += 1,
                    }
                }
            }
            if unreachable > 0 {
                return Err(Error::Disconnected(unreachable));
            }
            DissimilarityData::from_delta(delta)
        }
    }
}

/// The subgraph on the largest connected component, with node ids
/// renumbered `0..m` in original id order. Returns it together with the
/// original id of every new id. Ties go to the component holding the
/// smallest node id.
pub fn largest_connected_component(g: &GraphInput) -> Result<(GraphInput, Vec<u64>)> {
    if g.edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = g.nodes.len();
    let mut uf = UnionFind::<usize>::new(n);
    for e in &g.edges {
        uf.union(g.index_of(e.u), g.index_of(e.v));
    }
    let labels = uf.into_labeling();
    // Nodes are visited in id order, so the first root seen for a given size
    // belongs to the component with the smallest id.
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    let mut order = Vec::new();
    for &l in &labels {
        let s = sizes.entry(l).or_insert(0);
        if *s == 0 {
            order.push(l);
        }
        *s += 1;
    }
    let root = order
        .iter()
        .copied()
        .reduce(|best, l| if sizes[&l] > sizes[&best] { l } else { best })
        .expect("graph has nodes");
    let mapping: Vec<u64> = (0..n)
        .filter(|&i| labels[i] == root)
        .map(|i| g.nodes[i])
        .collect();
    let edges = g
        .edges
        .iter()
        .filter(|e| labels[g.index_of(e.u)] == root)
        .map(|e| Edge {
            u: mapping.binary_search(&e.u).expect("in component") as u64,
            v: mapping.binary_search(&e.v).expect("in component") as u64,
            weight: e.weight,
        })
        .collect();
    Ok((GraphInput::new(edges)?, mapping))
}

/// Sizes of all connected components, largest first.
pub fn component_sizes(g: &GraphInput) -> Vec<usize> {
    let n = g.nodes.len();
    let mut uf = UnionFind::<usize>::new(n);
    for e in &g.edges {
        uf.union(g.index_of(e.u), g.index_of(e.v));
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for l in uf.into_labeling() {
        *counts.entry(l).or_insert(0) += 1;
    }
    let mut sizes: Vec<usize> = counts.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}
