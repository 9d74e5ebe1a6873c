use std::collections::BTreeSet;

use crate::graphs::{CliqueSet, Graph};

/// Split of vertices into those covered by a clique (`V_delta`) and the
/// rest (`V_gamma`), and of edges by where their endpoints fall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDecomposition {
    pub v_delta: Vec<usize>,
    pub v_gamma: Vec<usize>,
    /// both endpoints in `v_delta`
    pub e_delta: Vec<(usize, usize)>,
    /// both endpoints in `v_gamma`
    pub e_gamma: Vec<(usize, usize)>,
    /// one endpoint in each
    pub e_delta_gamma: Vec<(usize, usize)>,
}

pub fn decompose(g: &Graph, cliques: &CliqueSet) -> GraphDecomposition {
    let covered = cliques.covered_vertices();
    let (v_delta, v_gamma): (Vec<usize>, Vec<usize>) =
        (0..g.n()).partition(|v| covered.contains(v));
    let mut d = GraphDecomposition {
        v_delta,
        v_gamma,
        e_delta: Vec::new(),
        e_gamma: Vec::new(),
        e_delta_gamma: Vec::new(),
    };
    for &(a, b) in g.edges() {
        match (covered.contains(&a), covered.contains(&b)) {
            (true, true) => d.e_delta.push((a, b)),
            (false, false) => d.e_gamma.push((a, b)),
            _ => d.e_delta_gamma.push((a, b)),
        }
    }
    d
}

pub fn every_vertex_in_clique(g: &Graph, cliques: &CliqueSet) -> bool {
    cliques.covered_vertices().len() == g.n()
}

/// How "same neighbors" treats a pair of adjacent vertices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Similarity {
    /// `N(a) = N(b)`: adjacent vertices are never similar.
    Open,
    /// `N[a] = N[b]` with closed neighborhoods.
    #[default]
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceGraph {
    pub rule: Similarity,
    /// Classes sorted internally and ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    /// Class index pairs `(i, j)`, `i < j`, joined by at least one edge.
    pub comp_edges: Vec<(usize, usize)>,
    /// Whether each class induces a complete subgraph.
    pub comp_complete: Vec<bool>,
}

impl CoherenceGraph {
    pub fn all_components_complete(&self) -> bool {
        self.comp_complete.iter().all(|&c| c)
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&v))
    }
}

fn similarity_key(g: &Graph, v: usize, rule: Similarity) -> BTreeSet<usize> {
    let mut key = g.neighbors(v).clone();
    if rule == Similarity::Closed {
        key.insert(v);
    }
    key
}

pub fn similar(g: &Graph, a: usize, b: usize, rule: Similarity) -> bool {
    similarity_key(g, a, rule) == similarity_key(g, b, rule)
}

pub fn coherence_graph(g: &Graph, rule: Similarity) -> CoherenceGraph {
    let keys: Vec<BTreeSet<usize>> = (0..g.n()).map(|v| similarity_key(g, v, rule)).collect();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut class = vec![usize::MAX; g.n()];
    for v in 0..g.n() {
        match (0..v).find(|&u| keys[u] == keys[v]) {
            Some(u) => {
                class[v] = class[u];
                components[class[u]].push(v);
            }
            None => {
                class[v] = components.len();
                components.push(vec![v]);
            }
        }
    }
    let comp_edges: BTreeSet<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(a, b)| class[a] != class[b])
        .map(|&(a, b)| (class[a].min(class[b]), class[a].max(class[b])))
        .collect();
    let comp_complete = components
        .iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .all(|(i, &a)| c[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        })
        .collect();
    CoherenceGraph {
        rule,
        components,
        comp_edges: comp_edges.into_iter().collect(),
        comp_complete,
    }
}
