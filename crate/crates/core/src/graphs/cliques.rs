use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graphs::Graph;

/// All k-cliques of a graph as strictly increasing 0-based tuples, in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSet {
    k: usize,
    cliques: Vec<Vec<usize>>,
}

impl CliqueSet {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn index_of(&self, clique: &[usize]) -> Option<usize> {
        self.cliques
            .binary_search_by(|c| c.as_slice().cmp(clique))
            .ok()
    }

    /// Vertices lying in at least one clique.
    pub fn covered_vertices(&self) -> BTreeSet<usize> {
        self.cliques.iter().flatten().copied().collect()
    }
}

/// Ordered-extension backtracking: each partial clique is extended only by
/// larger vertices adjacent to all current members.
pub fn enumerate_k_cliques(g: &Graph, k: usize) -> Result<CliqueSet> {
    if k < 3 {
        return Err(Error::CliqueSize(k));
    }
    let mut cliques = Vec::new();
    let mut current = Vec::with_capacity(k);
    for v in 0..g.n() {
        let candidates: Vec<usize> = g.neighbors(v).range(v + 1..).copied().collect();
        current.push(v);
        extend(g, k, &mut current, &candidates, &mut cliques);
        current.pop();
    }
    Ok(CliqueSet { k, cliques })
}

fn extend(
    g: &Graph,
    k: usize,
    current: &mut Vec<usize>,
    candidates: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    if current.len() + candidates.len() < k {
        return;
    }
    for (idx, &w) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|&x| g.has_edge(w, x))
            .collect();
        current.push(w);
        extend(g, k, current, &next, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};
    use proptest::prelude::*;

    fn complete(n: usize) -> Graph {
        generate(&Family::Complete(n), 0).unwrap()
    }

    #[test]
    fn k4_triangles() {
        let c = enumerate_k_cliques(&complete(4), 3).unwrap();
        assert_eq!(
            c.cliques(),
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        assert_eq!(c.index_of(&[0, 2, 3]), Some(2));
    }

    #[test]
    fn path_has_no_triangles() {
        let p3 = generate(&Family::Path(3), 0).unwrap();
        assert!(enumerate_k_cliques(&p3, 3).unwrap().is_empty());
    }

    #[test]
    fn complete_graph_counts() {
        assert_eq!(enumerate_k_cliques(&complete(5), 3).unwrap().len(), 10);
        assert_eq!(enumerate_k_cliques(&complete(6), 4).unwrap().len(), 15);
    }

    #[test]
    fn small_k_is_rejected() {
        assert_eq!(
            enumerate_k_cliques(&complete(3), 2),
            Err(Error::CliqueSize(2))
        );
    }

    fn brute_force(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                        out.push(vec![a, b, c]);
                    }
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..=8, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = generate(&Family::Gnp(n, p), seed).unwrap();
            let c = enumerate_k_cliques(&g, 3).unwrap();
            let expected = brute_force(&g);
            prop_assert_eq!(c.cliques(), expected.as_slice());
        }
    }
}
