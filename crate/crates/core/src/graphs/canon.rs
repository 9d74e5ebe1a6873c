use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Default bound on `n` for the exhaustive searches in this module.
pub const DEFAULT_MAX_N: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical label of vertex `v`.
    pub labeling: Vec<usize>,
    /// Edge set of the relabeled graph, sorted, `i < j`.
    pub edges: Vec<(usize, usize)>,
}

/// Canonical form with the default size guard.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_limit(g, DEFAULT_MAX_N)
}

/// Lexicographically smallest adjacency string (upper triangle, column by
/// column) over all orderings that list vertices by ascending degree.
/// Vertices with identical neighborhoods are interchangeable, so only one
/// of them is tried per position.
pub fn canonical_form_with_limit(g: &Graph, max_n: usize) -> Result<CanonicalForm> {
    let n = g.n();
    if n > max_n {
        return Err(Error::SizeGuard { n, limit: max_n });
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    // cell_of_position[p] = the degree a vertex placed at p must have
    let cell_degree: Vec<usize> = by_degree.iter().map(|&v| g.degree(v)).collect();

    let mut search = Search {
        g,
        cell_degree,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        code: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    search.descend();
    let (order, _) = search.best.expect("at least one ordering");
    let mut labeling = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        labeling[v] = p;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (labeling[a], labeling[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    Ok(CanonicalForm { labeling, edges })
}

fn twins(g: &Graph, a: usize, b: usize) -> bool {
    let na = g.neighbors(a).iter().filter(|&&x| x != b);
    let nb = g.neighbors(b).iter().filter(|&&x| x != a);
    na.eq(nb)
}

struct Search<'a> {
    g: &'a Graph,
    cell_degree: Vec<usize>,
    order: Vec<usize>,
    used: Vec<bool>,
    code: Vec<bool>,
    best: Option<(Vec<usize>, Vec<bool>)>,
}

impl Search<'_> {
    /// Compares the current code prefix with the same prefix of the best
    /// code found so far.
    fn prefix_order(&self) -> Ordering {
        match &self.best {
            Some((_, best)) => self.code.as_slice().cmp(&best[..self.code.len()]),
            None => Ordering::Less,
        }
    }

    fn descend(&mut self) {
        let p = self.order.len();
        let n = self.g.n();
        if p == n {
            if self.prefix_order() == Ordering::Less {
                self.best = Some((self.order.clone(), self.code.clone()));
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.used[v] || self.g.degree(v) != self.cell_degree[p] {
                continue;
            }
            if tried.iter().any(|&u| twins(self.g, u, v)) {
                continue;
            }
            tried.push(v);
            let start = self.code.len();
            for q in 0..p {
                self.code.push(self.g.has_edge(self.order[q], v));
            }
            if self.prefix_order() != Ordering::Greater {
                self.used[v] = true;
                self.order.push(v);
                self.descend();
                self.order.pop();
                self.used[v] = false;
            }
            self.code.truncate(start);
        }
    }
}

/// A permutation `sigma` with `g.permute(sigma) == h` (ignoring weights), if
/// the graphs are isomorphic.
pub fn find_isomorphism(g: &Graph, h: &Graph, max_n: usize) -> Result<Option<Vec<usize>>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let cg = canonical_form_with_limit(g, max_n)?;
    let ch = canonical_form_with_limit(h, max_n)?;
    if cg.edges != ch.edges {
        return Ok(None);
    }
    let mut inverse_h = vec![0; h.n()];
    for (v, &l) in ch.labeling.iter().enumerate() {
        inverse_h[l] = v;
    }
    Ok(Some(cg.labeling.iter().map(|&l| inverse_h[l]).collect()))
}

/// Every automorphism of `g` (weights ignored), identity first.
pub fn automorphisms(g: &Graph, max_n: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n > max_n {
        return Err(Error::SizeGuard { n, limit: max_n });
    }
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_automorphism(g, &mut image, &mut used, &mut out);
    Ok(out)
}

fn extend_automorphism(
    g: &Graph,
    image: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let v = image.len();
    if v == g.n() {
        out.push(image.clone());
        return;
    }
    for w in 0..g.n() {
        if used[w] || g.degree(w) != g.degree(v) {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(image[u], w)) {
            continue;
        }
        used[w] = true;
        image.push(w);
        extend_automorphism(g, image, used, out);
        image.pop();
        used[w] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn shuffled(n: usize, seed: u64) -> Vec<usize> {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut Xoshiro256PlusPlus::seed_from_u64(seed));
        sigma
    }

    #[test]
    fn triangle_relabelings_agree() {
        let k3 = generate(&Family::Complete(3), 0).unwrap();
        let base = canonical_form(&k3).unwrap();
        for seed in 0..6 {
            let h = k3.permute(&shuffled(3, seed)).unwrap();
            assert_eq!(canonical_form(&h).unwrap().edges, base.edges);
        }
    }

    #[test]
    fn path_and_triangle_differ() {
        let p3 = generate(&Family::Path(3), 0).unwrap();
        let k3 = generate(&Family::Complete(3), 0).unwrap();
        assert_ne!(canonical_form(&p3).unwrap().edges, canonical_form(&k3).unwrap().edges);
        assert_eq!(find_isomorphism(&p3, &k3, 10).unwrap(), None);
    }

    #[test]
    fn random_six_vertex_witness() {
        let g = generate(&Family::Gnp(6, 0.5), 42).unwrap();
        let sigma = shuffled(6, 9);
        let h = g.permute(&sigma).unwrap();
        let found = find_isomorphism(&g, &h, 10).unwrap().unwrap();
        assert_eq!(g.permute(&found).unwrap(), h);
    }

    #[test]
    fn nonisomorphic_same_degrees() {
        // C6 and two disjoint triangles are both 2-regular
        let c6 = generate(&Family::Cycle(6), 0).unwrap();
        let two = Graph::from_labels(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert_eq!(find_isomorphism(&c6, &two, 10).unwrap(), None);
    }

    #[test]
    fn size_guard() {
        let g = Graph::new(11, []).unwrap();
        assert_eq!(
            canonical_form(&g),
            Err(Error::SizeGuard { n: 11, limit: 10 })
        );
        assert!(canonical_form_with_limit(&g, 11).is_ok());
    }

    #[test]
    fn complete_graph_at_guard_is_fast() {
        let k10 = generate(&Family::Complete(10), 0).unwrap();
        assert_eq!(canonical_form(&k10).unwrap().edges.len(), 45);
    }

    #[test]
    fn automorphism_counts() {
        let count = |f: Family| automorphisms(&generate(&f, 0).unwrap(), 10).unwrap().len();
        assert_eq!(count(Family::Complete(4)), 24);
        assert_eq!(count(Family::Path(4)), 2);
        assert_eq!(count(Family::Cycle(5)), 10);
    }

    proptest! {
        #[test]
        fn invariant_under_permutation(n in 1usize..=7, p in 0.0f64..1.0, seed in any::<u64>(), pseed in any::<u64>()) {
            let g = generate(&Family::Gnp(n, p), seed).unwrap();
            let h = g.permute(&shuffled(n, pseed)).unwrap();
            prop_assert_eq!(canonical_form(&g).unwrap().edges, canonical_form(&h).unwrap().edges);
            let sigma = find_isomorphism(&g, &h, 10).unwrap().unwrap();
            prop_assert_eq!(g.permute(&sigma).unwrap(), h);
        }
    }
}
