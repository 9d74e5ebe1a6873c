use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graphs::{decompose, enumerate_k_cliques, CliqueSet, Graph, GraphDecomposition};
use crate::linalg::{Matrix, Subspace};

/// Sparse vector: `(basis index, coefficient)` pairs, indices ascending.
pub type SparseVec<F> = Vec<(usize, F)>;

/// One element of the ordered basis. Vertex labels are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    Vertex(usize),
    Edge(usize, usize),
    Clique(Vec<usize>),
}

impl fmt::Display for BasisElement {
    /// 1-based: `e1`, `e1^e2`, `e123` (or `e(1,2,10)` once a label has two digits).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Vertex(i) => write!(f, "e{}", i + 1),
            BasisElement::Edge(i, j) => write!(f, "e{}^e{}", i + 1, j + 1),
            BasisElement::Clique(t) => {
                let labels: Vec<String> = t.iter().map(|v| (v + 1).to_string()).collect();
                if t.iter().all(|&v| v < 9) {
                    write!(f, "e{}", labels.concat())
                } else {
                    write!(f, "e({})", labels.join(","))
                }
            }
        }
    }
}

/// The solvable Lie algebra `V ⊕ W ⊕ U` of a graph: vertices, edges and
/// k-cliques, over the field `F`.
///
/// Brackets between basis elements (weights default to 1):
///
/// * `[e_i, e_j] = e_i^e_j` for an edge `i < j`
/// * `[e_a, e_t] = w_a e_a` for a vertex `a` in the clique `t`
/// * `[e_a^e_b, e_t] = (sum of w_s over s in {a,b} ∩ t) e_a^e_b`
///
/// Everything else is zero. Each unordered pair is stored once.
#[derive(Clone, Debug)]
pub struct GraphLieAlgebra<F: Field> {
    graph: Graph,
    cliques: CliqueSet,
    decomposition: GraphDecomposition,
    tag: F::Tag,
    weights: Vec<F>,
    unit_weights: bool,
    basis: Vec<BasisElement>,
    table: BTreeMap<(usize, usize), SparseVec<F>>,
    partners: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub holds: bool,
    /// First basis triple `(a, b, c)`, `a < b < c`, where the identity fails.
    pub witness: Option<(usize, usize, usize)>,
    pub triples_checked: usize,
}

impl<F: Field> GraphLieAlgebra<F> {
    /// Builds the algebra using the graph's own weights (1 when absent).
    pub fn build(g: &Graph, k: usize, tag: &F::Tag) -> Result<Self> {
        let weights = g
            .weights_or_unit()
            .iter()
            .enumerate()
            .map(|(v, w)| {
                F::from_rational(tag, w).ok_or_else(|| {
                    Error::Weights(format!(
                        "weight of vertex {} is undefined in {}",
                        v + 1,
                        F::field_name(tag)
                    ))
                })
            })
            .collect::<Result<Vec<F>>>()?;
        Self::build_with_weights(g, k, tag, weights)
    }

    /// Like [`GraphLieAlgebra::build`] but refuses zero weights.
    pub fn build_strict(g: &Graph, k: usize, tag: &F::Tag) -> Result<Self> {
        let alg = Self::build(g, k, tag)?;
        if let Some(v) = alg.weights.iter().position(Field::is_zero) {
            return Err(Error::Weights(format!("vertex {} has weight 0", v + 1)));
        }
        Ok(alg)
    }

    pub fn build_with_weights(g: &Graph, k: usize, tag: &F::Tag, weights: Vec<F>) -> Result<Self> {
        if weights.len() != g.n() {
            return Err(Error::Weights(format!(
                "expected {} weights, got {}",
                g.n(),
                weights.len()
            )));
        }
        let cliques = enumerate_k_cliques(g, k)?;
        let decomposition = decompose(g, &cliques);
        let (n, m) = (g.n(), g.edge_count());
        let one = F::one(tag);
        let unit_weights = weights.iter().all(|w| *w == one);

        let mut basis: Vec<BasisElement> = (0..n).map(BasisElement::Vertex).collect();
        basis.extend(g.edges().iter().map(|&(i, j)| BasisElement::Edge(i, j)));
        basis.extend(cliques.cliques().iter().cloned().map(BasisElement::Clique));

        let mut table = BTreeMap::new();
        for (e, _) in g.edges().iter().enumerate() {
            let (i, j) = g.edges()[e];
            table.insert((i, j), vec![(n + e, one.clone())]);
        }
        for (ti, t) in cliques.cliques().iter().enumerate() {
            let u = n + m + ti;
            for &a in t {
                if !weights[a].is_zero() {
                    table.insert((a, u), vec![(a, weights[a].clone())]);
                }
            }
            for (e, &(a, b)) in g.edges().iter().enumerate() {
                let (ina, inb) = (t.contains(&a), t.contains(&b));
                if !ina && !inb {
                    continue;
                }
                let mut s = F::zero(tag);
                if ina {
                    s.add_assign(&weights[a]);
                }
                if inb {
                    s.add_assign(&weights[b]);
                }
                if !s.is_zero() {
                    table.insert((n + e, u), vec![(n + e, s)]);
                }
            }
        }

        let mut alg = GraphLieAlgebra {
            graph: g.clone(),
            cliques,
            decomposition,
            tag: tag.clone(),
            weights,
            unit_weights,
            basis,
            table,
            partners: Vec::new(),
        };
        alg.rebuild_partners();
        Ok(alg)
    }

    fn rebuild_partners(&mut self) {
        let mut partners = vec![Vec::new(); self.basis.len()];
        for &(a, b) in self.table.keys() {
            partners[a].push(b);
            partners[b].push(a);
        }
        for p in &mut partners {
            p.sort_unstable();
        }
        self.partners = partners;
    }

    /// Overwrites the coefficient of `e_c` in `[e_a, e_b]`. The result is
    /// in general not a Lie algebra; this exists to exercise the checkers.
    pub fn with_structure_constant(mut self, a: usize, b: usize, c: usize, value: F) -> Self {
        assert!(a != b, "[x, x] is always zero");
        let (key, v) = if a < b { ((a, b), value) } else { ((b, a), value.neg()) };
        let entry = self.table.entry(key).or_default();
        entry.retain(|(i, _)| *i != c);
        if !v.is_zero() {
            entry.push((c, v));
            entry.sort_by_key(|(i, _)| *i);
        }
        if entry.is_empty() {
            self.table.remove(&key);
        }
        self.rebuild_partners();
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.cliques.k()
    }

    pub fn cliques(&self) -> &CliqueSet {
        &self.cliques
    }

    pub fn decomposition(&self) -> &GraphDecomposition {
        &self.decomposition
    }

    pub fn tag(&self) -> &F::Tag {
        &self.tag
    }

    pub fn weights(&self) -> &[F] {
        &self.weights
    }

    pub fn has_unit_weights(&self) -> bool {
        self.unit_weights
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(dim V, dim W, dim U)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.graph.n(), self.graph.edge_count(), self.cliques.len())
    }

    pub fn vertex_index(&self, v: usize) -> usize {
        v
    }

    pub fn edge_basis_index(&self, a: usize, b: usize) -> Option<usize> {
        self.graph.edge_index(a, b).map(|e| self.graph.n() + e)
    }

    pub fn clique_basis_index(&self, t: &[usize]) -> Option<usize> {
        let (n, m, _) = self.dims();
        self.cliques.index_of(t).map(|i| n + m + i)
    }

    /// Range of clique basis indices.
    pub fn clique_range(&self) -> std::ops::Range<usize> {
        let (n, m, c) = self.dims();
        n + m..n + m + c
    }

    pub fn index_of(&self, e: &BasisElement) -> Option<usize> {
        match e {
            BasisElement::Vertex(v) => (*v < self.graph.n()).then_some(*v),
            BasisElement::Edge(a, b) => self.edge_basis_index(*a, *b),
            BasisElement::Clique(t) => self.clique_basis_index(t),
        }
    }

    pub fn zero_element(&self) -> Vec<F> {
        vec![F::zero(&self.tag); self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vec<F> {
        let mut v = self.zero_element();
        v[i] = F::one(&self.tag);
        v
    }

    /// Basis elements `b` with `[e_a, e_b] != 0`.
    pub fn partners(&self, a: usize) -> &[usize] {
        &self.partners[a]
    }

    /// Number of stored (unordered) nonzero brackets.
    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    /// `[e_a, e_b]` as a sparse vector.
    pub fn basis_bracket(&self, a: usize, b: usize) -> SparseVec<F> {
        if a < b {
            self.table.get(&(a, b)).cloned().unwrap_or_default()
        } else if a > b {
            self.table
                .get(&(b, a))
                .map(|v| v.iter().map(|(i, x)| (*i, x.neg())).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        }
    }

    /// Adds `scale * [e_a, e_b]` into the dense vector `out`.
    pub(crate) fn add_basis_bracket(&self, out: &mut [F], scale: &F, a: usize, b: usize) {
        if a == b || scale.is_zero() {
            return;
        }
        let (key, flip) = if a < b { ((a, b), false) } else { ((b, a), true) };
        if let Some(entries) = self.table.get(&key) {
            for (c, v) in entries {
                if flip {
                    out[*c].add_mul_assign(&scale.neg(), v);
                } else {
                    out[*c].add_mul_assign(scale, v);
                }
            }
        }
    }

    fn check_len(&self, x: &[F]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "element of length {} in an algebra of dimension {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Bilinear extension of the structure table.
    pub fn bracket(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = self.zero_element();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for &b in &self.partners[a] {
                if y[b].is_zero() {
                    continue;
                }
                self.add_basis_bracket(&mut out, &xa.mul(&y[b]), a, b);
            }
        }
        Ok(out)
    }

    /// `[x, e_b]` for every basis element at once, as the matrix of `ad_x`
    /// (column `b` is the image of `e_b`).
    pub fn adjoint_matrix(&self, x: &[F]) -> Result<Matrix<F>> {
        self.check_len(x)?;
        let d = self.dim();
        let mut m: Matrix<F> = Matrix::zeros(d, d, &self.tag);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for &b in &self.partners[a] {
                for (c, v) in self.basis_bracket(a, b) {
                    m.get_mut(c, b).add_mul_assign(xa, &v);
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, a: usize) -> Matrix<F> {
        self.adjoint_matrix(&self.unit(a)).expect("unit vector has the right length")
    }

    /// `[e_a, v]` for a sparse `v`.
    fn bracket_basis_sparse(&self, a: usize, v: &BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        let mut out: BTreeMap<usize, F> = BTreeMap::new();
        for (e, ve) in v {
            for (c, x) in self.basis_bracket(a, *e) {
                let entry = out.entry(c).or_insert_with(|| F::zero(&self.tag));
                entry.add_mul_assign(ve, &x);
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    /// Exhaustive check of `[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0` over basis
    /// triples `a < b < c`.
    pub fn verify_jacobi(&self) -> JacobiReport {
        let d = self.dim();
        let as_map = |v: SparseVec<F>| -> BTreeMap<usize, F> { v.into_iter().collect() };
        let mut checked = 0;
        for a in 0..d {
            for b in a + 1..d {
                let ab = as_map(self.basis_bracket(a, b));
                for c in b + 1..d {
                    let bc = as_map(self.basis_bracket(b, c));
                    let ca = as_map(self.basis_bracket(c, a));
                    if ab.is_empty() && bc.is_empty() && ca.is_empty() {
                        continue;
                    }
                    checked += 1;
                    let mut sum = self.bracket_basis_sparse(a, &bc);
                    for (i, x) in self
                        .bracket_basis_sparse(b, &ca)
                        .into_iter()
                        .chain(self.bracket_basis_sparse(c, &ab))
                    {
                        sum.entry(i).or_insert_with(|| F::zero(&self.tag)).add_assign(&x);
                    }
                    if sum.values().any(|x| !x.is_zero()) {
                        return JacobiReport {
                            holds: false,
                            witness: Some((a, b, c)),
                            triples_checked: checked,
                        };
                    }
                }
            }
        }
        JacobiReport {
            holds: true,
            witness: None,
            triples_checked: checked,
        }
    }

    /// Antisymmetry of the synthesized table, `[e_a, e_b] = -[e_b, e_a]`.
    pub fn verify_antisymmetry(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| {
            self.basis_bracket(a, a).is_empty()
                && self.partners[a].iter().all(|&b| {
                    let ab = self.basis_bracket(a, b);
                    let ba = self.basis_bracket(b, a);
                    ab.len() == ba.len()
                        && ab
                            .iter()
                            .zip(&ba)
                            .all(|((i, x), (j, y))| i == j && x.add(y).is_zero())
                })
        })
    }

    /// Vertex-by-clique 0/1 incidence matrix `A`.
    pub fn clique_incidence_matrix(&self) -> Matrix<F> {
        let n = self.graph.n();
        let mut a = Matrix::zeros(n, self.cliques.len(), &self.tag);
        for (j, t) in self.cliques.cliques().iter().enumerate() {
            for &v in t {
                a.set(v, j, F::one(&self.tag));
            }
        }
        a
    }

    pub fn vertex_space(&self) -> Subspace<F> {
        Subspace::coordinate(self.dim(), &self.tag, 0..self.graph.n())
    }

    pub fn edge_space(&self) -> Subspace<F> {
        let (n, m, _) = self.dims();
        Subspace::coordinate(self.dim(), &self.tag, n..n + m)
    }

    pub fn clique_space(&self) -> Subspace<F> {
        Subspace::coordinate(self.dim(), &self.tag, self.clique_range())
    }

    pub fn full_space(&self) -> Subspace<F> {
        Subspace::full(self.dim(), &self.tag)
    }

    /// Renders a sparse element such as `e123 - e134`.
    pub fn render_element(&self, x: &[F]) -> String {
        let one = F::one(&self.tag);
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if *c == one {
                    self.basis[i].to_string()
                } else if *c == one.neg() {
                    format!("-{}", self.basis[i])
                } else {
                    format!("{}*{}", c.render(), self.basis[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}
