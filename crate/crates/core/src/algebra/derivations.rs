use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, SparseSystem, Subspace};

use super::GraphLieAlgebra;

/// Basis of the derivation algebra, each element a `d x d` matrix whose
/// column `j` is the image of `e_j`. Flattened index of entry `(i, j)` is
/// `i * d + j`.
#[derive(Clone, Debug)]
pub struct DerivationSpace<F: Field> {
    d: usize,
    tag: F::Tag,
    basis: Vec<Vec<(usize, F)>>,
}

impl<F: Field> DerivationSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.d
    }

    pub fn matrices(&self) -> Vec<Matrix<F>> {
        self.basis
            .iter()
            .map(|entries| {
                let mut m = Matrix::zeros(self.d, self.d, &self.tag);
                for (idx, v) in entries {
                    m.set(idx / self.d, idx % self.d, v.clone());
                }
                m
            })
            .collect()
    }

    /// The space as a subspace of `F^(d*d)`.
    pub fn subspace(&self) -> Subspace<F> {
        let dd = self.d * self.d;
        Subspace::from_vectors(
            dd,
            &self.tag,
            self.basis.iter().map(|entries| {
                let mut v = vec![F::zero(&self.tag); dd];
                for (i, x) in entries {
                    v[*i] = x.clone();
                }
                v
            }),
        )
    }
}

/// `deg` in the `Z^n` grading: vertex `i` has `eps_i`, edge `(i, j)` has
/// `eps_i + eps_j`, cliques have 0. Brackets are homogeneous.
fn grading<F: Field>(alg: &GraphLieAlgebra<F>) -> Vec<Vec<i32>> {
    use super::BasisElement::*;
    let n = alg.graph().n();
    alg.basis()
        .iter()
        .map(|b| {
            let mut deg = vec![0; n];
            match b {
                Vertex(i) => deg[*i] = 1,
                Edge(i, j) => {
                    deg[*i] = 1;
                    deg[*j] = 1;
                }
                Clique(_) => {}
            }
            deg
        })
        .collect()
}

impl<F: Field> GraphLieAlgebra<F> {
    /// All `D` with `D[x, y] = [Dx, y] + [x, Dy]`.
    ///
    /// The Leibniz system is homogeneous for the vertex grading, so
    /// unknowns split into independent blocks by degree; each block is
    /// eliminated on its own.
    pub fn derivation_space(&self) -> DerivationSpace<F> {
        let d = self.dim();
        let tag = self.tag().clone();
        let deg = grading(self);
        let weight = |i: usize, j: usize| -> Vec<i32> {
            deg[i].iter().zip(&deg[j]).map(|(a, b)| a - b).collect()
        };

        // into[b][c] = [(i, v)]: [e_i, e_b] has coefficient v on e_c
        let mut into: Vec<BTreeMap<usize, Vec<(usize, F)>>> = vec![BTreeMap::new(); d];
        for b in 0..d {
            for &i in self.partners(b) {
                for (c, v) in self.basis_bracket(i, b) {
                    into[b].entry(c).or_default().push((i, v));
                }
            }
        }

        // group unknowns by weight
        let mut blocks: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
        for i in 0..d {
            for j in 0..d {
                blocks.entry(weight(i, j)).or_default().push(i * d + j);
            }
        }
        let mut local: Vec<usize> = vec![0; d * d];
        for cols in blocks.values() {
            for (k, &c) in cols.iter().enumerate() {
                local[c] = k;
            }
        }
        let mut systems: BTreeMap<Vec<i32>, SparseSystem<F>> = blocks
            .iter()
            .map(|(w, cols)| (w.clone(), SparseSystem::new(cols.len(), &tag)))
            .collect();

        // equation (a, b, c):
        // sum_e C_ab^e D_ce - sum_i D_ia C_ib^c - sum_i D_ib C_ai^c = 0
        for a in 0..d {
            for b in a + 1..d {
                let ab = self.basis_bracket(a, b);
                let mut targets: Vec<usize> = if ab.is_empty() {
                    into[a].keys().chain(into[b].keys()).copied().collect()
                } else {
                    (0..d).collect()
                };
                targets.sort_unstable();
                targets.dedup();
                for c in targets {
                    let mut terms: Vec<(usize, F)> = Vec::new();
                    for (e, v) in &ab {
                        terms.push((c * d + e, v.clone()));
                    }
                    if let Some(list) = into[b].get(&c) {
                        for (i, v) in list {
                            terms.push((i * d + a, v.neg()));
                        }
                    }
                    // C_ai^c = -C_ia^c
                    if let Some(list) = into[a].get(&c) {
                        for (i, v) in list {
                            terms.push((i * d + b, v.clone()));
                        }
                    }
                    if terms.is_empty() {
                        continue;
                    }
                    let w = weight(terms[0].0 / d, terms[0].0 % d);
                    debug_assert!(terms.iter().all(|(x, _)| weight(x / d, x % d) == w));
                    let sys = systems.get_mut(&w).expect("block exists");
                    sys.add_equation(terms.into_iter().map(|(x, v)| (local[x], v)));
                }
            }
        }

        let mut basis = Vec::new();
        for (w, sys) in &systems {
            let cols = &blocks[w];
            for v in sys.kernel().vectors() {
                let entries: Vec<(usize, F)> = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (cols[k], x))
                    .collect();
                basis.push(entries);
            }
        }
        basis.sort_by(|x, y| x.iter().map(|p| p.0).cmp(y.iter().map(|p| p.0)));
        DerivationSpace { d, tag, basis }
    }

    /// First basis pair `(a, b)` where `D` breaks the Leibniz rule.
    pub fn leibniz_violation(&self, m: &Matrix<F>) -> Result<Option<(usize, usize)>> {
        let d = self.dim();
        if m.rows() != d || m.cols() != d {
            return Err(Error::Dimension(format!("{}x{} map on a {d}-dimensional algebra", m.rows(), m.cols())));
        }
        let images: Vec<Vec<F>> = (0..d).map(|j| m.column(j)).collect();
        for a in 0..d {
            for b in a + 1..d {
                let lhs = m.mul_vec(&self.bracket(&self.unit(a), &self.unit(b))?)?;
                let r1 = self.bracket(&images[a], &self.unit(b))?;
                let r2 = self.bracket(&self.unit(a), &images[b])?;
                let ok = lhs
                    .iter()
                    .zip(r1.iter().zip(&r2))
                    .all(|(l, (x, y))| l.sub(x).sub(y).is_zero());
                if !ok {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_derivation(&self, m: &Matrix<F>) -> Result<bool> {
        Ok(self.leibniz_violation(m)?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::graphs::{generate, Family, Graph};

    type Alg = GraphLieAlgebra<Rational>;

    fn build(g: &Graph) -> Alg {
        GraphLieAlgebra::build(g, 3, &()).unwrap()
    }

    /// Dense Leibniz system over all d^2 unknowns, no grading.
    fn brute_force_dim(a: &Alg) -> usize {
        let d = a.dim();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for x in 0..d {
            for y in 0..d {
                for c in 0..d {
                    let mut row = vec![Rational::default(); d * d];
                    for (e, v) in a.basis_bracket(x, y) {
                        row[c * d + e] += v;
                    }
                    for i in 0..d {
                        for (cc, v) in a.basis_bracket(i, y) {
                            if cc == c {
                                row[i * d + x] -= v;
                            }
                        }
                        for (cc, v) in a.basis_bracket(x, i) {
                            if cc == c {
                                row[i * d + y] -= v;
                            }
                        }
                    }
                    if row.iter().any(|v| *v != Rational::default()) {
                        rows.push(row);
                    }
                }
            }
        }
        let m = Matrix::from_rows(&(), rows).unwrap();
        d * d - m.rank()
    }

    #[test]
    fn triangle_derivations() {
        let a = build(&generate(&Family::Complete(3), 0).unwrap());
        let der = a.derivation_space();
        assert_eq!(der.dim(), brute_force_dim(&a));
        assert_eq!(der.dim(), 15);
        for m in der.matrices() {
            assert!(a.is_derivation(&m).unwrap());
        }
        assert!(!a.is_derivation(&Matrix::identity(7, &())).unwrap());
    }

    #[test]
    fn inner_derivations_belong() {
        let g = Graph::from_labels(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let a = build(&g);
        let der = a.derivation_space();
        assert_eq!(der.dim(), brute_force_dim(&a));
        let space = der.subspace();
        for x in 0..a.dim() {
            let ad = a.ad_basis(x);
            assert!(a.is_derivation(&ad).unwrap());
            assert!(space.contains(ad.data()));
        }
    }

    #[test]
    fn path_derivations_match_brute_force() {
        let a = build(&generate(&Family::Path(3), 0).unwrap());
        assert_eq!(a.derivation_space().dim(), brute_force_dim(&a));
    }
}
