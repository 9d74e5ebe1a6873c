use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

use super::{BasisElement, GraphLieAlgebra};

/// Why a vertex permutation does not induce an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsomorphismFailure {
    /// The algebras have different `(dim V, dim W, dim U)` or clique size.
    Shape,
    /// Source edge `(a, b)` maps to a non-edge `(x, y)` of the target.
    MissingEdge { source: (usize, usize), image: (usize, usize) },
    /// Source clique maps to a vertex set that is not a target clique.
    MissingClique { source: Vec<usize>, image: Vec<usize> },
    /// Weight of a vertex differs from the weight of its image.
    Weight { vertex: usize },
    /// `phi[e_a, e_b] != [phi e_a, phi e_b]`.
    Bracket { a: usize, b: usize },
}

impl fmt::Display for IsomorphismFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsomorphismFailure::Shape => write!(f, "algebra dimensions differ"),
            IsomorphismFailure::MissingEdge { source, image } => write!(
                f,
                "edge ({},{}) maps to ({},{}) which is not an edge",
                source.0 + 1,
                source.1 + 1,
                image.0 + 1,
                image.1 + 1
            ),
            IsomorphismFailure::MissingClique { source, image } => {
                let s: Vec<String> = source.iter().map(|v| (v + 1).to_string()).collect();
                let i: Vec<String> = image.iter().map(|v| (v + 1).to_string()).collect();
                write!(f, "clique ({}) maps to ({}) which is not a clique", s.join(","), i.join(","))
            }
            IsomorphismFailure::Weight { vertex } => {
                write!(f, "weight of vertex {} is not preserved", vertex + 1)
            }
            IsomorphismFailure::Bracket { a, b } => {
                write!(f, "bracket of basis elements {a} and {b} not preserved")
            }
        }
    }
}

/// Signed permutation of the basis: `phi(e_i) = sign_i * e_{target_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisMap<F: Field> {
    pub images: Vec<(usize, F)>,
    tag: F::Tag,
}

impl<F: Field> BasisMap<F> {
    pub fn matrix(&self) -> Matrix<F> {
        let d = self.images.len();
        let mut m = Matrix::zeros(d, d, &self.tag);
        for (j, (i, s)) in self.images.iter().enumerate() {
            m.set(*i, j, s.clone());
        }
        m
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(&self.tag); x.len()];
        for (j, xj) in x.iter().enumerate() {
            let (i, s) = &self.images[j];
            out[*i] = xj.mul(s);
        }
        out
    }
}

impl<F: Field> GraphLieAlgebra<F> {
    /// The linear map induced by the vertex permutation `sigma` (vertex `v`
    /// of `self` goes to `sigma[v]` of `target`), verified on every pair of
    /// basis elements. Returns the first failure otherwise.
    pub fn isomorphism_from_permutation(
        &self,
        target: &GraphLieAlgebra<F>,
        sigma: &[usize],
    ) -> Result<std::result::Result<BasisMap<F>, IsomorphismFailure>> {
        let n = self.graph().n();
        if sigma.len() != n {
            return Err(Error::NotBijection(format!(
                "permutation of length {} for {n} vertices",
                sigma.len()
            )));
        }
        let mut seen = vec![false; n];
        for &s in sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::NotBijection(format!("image {} repeated or out of range", s + 1)));
            }
        }
        if self.dims() != target.dims() || self.k() != target.k() {
            return Ok(Err(IsomorphismFailure::Shape));
        }
        let one = F::one(self.tag());
        let mut images = Vec::with_capacity(self.dim());
        for element in self.basis() {
            let image = match element {
                BasisElement::Vertex(v) => (sigma[*v], one.clone()),
                BasisElement::Edge(a, b) => {
                    let (x, y) = (sigma[*a], sigma[*b]);
                    let Some(idx) = target.edge_basis_index(x, y) else {
                        return Ok(Err(IsomorphismFailure::MissingEdge {
                            source: (*a, *b),
                            image: (x, y),
                        }));
                    };
                    (idx, if x < y { one.clone() } else { one.neg() })
                }
                BasisElement::Clique(t) => {
                    let mut mapped: Vec<usize> = t.iter().map(|&v| sigma[v]).collect();
                    mapped.sort_unstable();
                    let Some(idx) = target.clique_basis_index(&mapped) else {
                        return Ok(Err(IsomorphismFailure::MissingClique {
                            source: t.clone(),
                            image: mapped,
                        }));
                    };
                    (idx, one.clone())
                }
            };
            images.push(image);
        }
        if let Some(v) = (0..n).find(|&v| self.weights()[v] != target.weights()[sigma[v]]) {
            return Ok(Err(IsomorphismFailure::Weight { vertex: v }));
        }
        let map = BasisMap {
            images,
            tag: self.tag().clone(),
        };
        if let Some((a, b)) = self.first_unpreserved_bracket(target, &map) {
            return Ok(Err(IsomorphismFailure::Bracket { a, b }));
        }
        Ok(Ok(map))
    }

    fn first_unpreserved_bracket(
        &self,
        target: &GraphLieAlgebra<F>,
        map: &BasisMap<F>,
    ) -> Option<(usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in a + 1..d {
                let mut lhs = self.zero_element();
                for (c, v) in self.basis_bracket(a, b) {
                    let (i, s) = &map.images[c];
                    lhs[*i] = v.mul(s);
                }
                let (ia, sa) = &map.images[a];
                let (ib, sb) = &map.images[b];
                let mut rhs = target.zero_element();
                target.add_basis_bracket(&mut rhs, &sa.mul(sb), *ia, *ib);
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Rational};
    use crate::graphs::{generate, Family};

    type Alg = GraphLieAlgebra<Rational>;

    fn build(f: Family) -> Alg {
        Alg::build(&generate(&f, 0).unwrap(), 3, &()).unwrap()
    }

    #[test]
    fn identity_map() {
        let a = build(Family::Complete(4));
        let phi = a.isomorphism_from_permutation(&a, &[0, 1, 2, 3]).unwrap().unwrap();
        assert_eq!(phi.matrix(), Matrix::identity(a.dim(), &()));
    }

    #[test]
    fn transposition_on_triangle_flips_one_edge() {
        let a = build(Family::Complete(3));
        let phi = a.isomorphism_from_permutation(&a, &[1, 0, 2]).unwrap().unwrap();
        let e12 = a.edge_basis_index(0, 1).unwrap();
        assert_eq!(phi.images[e12], (e12, int(-1)));
        let e13 = a.edge_basis_index(0, 2).unwrap();
        let e23 = a.edge_basis_index(1, 2).unwrap();
        assert_eq!(phi.images[e13], (e23, int(1)));
        // spot check on elements
        let x = a.bracket(&a.unit(0), &a.unit(1)).unwrap();
        assert_eq!(phi.apply(&x), a.bracket(&phi.apply(&a.unit(0)), &phi.apply(&a.unit(1))).unwrap());
    }

    #[test]
    fn path_transposition_fails_on_edge() {
        let a = build(Family::Path(3));
        let failure = a.isomorphism_from_permutation(&a, &[1, 0, 2]).unwrap().unwrap_err();
        assert_eq!(
            failure,
            IsomorphismFailure::MissingEdge {
                source: (1, 2),
                image: (0, 2)
            }
        );
        assert_eq!(failure.to_string(), "edge (2,3) maps to (1,3) which is not an edge");
    }

    #[test]
    fn not_a_bijection() {
        let a = build(Family::Path(3));
        assert!(matches!(
            a.isomorphism_from_permutation(&a, &[0, 0, 1]),
            Err(Error::NotBijection(_))
        ));
    }
}
