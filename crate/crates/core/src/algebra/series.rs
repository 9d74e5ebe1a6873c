use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Subspace;

use super::GraphLieAlgebra;

/// Outcome of comparing the computed series with their closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCheck {
    /// `g' = span(V_delta) ⊕ W`
    pub derived_1: bool,
    /// `g^(2) = span(E_delta)`
    pub derived_2: bool,
    /// `g^(3) = 0`
    pub derived_3: bool,
    /// `g^k = span(V_delta) ⊕ span(E_delta ∪ E_delta_gamma)` for `k = 2, 3`
    pub lower_central: bool,
    /// `[g, g] ⊆ V ⊕ W ⊕ ker A` and `[U, U] = 0`
    pub abelian_extension: bool,
}

impl SeriesCheck {
    pub fn holds(&self) -> bool {
        self.derived_1 && self.derived_2 && self.derived_3 && self.lower_central && self.abelian_extension
    }
}

fn sparse<F: Field>(v: &[F]) -> Vec<(usize, &F)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

impl<F: Field> GraphLieAlgebra<F> {
    /// `span{[x, y] : x in a, y in b}`.
    pub fn bracket_span(&self, a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
        if a.ambient() != self.dim() || b.ambient() != self.dim() {
            return Err(Error::Dimension("subspace of a different algebra".into()));
        }
        let av = a.vectors();
        let bv = b.vectors();
        let bs: Vec<Vec<(usize, &F)>> = bv.iter().map(|v| sparse(v)).collect();
        let mut out = Vec::new();
        for x in &av {
            let xs = sparse(x);
            for ys in &bs {
                let mut z = self.zero_element();
                let mut nonzero = false;
                for &(i, xi) in &xs {
                    for &(j, yj) in ys {
                        if self.partners(i).binary_search(&j).is_ok() {
                            self.add_basis_bracket(&mut z, &xi.mul(yj), i, j);
                            nonzero = true;
                        }
                    }
                }
                if nonzero && z.iter().any(|c| !c.is_zero()) {
                    out.push(z);
                }
            }
        }
        Ok(Subspace::from_vectors(self.dim(), self.tag(), out))
    }

    /// `g^(1) = g'`, `g^(2)`, ... up to the first term equal to its successor.
    pub fn derived_series(&self) -> Vec<Subspace<F>> {
        let full = self.full_space();
        let mut out = vec![self.bracket_span(&full, &full).expect("same algebra")];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_span(last, last).expect("same algebra");
            if &next == last {
                return out;
            }
            out.push(next);
        }
    }

    /// `g^1 = g'`, `g^2 = [g, g^1]`, ... up to the first term equal to its
    /// successor.
    pub fn lower_central_series(&self) -> Vec<Subspace<F>> {
        let full = self.full_space();
        let mut out = vec![self.bracket_span(&full, &full).expect("same algebra")];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_span(&full, last).expect("same algebra");
            if &next == last {
                return out;
            }
            out.push(next);
        }
    }

    /// `g` is nilpotent iff its lower central series reaches 0.
    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    /// Closed-form subspaces from the vertex/edge decomposition:
    /// `(g', g^(2), g^k for k >= 2)`.
    pub fn series_closed_forms(&self) -> (Subspace<F>, Subspace<F>, Subspace<F>) {
        let dec = self.decomposition();
        let d = self.dim();
        let tag = self.tag();
        let edge = |&(a, b): &(usize, usize)| self.edge_basis_index(a, b).expect("edge");
        let all_edges = dec
            .e_delta
            .iter()
            .chain(&dec.e_gamma)
            .chain(&dec.e_delta_gamma)
            .map(edge);
        let first = Subspace::coordinate(d, tag, dec.v_delta.iter().copied().chain(all_edges));
        let second = Subspace::coordinate(d, tag, dec.e_delta.iter().map(edge));
        let lower = Subspace::coordinate(
            d,
            tag,
            dec.v_delta
                .iter()
                .copied()
                .chain(dec.e_delta.iter().chain(&dec.e_delta_gamma).map(edge)),
        );
        (first, second, lower)
    }

    /// Compares the computed series with the closed forms. Needs nonzero
    /// weights.
    pub fn verify_series_closed_form(&self) -> Result<SeriesCheck> {
        if let Some(v) = self.weights().iter().position(Field::is_zero) {
            return Err(Error::Weights(format!("vertex {} has weight 0", v + 1)));
        }
        let (first, second, lower) = self.series_closed_forms();
        let zero = Subspace::zero(self.dim(), self.tag());
        let full = self.full_space();

        let d1 = self.bracket_span(&full, &full)?;
        let d2 = self.bracket_span(&d1, &d1)?;
        let d3 = self.bracket_span(&d2, &d2)?;
        let l2 = self.bracket_span(&full, &d1)?;
        let l3 = self.bracket_span(&full, &l2)?;

        let nr = self.nilradical_parts();
        let cliques = self.clique_space();
        let abelian_extension =
            d1.is_subspace_of(&nr) && self.bracket_span(&cliques, &cliques)?.is_zero();

        Ok(SeriesCheck {
            derived_1: d1 == first,
            derived_2: d2 == second,
            derived_3: d3 == zero,
            lower_central: l2 == lower && l3 == lower,
            abelian_extension,
        })
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

    fn dims(s: &[Subspace<Rational>]) -> Vec<usize> {
        s.iter().map(Subspace::dim).collect()
    }

    #[test]
    fn triangle_series() {
        let a = build(&generate(&Family::Complete(3), 0).unwrap());
        assert_eq!(dims(&a.derived_series()), vec![6, 3, 0]);
        assert_eq!(dims(&a.lower_central_series()), vec![6]);
        assert!(a.verify_series_closed_form().unwrap().holds());
        assert!(!a.is_nilpotent());
    }

    #[test]
    fn pendant_keeps_mixed_edge() {
        let g = Graph::from_labels(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let a = build(&g);
        let (_, _, lower) = a.series_closed_forms();
        let e34 = a.edge_basis_index(2, 3).unwrap();
        assert!(lower.contains(&a.unit(e34)));
        assert!(a.verify_series_closed_form().unwrap().holds());
    }

    #[test]
    fn path_is_nilpotent() {
        let a = build(&generate(&Family::Path(3), 0).unwrap());
        assert_eq!(dims(&a.lower_central_series()), vec![2, 0]);
        assert!(a.is_nilpotent());
        assert!(a.verify_series_closed_form().unwrap().holds());
    }

    #[test]
    fn edgeless_is_abelian() {
        let a = build(&Graph::new(3, []).unwrap());
        assert_eq!(dims(&a.derived_series()), vec![0]);
    }
}
