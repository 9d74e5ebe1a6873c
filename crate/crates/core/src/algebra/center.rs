use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{SparseSystem, Subspace};

use super::GraphLieAlgebra;

impl<F: Field> GraphLieAlgebra<F> {
    /// Nonzero vertex weights, and nonzero `w_i + w_j` along every edge.
    pub fn weight_conditions(&self) -> Result<()> {
        let w = self.weights();
        if let Some(v) = w.iter().position(Field::is_zero) {
            return Err(Error::Weights(format!("vertex {} has weight 0", v + 1)));
        }
        if let Some(&(a, b)) = self
            .graph()
            .edges()
            .iter()
            .find(|&&(a, b)| w[a].add(&w[b]).is_zero())
        {
            return Err(Error::Weights(format!(
                "weights of vertices {} and {} sum to 0",
                a + 1,
                b + 1
            )));
        }
        Ok(())
    }

    fn formula_guard(&self) -> Result<()> {
        if F::characteristic(self.tag()) == 2 {
            return Err(Error::CharacteristicTwo);
        }
        self.weight_conditions()
    }

    /// `ker A` inside the clique coordinates `U`.
    pub fn incidence_kernel(&self) -> Subspace<F> {
        self.clique_incidence_matrix().kernel()
    }

    /// `ker A` embedded in the whole algebra.
    pub fn incidence_kernel_in_algebra(&self) -> Subspace<F> {
        let offset = self.clique_range().start;
        let vectors = self.incidence_kernel().vectors().into_iter().map(|k| {
            let mut v = self.zero_element();
            for (i, x) in k.into_iter().enumerate() {
                v[offset + i] = x;
            }
            v
        });
        Subspace::from_vectors(self.dim(), self.tag(), vectors)
    }

    /// Isolated vertices ⊕ edges inside the clique-free part ⊕ `ker A`,
    /// without checking the hypotheses under which this is the center.
    pub fn center_formula_parts(&self) -> Subspace<F> {
        let g = self.graph();
        let dec = self.decomposition();
        let coords = (0..g.n()).filter(|&v| g.is_isolated(v)).chain(
            dec.e_gamma
                .iter()
                .map(|&(a, b)| self.edge_basis_index(a, b).expect("edge")),
        );
        Subspace::coordinate(self.dim(), self.tag(), coords)
            .sum(&self.incidence_kernel_in_algebra())
            .expect("same ambient")
    }

    /// Closed-form center. Refuses in characteristic 2 and when a weight
    /// condition fails; [`GraphLieAlgebra::center_oracle`] always applies.
    pub fn center_formula(&self) -> Result<Subspace<F>> {
        self.formula_guard()?;
        Ok(self.center_formula_parts())
    }

    /// `{l : [l, e_b] = 0 for every basis element e_b}`, solved directly.
    pub fn center_oracle(&self) -> Subspace<F> {
        let d = self.dim();
        let mut sys = SparseSystem::new(d, self.tag());
        // one equation per (b, c): sum_a l_a [e_a, e_b]_c = 0
        for b in 0..d {
            let mut rows: std::collections::BTreeMap<usize, Vec<(usize, F)>> = Default::default();
            for &a in self.partners(b) {
                for (c, v) in self.basis_bracket(a, b) {
                    rows.entry(c).or_default().push((a, v));
                }
            }
            for (_, terms) in rows {
                sys.add_equation(terms);
            }
        }
        sys.kernel()
    }

    /// `V ⊕ W ⊕ ker A`, without hypothesis checks or certification.
    pub fn nilradical_parts(&self) -> Subspace<F> {
        let (n, m, _) = self.dims();
        Subspace::coordinate(self.dim(), self.tag(), 0..n + m)
            .sum(&self.incidence_kernel_in_algebra())
            .expect("same ambient")
    }

    /// Nilradical `V ⊕ W ⊕ ker A`, re-certified as a nilpotent ideal.
    pub fn nilradical(&self) -> Result<Subspace<F>> {
        self.formula_guard()?;
        let nr = self.nilradical_parts();
        if !self.is_ideal(&nr)? {
            return Err(Error::Consistency("V + W + ker A is not an ideal".into()));
        }
        if !self.is_nilpotent_subalgebra(&nr)? {
            return Err(Error::Consistency("V + W + ker A is not nilpotent".into()));
        }
        Ok(nr)
    }

    /// `[g, s] ⊆ s`.
    pub fn is_ideal(&self, s: &Subspace<F>) -> Result<bool> {
        Ok(self.bracket_span(&self.full_space(), s)?.is_subspace_of(s))
    }

    pub fn is_subalgebra(&self, s: &Subspace<F>) -> Result<bool> {
        Ok(self.bracket_span(s, s)?.is_subspace_of(s))
    }

    /// Iterates `s_1 = [s, s]`, `s_{k+1} = [s, s_k]` and reports whether
    /// it reaches 0. A strictly decreasing chain must do so within `dim s`
    /// steps.
    pub fn is_nilpotent_subalgebra(&self, s: &Subspace<F>) -> Result<bool> {
        let mut term = self.bracket_span(s, s)?;
        if !term.is_subspace_of(s) {
            return Ok(false);
        }
        for _ in 0..=s.dim() {
            if term.is_zero() {
                return Ok(true);
            }
            let next = self.bracket_span(s, &term)?;
            if next == term {
                return Ok(false);
            }
            term = next;
        }
        Ok(term.is_zero())
    }

    /// For `z` in `ker A`: whether its clique coefficients sum to zero.
    pub fn trace_identity_check(&self, z: &[F]) -> Result<bool> {
        if z.len() != self.dim() {
            return Err(Error::Dimension("element of another algebra".into()));
        }
        let range = self.clique_range();
        if z[..range.start].iter().any(|x| !x.is_zero()) {
            return Err(Error::NotInKernel);
        }
        let coeffs = &z[range.clone()];
        let image = self.clique_incidence_matrix().mul_vec(coeffs)?;
        if image.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotInKernel);
        }
        let mut sum = F::zero(self.tag());
        for c in coeffs {
            sum.add_assign(c);
        }
        Ok(sum.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Fp, PrimeModulus, Rational};
    use crate::graphs::{generate, Family, Graph};

    type Alg = GraphLieAlgebra<Rational>;

    fn complete(n: usize) -> Alg {
        GraphLieAlgebra::build(&generate(&Family::Complete(n), 0).unwrap(), 3, &()).unwrap()
    }

    fn clique_element(a: &Alg, terms: &[(&[usize], i64)]) -> Vec<Rational> {
        let mut v = a.zero_element();
        for (t, c) in terms {
            let labels: Vec<usize> = t.iter().map(|x| x - 1).collect();
            v[a.clique_basis_index(&labels).unwrap()] = int(*c);
        }
        v
    }

    #[test]
    fn k5_center() {
        let a = complete(5);
        let z = a.center_formula().unwrap();
        assert_eq!(z.dim(), 5);
        assert_eq!(z, a.center_oracle());
        let x = clique_element(&a, &[(&[1, 2, 3], 1), (&[1, 3, 4], -1), (&[1, 4, 5], 1), (&[1, 2, 5], -1)]);
        assert!(z.contains(&x));
        for b in 0..a.dim() {
            assert!(a.bracket(&x, &a.unit(b)).unwrap().iter().all(|c| *c == int(0)));
        }
        assert!(a.trace_identity_check(&x).unwrap());
        assert!(a.trace_identity_check(&a.zero_element()).unwrap());
        assert_eq!(a.trace_identity_check(&a.unit(0)), Err(Error::NotInKernel));
    }

    #[test]
    fn small_complete_graphs_have_trivial_center() {
        for n in [3, 4] {
            let a = complete(n);
            assert!(a.center_formula().unwrap().is_zero());
            assert!(a.center_oracle().is_zero());
        }
    }

    #[test]
    fn isolated_vertex_is_central() {
        let g = Graph::from_labels(4, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let a: Alg = GraphLieAlgebra::build(&g, 3, &()).unwrap();
        let z = a.center_formula().unwrap();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&a.unit(3)));
        assert_eq!(z, a.center_oracle());
    }

    #[test]
    fn edgeless_center_is_everything() {
        let a: Alg = GraphLieAlgebra::build(&Graph::new(3, []).unwrap(), 3, &()).unwrap();
        assert_eq!(a.center_oracle().dim(), 3);
    }

    #[test]
    fn characteristic_two() {
        let f2 = PrimeModulus::new(2).unwrap();
        let g = generate(&Family::Complete(3), 0).unwrap();
        let a: GraphLieAlgebra<Fp> = GraphLieAlgebra::build(&g, 3, &f2).unwrap();
        assert_eq!(a.center_formula(), Err(Error::CharacteristicTwo));
        assert_eq!(a.nilradical(), Err(Error::CharacteristicTwo));
        let oracle = a.center_oracle();
        let formula = a.center_formula_parts();
        assert!(formula.is_subspace_of(&oracle));
        // the three triangle edges become central
        assert_eq!((formula.dim(), oracle.dim()), (0, 3));
        assert_eq!(oracle, a.edge_space());
    }

    #[test]
    fn nilradicals() {
        assert_eq!(complete(3).nilradical().unwrap().dim(), 6);
        assert_eq!(complete(5).nilradical().unwrap().dim(), 20);
        let p3: Alg = GraphLieAlgebra::build(&generate(&Family::Path(3), 0).unwrap(), 3, &()).unwrap();
        assert_eq!(p3.nilradical().unwrap().dim(), 5);
    }

    #[test]
    fn weight_conditions_gate_formulas() {
        let g = generate(&Family::Complete(3), 0).unwrap();
        let w = vec![int(1), int(-1), int(2)];
        let a: Alg = GraphLieAlgebra::build(&g.clone().with_weights(w).unwrap(), 3, &()).unwrap();
        assert!(matches!(a.center_formula(), Err(Error::Weights(_))));
        // the direct computation still answers: e1^e2 is now central
        let e12 = a.edge_basis_index(0, 1).unwrap();
        assert!(a.center_oracle().contains(&a.unit(e12)));
        let z = vec![int(1), int(0), int(2)];
        let b: Alg = GraphLieAlgebra::build(&g.with_weights(z).unwrap(), 3, &()).unwrap();
        assert!(matches!(b.nilradical(), Err(Error::Weights(_))));
    }
}
