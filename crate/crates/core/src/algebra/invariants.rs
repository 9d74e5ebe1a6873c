use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graphs::every_vertex_in_clique;

use super::GraphLieAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletelySolvableReport {
    pub holds: bool,
    /// Diagonal of `ad_u` on `V ⊕ W` for each clique element `u`.
    pub diagonals: Vec<Vec<String>>,
    /// Whether `g' = V ⊕ W` was required (every vertex in a clique) and held.
    pub derived_is_v_plus_w: Option<bool>,
}

/// Isomorphism-invariant summary of an algebra built from a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub n_isolated: usize,
    pub dim_v: usize,
    pub dim_w: usize,
    pub dim_u: usize,
    pub dim_derived_1: usize,
    pub dim_derived_2: usize,
    pub dim_derived_3: usize,
    pub dim_lower_central_stable: usize,
    pub dim_center: usize,
    pub dim_nilradical: usize,
    pub dim_derivations: usize,
    /// Per clique element: sorted `(eigenvalue, multiplicity)` of its
    /// diagonal adjoint; the list of cliques is sorted too.
    pub clique_spectra: Vec<Vec<(String, usize)>>,
}

impl<F: Field> GraphLieAlgebra<F> {
    /// Each clique adjoint must be diagonal on `V ⊕ W` with entries `0`,
    /// `-w_a` (vertex `a`) or `-(w_a + w_b)` (edge `ab`), and vanish on `U`.
    pub fn completely_solvable_check(&self) -> CompletelySolvableReport {
        let (n, m, _) = self.dims();
        let w = self.weights();
        let zero = F::zero(self.tag());
        let mut holds = true;
        let mut diagonals = Vec::new();
        for u in self.clique_range() {
            let ad = self.ad_basis(u);
            holds &= ad.is_diagonal();
            let diag = ad.diag();
            for (i, x) in diag.iter().enumerate().take(n + m) {
                let allowed = if i < n {
                    vec![zero.clone(), w[i].neg()]
                } else {
                    let (a, b) = self.graph().edges()[i - n];
                    vec![zero.clone(), w[a].neg(), w[b].neg(), w[a].add(&w[b]).neg()]
                };
                holds &= allowed.contains(x);
            }
            holds &= diag[n + m..].iter().all(Field::is_zero);
            diagonals.push(diag[..n + m].iter().map(Field::render).collect());
        }
        let derived_is_v_plus_w = every_vertex_in_clique(self.graph(), self.cliques()).then(|| {
            let full = self.full_space();
            let derived = self.bracket_span(&full, &full).expect("same algebra");
            let vw = self.vertex_space().sum(&self.edge_space()).expect("same algebra");
            derived == vw
        });
        if derived_is_v_plus_w == Some(false) {
            holds = false;
        }
        CompletelySolvableReport {
            holds,
            diagonals,
            derived_is_v_plus_w,
        }
    }

    pub fn fingerprint(&self) -> Result<Fingerprint> {
        if F::characteristic(self.tag()) == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let (dim_v, dim_w, dim_u) = self.dims();
        let full = self.full_space();
        let d1 = self.bracket_span(&full, &full)?;
        let d2 = self.bracket_span(&d1, &d1)?;
        let d3 = self.bracket_span(&d2, &d2)?;
        let lower = self.lower_central_series();
        let mut clique_spectra: Vec<Vec<(String, usize)>> = self
            .clique_range()
            .map(|u| {
                let mut values: Vec<String> = self.ad_basis(u).diag().iter().map(Field::render).collect();
                values.sort();
                let mut counted: Vec<(String, usize)> = Vec::new();
                for v in values {
                    match counted.last_mut() {
                        Some((last, c)) if *last == v => *c += 1,
                        _ => counted.push((v, 1)),
                    }
                }
                counted
            })
            .collect();
        clique_spectra.sort();
        Ok(Fingerprint {
            n_isolated: (0..dim_v).filter(|&v| self.graph().is_isolated(v)).count(),
            dim_v,
            dim_w,
            dim_u,
            dim_derived_1: d1.dim(),
            dim_derived_2: d2.dim(),
            dim_derived_3: d3.dim(),
            dim_lower_central_stable: lower.last().map_or(0, |s| s.dim()),
            dim_center: self.center_oracle().dim(),
            dim_nilradical: self.nilradical_parts().dim(),
            dim_derivations: self.derivation_space().dim(),
            clique_spectra,
        })
    }
}
