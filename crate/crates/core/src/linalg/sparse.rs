use std::collections::{BTreeMap, HashMap};

use crate::field::Field;
use crate::linalg::Subspace;

/// Incremental sparse Gaussian elimination for homogeneous systems with
/// many unknowns (derivation equations, joint kernels of adjoints).
#[derive(Clone, Debug)]
pub struct SparseSystem<F: Field> {
    cols: usize,
    tag: F::Tag,
    /// pivot column -> row with that leading column, leading entry 1
    pivots: HashMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> SparseSystem<F> {
    pub fn new(cols: usize, tag: &F::Tag) -> Self {
        SparseSystem {
            cols,
            tag: tag.clone(),
            pivots: HashMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds the equation `sum_j coeff_j x_j = 0`. Repeated columns are summed.
    pub fn add_equation(&mut self, terms: impl IntoIterator<Item = (usize, F)>) {
        let mut row: BTreeMap<usize, F> = BTreeMap::new();
        for (c, v) in terms {
            debug_assert!(c < self.cols);
            if v.is_zero() {
                continue;
            }
            let entry = row.entry(c).or_insert_with(|| F::zero(&self.tag));
            entry.add_assign(&v);
            if entry.is_zero() {
                row.remove(&c);
            }
        }
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                return;
            };
            match self.pivots.get(&lead) {
                Some(prow) => {
                    let factor = lead_val.clone();
                    for (c, v) in prow {
                        let entry = row.entry(*c).or_insert_with(|| F::zero(&self.tag));
                        *entry = entry.sub(&factor.mul(v));
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = lead_val.inv().expect("nonzero lead");
                    for v in row.values_mut() {
                        *v = v.mul(&inv);
                    }
                    // Eliminate the remaining non-leading pivot columns lazily later.
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    /// Null space of all equations added so far.
    pub fn kernel(&self) -> Subspace<F> {
        let mut order: Vec<usize> = self.pivots.keys().copied().collect();
        order.sort_unstable();
        // back substitution from the last pivot upwards gives the RREF rows
        let mut reduced: HashMap<usize, BTreeMap<usize, F>> = HashMap::new();
        for &p in order.iter().rev() {
            let mut row = self.pivots[&p].clone();
            let later: Vec<usize> = row
                .keys()
                .copied()
                .filter(|&c| c != p && reduced.contains_key(&c))
                .collect();
            for c in later {
                let Some(factor) = row.get(&c).cloned() else { continue };
                for (cc, v) in &reduced[&c] {
                    let entry = row.entry(*cc).or_insert_with(|| F::zero(&self.tag));
                    *entry = entry.sub(&factor.mul(v));
                    if entry.is_zero() {
                        row.remove(cc);
                    }
                }
            }
            reduced.insert(p, row);
        }
        let mut vectors = Vec::new();
        for f in (0..self.cols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![F::zero(&self.tag); self.cols];
            v[f] = F::one(&self.tag);
            for (&p, row) in &reduced {
                if let Some(x) = row.get(&f) {
                    v[p] = x.neg();
                }
            }
            vectors.push(v);
        }
        Subspace::from_vectors(self.cols, &self.tag, vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::linalg::Matrix;
    use proptest::prelude::*;

    type Q = Rational;

    proptest! {
        #[test]
        fn agrees_with_dense_kernel(
            rows in (1usize..=7, 1usize..=9).prop_flat_map(|(r, c)|
                prop::collection::vec(prop::collection::vec(-2i64..=2, c), r))
        ) {
            let cols = rows[0].len();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let dense: Matrix<Q> = Matrix::from_i64(&(), &refs).unwrap();
            let mut sys = SparseSystem::<Q>::new(cols, &());
            for r in &rows {
                sys.add_equation(r.iter().enumerate().map(|(c, &v)| (c, Q::from_integer(v.into()))));
            }
            prop_assert_eq!(sys.rank(), dense.rank());
            prop_assert_eq!(sys.kernel(), dense.kernel());
        }
    }
}
