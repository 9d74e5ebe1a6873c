use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, OrderedField, Rational};
use crate::linalg::Subspace;

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    tag: F::Tag,
}

/// Exact affine solution set `particular + kernel`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<F: Field> {
    pub particular: Vec<F>,
    pub kernel: Subspace<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, tag: &F::Tag) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(tag); rows * cols],
            tag: tag.clone(),
        }
    }

    pub fn identity(n: usize, tag: &F::Tag) -> Self {
        let mut m = Self::zeros(n, n, tag);
        for i in 0..n {
            m.set(i, i, F::one(tag));
        }
        m
    }

    pub fn from_rows(tag: &F::Tag, rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
            tag: tag.clone(),
        })
    }

    pub fn from_i64(tag: &F::Tag, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            tag,
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(tag, v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(tag: &F::Tag, diag: &[F]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len(), tag);
        for (i, v) in diag.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tag(&self) -> &F::Tag {
        &self.tag
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, &self.tag);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols, &self.tag);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.get_mut(i, j).add_mul_assign(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = F::zero(&self.tag);
                for (a, b) in self.row(r).iter().zip(v) {
                    acc.add_mul_assign(a, b);
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        self.zip_with(rhs, |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        self.zip_with(rhs, |a, b| a.sub(b))
    }

    fn zip_with(&self, rhs: &Matrix<F>, f: impl Fn(&F, &F) -> F) -> Result<Matrix<F>> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
            tag: self.tag.clone(),
        })
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        self.map(|x| x.mul(s))
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            tag: self.tag.clone(),
        }
    }

    /// Entry-wise conversion into another field.
    pub fn convert<G: Field>(&self, tag: &G::Tag, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            tag: tag.clone(),
        }
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero(&self.tag);
        for i in 0..self.rows.min(self.cols) {
            t.add_assign(self.get(i, i));
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diag(&self) -> Vec<F> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Reduced row echelon form and pivot columns. Pivots are chosen by
    /// [`Field::pivot_weight`]; for exact fields this is the first nonzero
    /// entry, and the result is the unique RREF either way.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut best = None;
            let mut best_w = 0.0;
            for i in r..self.rows {
                let w = self.get(i, c).pivot_weight();
                if w > best_w {
                    best_w = w;
                    best = Some(i);
                }
            }
            let Some(p) = best else { continue };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            let pivot_row: Vec<F> = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    if pivot_row[j].is_zero() {
                        continue;
                    }
                    let v = self.get(i, j).sub(&factor.mul(&pivot_row[j]));
                    self.set(i, j, v);
                }
                if !F::EXACT {
                    self.set(i, c, F::zero(&self.tag));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(&self.tag); self.cols];
            v[f] = F::one(&self.tag);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, f).neg();
            }
            vectors.push(v);
        }
        Subspace::from_vectors(self.cols, &self.tag, vectors)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one(&self.tag));
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = F::one(&self.tag);
        for k in 0..n - 1 {
            let mut best = None;
            let mut best_w = 0.0;
            for i in k..n {
                let w = m.get(i, k).pivot_weight();
                if w > best_w {
                    best_w = w;
                    best = Some(i);
                }
            }
            let Some(p) = best else {
                return Ok(F::zero(&self.tag));
            };
            if p != k {
                m.swap_rows(p, k);
                sign_flip = !sign_flip;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot
                        .mul(m.get(i, j))
                        .sub(&m.get(i, k).mul(m.get(k, j)))
                        .div(&prev)
                        .expect("previous pivot is nonzero");
                    m.set(i, j, v);
                }
                m.set(i, k, F::zero(&self.tag));
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign_flip { d.neg() } else { d })
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, &self.tag);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one(&self.tag));
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n, &self.tag);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Solves `M x = b`. `Ok(None)` certifies inconsistency.
    pub fn solve(&self, b: &[F]) -> Result<Option<AffineSolution<F>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1, &self.tag);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut particular = vec![F::zero(&self.tag); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            particular[p] = aug.get(i, self.cols).clone();
        }
        Ok(Some(AffineSolution {
            particular,
            kernel: self.kernel(),
        }))
    }
}

impl<F: OrderedField> Matrix<F> {
    /// Positive definiteness of a symmetric matrix through its leading
    /// principal minors (Sylvester). Exact over ℚ.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        // Gaussian elimination without pivoting: the k-th pivot is the ratio
        // of consecutive leading minors, so all pivots positive <=> all minors positive.
        let n = self.rows;
        let mut m = self.clone();
        for k in 0..n {
            let pivot = m.get(k, k).clone();
            if !pivot.is_positive() {
                return false;
            }
            let inv = pivot.inv().expect("positive pivot");
            for i in k + 1..n {
                let factor = m.get(i, k).mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.get(i, j).sub(&factor.mul(m.get(k, j)));
                    m.set(i, j, v);
                }
            }
        }
        true
    }

    pub fn max_abs(&self) -> F {
        self.data
            .iter()
            .fold(F::zero(&self.tag), |acc, x| {
                let a = x.abs();
                if a > acc {
                    a
                } else {
                    acc
                }
            })
    }
}

impl Matrix<f64> {
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn from_f64_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(&(), rows.to_vec())
    }
}

/// Sparse-triplet JSON form: `{rows, cols, field, entries: [[r, c, "p/q"], ...]}`
/// with 0-based indices and exact string scalars.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub field: String,
    pub entries: Vec<(usize, usize, String)>,
}

impl<F: Field> Matrix<F> {
    pub fn to_json(&self) -> MatrixJson {
        let mut entries = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    entries.push((r, c, v.render()));
                }
            }
        }
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            field: F::field_name(&self.tag),
            entries,
        }
    }
}

impl MatrixJson {
    /// Reads a matrix into any field; entries are parsed as rationals and
    /// mapped into the target field.
    pub fn to_matrix<F: Field>(&self, tag: &F::Tag) -> Result<Matrix<F>> {
        let mut m = Matrix::zeros(self.rows, self.cols, tag);
        for (r, c, s) in &self.entries {
            if *r >= self.rows || *c >= self.cols {
                return Err(Error::Dimension(format!("entry ({r},{c}) out of range")));
            }
            let q: Rational = parse_rational(s)?;
            let v = F::from_rational(tag, &q)
                .ok_or_else(|| Error::InvalidNumber(format!("{s} is undefined in this field")))?;
            m.set(*r, *c, v);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeModulus};
    use proptest::prelude::*;

    type Q = Rational;

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64(&(), rows).unwrap()
    }

    fn hat_a4() -> Matrix<Q> {
        qm(&[&[1, 1, 1, 0], &[1, 1, 0, 1], &[1, 0, 1, 1], &[0, 1, 1, 1]])
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::<Q>::identity(3, &());
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let ones = qm(&[&[1, 1], &[1, 1]]);
        let (r, p) = ones.rref();
        assert_eq!(r, qm(&[&[1, 1], &[0, 0]]));
        assert_eq!(p.len(), 1);
        assert_eq!(hat_a4().rank(), 4);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(hat_a4().det().unwrap(), Q::from_integer((-3).into()));
        assert!(Matrix::<Q>::identity(4, &()).det().unwrap() == Q::one(&()));
        let ones = qm(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert!(ones.det().unwrap().is_zero());
        assert!(matches!(
            qm(&[&[1, 2, 3]]).det(),
            Err(Error::NotSquare { rows: 1, cols: 3 })
        ));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::<Q>::zeros(2, 3, &()).kernel().dim(), 3);
        assert_eq!(qm(&[&[1], &[1], &[1]]).kernel().dim(), 0);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::<Q>::identity(3, &());
        let b: Vec<Q> = [1, -2, 5].iter().map(|&v| Q::from_integer(v.into())).collect();
        let s = id.solve(&b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert_eq!(s.kernel.dim(), 0);

        let col = qm(&[&[1], &[1]]);
        let b = vec![Q::zero(&()), Q::one(&())];
        assert!(col.solve(&b).unwrap().is_none());

        let row = qm(&[&[1, 1]]);
        let s = row.solve(&[Q::one(&())]).unwrap().unwrap();
        assert_eq!(s.kernel.dim(), 1);
        assert_eq!(row.mul_vec(&s.particular).unwrap(), vec![Q::one(&())]);

        assert!(id.solve(&[Q::one(&())]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let a = hat_a4();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(4, &()));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn positive_definite_by_minors() {
        assert!(qm(&[&[2, 1], &[1, 2]]).is_positive_definite());
        assert!(!qm(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert!(!qm(&[&[0, 0], &[0, 1]]).is_positive_definite());
    }

    #[test]
    fn prime_field_rank_differs() {
        // det = -3 vanishes mod 3
        let p3 = PrimeModulus::new(3).unwrap();
        let m: Matrix<Fp> = Matrix::from_i64(
            &p3,
            &[&[1, 1, 1, 0], &[1, 1, 0, 1], &[1, 0, 1, 1], &[0, 1, 1, 1]],
        )
        .unwrap();
        assert!(m.det().unwrap().is_zero());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn json_round_trip() {
        let m = qm(&[&[0, 2], &[-1, 0]]).scale(&"1/3".parse::<Q>().unwrap());
        let j = m.to_json();
        assert_eq!(j.entries, vec![(0, 1, "2/3".into()), (1, 0, "-1/3".into())]);
        assert_eq!(j.to_matrix::<Q>(&()).unwrap(), m);
    }

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    fn int_matrix(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max_n, 1..=max_n).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
        })
    }

    fn to_q(rows: &[Vec<i64>]) -> Matrix<Q> {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        qm(&refs)
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_and_rank_matches_transpose(rows in int_matrix(8)) {
            let m = to_q(&rows);
            let (r, p) = m.rref();
            prop_assert_eq!(r.rref().0, r.clone());
            prop_assert_eq!(p.len(), m.transpose().rank());
        }

        #[test]
        fn kernel_is_certified(rows in int_matrix(8)) {
            let m = to_q(&rows);
            let k = m.kernel();
            prop_assert_eq!(k.dim() + m.rank(), m.cols());
            for v in k.vectors() {
                prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn bareiss_matches_cofactor_expansion(
            rows in (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))
        ) {
            let m = to_q(&rows);
            prop_assert_eq!(m.det().unwrap(), Q::from_integer(cofactor_det(&rows).into()));
        }
    }
}
