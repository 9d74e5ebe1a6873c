use crate::error::{Error, Result};
use crate::field::{Field, OrderedField};
use crate::linalg::Matrix;

/// Symmetric positive-definite Gram matrix of an inner product, with its
/// inverse cached.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricTensor<F: Field> {
    gram: Matrix<F>,
    inverse: Matrix<F>,
    diagonal: bool,
}

impl<F: OrderedField> MetricTensor<F> {
    /// Validates symmetry (exact equality) and positive-definiteness
    /// (positive elimination pivots, i.e. leading principal minors).
    pub fn new(gram: Matrix<F>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric { tol: 0.0 });
        }
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let inverse = gram.inverse().ok_or(Error::NotPositiveDefinite)?;
        let diagonal = gram.is_diagonal();
        Ok(MetricTensor {
            gram,
            inverse,
            diagonal,
        })
    }

    pub fn identity(d: usize, tag: &F::Tag) -> Self {
        MetricTensor {
            gram: Matrix::identity(d, tag),
            inverse: Matrix::identity(d, tag),
            diagonal: true,
        }
    }

    pub fn diagonal(tag: &F::Tag, entries: &[F]) -> Result<Self> {
        Self::new(Matrix::diagonal(tag, entries))
    }

    pub fn to_f64(&self) -> MetricTensor<f64> {
        MetricTensor {
            gram: self.gram.convert(&(), Field::to_f64),
            inverse: self.inverse.convert(&(), Field::to_f64),
            diagonal: self.diagonal,
        }
    }
}

impl<F: Field> MetricTensor<F> {
    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn inverse(&self) -> &Matrix<F> {
        &self.inverse
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// `x^T G y`
    pub fn inner(&self, x: &[F], y: &[F]) -> F {
        let gy = self.gram.mul_vec(y).expect("dimension");
        let mut s = F::zero(self.gram.tag());
        for (a, b) in x.iter().zip(&gy) {
            s.add_mul_assign(a, b);
        }
        s
    }

    /// `G^{-1} v`, the vector dual to the covector `v`.
    pub fn raise(&self, v: &[F]) -> Vec<F> {
        self.inverse.mul_vec(v).expect("dimension")
    }

    /// `G v`
    pub fn lower(&self, v: &[F]) -> Vec<F> {
        self.gram.mul_vec(v).expect("dimension")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat, Rational};

    #[test]
    fn validation() {
        let ok = Matrix::from_rows(&(), vec![vec![int(2), int(1)], vec![int(1), int(2)]]).unwrap();
        let m = MetricTensor::<Rational>::new(ok).unwrap();
        assert!(!m.is_diagonal());
        assert_eq!(m.inverse().get(0, 1), &rat(-1, 3));

        let indefinite = Matrix::from_rows(&(), vec![vec![int(1), int(2)], vec![int(2), int(1)]]).unwrap();
        assert_eq!(MetricTensor::<Rational>::new(indefinite), Err(Error::NotPositiveDefinite));
        let asym = Matrix::from_rows(&(), vec![vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        assert!(matches!(MetricTensor::<Rational>::new(asym), Err(Error::NotSymmetric { .. })));
        assert!(MetricTensor::<Rational>::diagonal(&(), &[int(1), int(0)]).is_err());
    }

    #[test]
    fn inner_products() {
        let m = MetricTensor::<Rational>::diagonal(&(), &[int(2), int(3)]).unwrap();
        assert_eq!(m.inner(&[int(1), int(1)], &[int(1), int(2)]), int(8));
        assert_eq!(m.raise(&[int(2), int(3)]), vec![int(1), int(1)]);
    }
}
