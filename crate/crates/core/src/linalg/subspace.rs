use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A linear subspace of `F^ambient`, stored as the nonzero rows of its RREF.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize, tag: &F::Tag) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient, tag),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize, tag: &F::Tag) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient, tag),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient: usize, tag: &F::Tag, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors = indices.into_iter().map(|i| {
            let mut v = vec![F::zero(tag); ambient];
            v[i] = F::one(tag);
            v
        });
        Self::from_vectors(ambient, tag, vectors)
    }

    pub fn from_vectors(
        ambient: usize,
        tag: &F::Tag,
        vectors: impl IntoIterator<Item = Vec<F>>,
    ) -> Self {
        let rows: Vec<Vec<F>> = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        if rows.is_empty() {
            return Self::zero(ambient, tag);
        }
        let m = Matrix::from_rows(tag, rows).expect("equal-length vectors");
        let (r, pivots) = m.rref();
        let kept: Vec<Vec<F>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis: if kept.is_empty() {
                Matrix::zeros(0, ambient, tag)
            } else {
                Matrix::from_rows(tag, kept).expect("rows")
            },
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn tag(&self) -> &F::Tag {
        self.basis.tag()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vectors()
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![F::zero(self.tag()); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                recon[j].add_mul_assign(c, b);
            }
        }
        if recon.iter().zip(v).all(|(a, b)| a.sub(b).is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    fn check_ambient(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        Ok(Self::from_vectors(
            self.ambient,
            self.tag(),
            self.vectors().into_iter().chain(other.vectors()),
        ))
    }

    /// `{v : v = x A = y B}` via the kernel of `[A^T | -B^T]`.
    pub fn intersection(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        let tag = self.tag().clone();
        let (ra, rb) = (self.dim(), other.dim());
        if ra == 0 || rb == 0 {
            return Ok(Self::zero(self.ambient, &tag));
        }
        let mut m = Matrix::zeros(self.ambient, ra + rb, &tag);
        for j in 0..self.ambient {
            for i in 0..ra {
                m.set(j, i, self.basis.get(i, j).clone());
            }
            for i in 0..rb {
                m.set(j, ra + i, other.basis.get(i, j).neg());
            }
        }
        let vectors = m.kernel().vectors().into_iter().map(|coef| {
            let mut v = vec![F::zero(&tag); self.ambient];
            for (i, c) in coef[..ra].iter().enumerate() {
                for (j, b) in self.basis.row(i).iter().enumerate() {
                    v[j].add_mul_assign(c, b);
                }
            }
            v
        });
        Ok(Self::from_vectors(self.ambient, &tag, vectors))
    }

    /// Complement with respect to the standard dot product.
    pub fn orthogonal_complement(&self) -> Subspace<F> {
        if self.is_zero() {
            return Self::full(self.ambient, self.tag());
        }
        self.basis.kernel()
    }

    /// Complement with respect to the bilinear form `x^T G y`.
    pub fn orthogonal_complement_in(&self, gram: &Matrix<F>) -> Result<Subspace<F>> {
        if gram.rows() != self.ambient || gram.cols() != self.ambient {
            return Err(Error::Dimension("form does not match ambient".into()));
        }
        if self.is_zero() {
            return Ok(Self::full(self.ambient, self.tag()));
        }
        Ok(self.basis.mul(gram)?.kernel())
    }

    /// Image under a linear map given by its matrix (acting on column vectors).
    pub fn image(&self, map: &Matrix<F>) -> Result<Subspace<F>> {
        let mut out = Vec::with_capacity(self.dim());
        for v in self.vectors() {
            out.push(map.mul_vec(&v)?);
        }
        Ok(Self::from_vectors(map.rows(), self.tag(), out))
    }
}
