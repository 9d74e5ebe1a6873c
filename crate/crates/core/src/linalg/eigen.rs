use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: Matrix<f64>,
    pub sweeps: usize,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations. Converges when the off-diagonal Frobenius norm
/// drops below `1e-12 * ||m||_F`.
pub fn sym_eigen(m: &Matrix<f64>, tol: f64) -> Result<SymEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let norm = m.frobenius_norm();
    for i in 0..n {
        for j in 0..i {
            if (m.get(i, j) - m.get(j, i)).abs() > tol * norm.max(1.0) {
                return Err(Error::NotSymmetric { tol });
            }
        }
    }
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| 0.5 * (m.get(i, j) + m.get(j, i))).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let threshold = 1e-12 * norm;
    let off = |a: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && off(&a) > threshold {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let mut vectors = Matrix::zeros(n, n, &());
    for (col, &i) in order.iter().enumerate() {
        for (r, row) in v.iter().enumerate() {
            vectors.set(r, col, row[i]);
        }
    }
    Ok(SymEigen {
        values,
        vectors,
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn diagonal_input() {
        let m = Matrix::diagonal(&(), &[0.0, -1.0, -2.0]);
        let e = sym_eigen(&m, 1e-12).unwrap();
        assert_eq!(e.values, vec![-2.0, -1.0, 0.0]);
    }

    #[test]
    fn swap_matrix() {
        let m = Matrix::from_f64_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = sym_eigen(&m, 1e-12).unwrap();
        assert!(close(&e.values, &[-1.0, 1.0], 1e-14));
    }

    #[test]
    fn rejects_asymmetric() {
        let m = Matrix::from_f64_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(sym_eigen(&m, 1e-9), Err(Error::NotSymmetric { .. })));
    }

    /// Roots of the characteristic polynomial, found as eigenvalues of its
    /// companion matrix (general nonsymmetric solver).
    fn charpoly_roots(m: &[Vec<f64>]) -> Vec<f64> {
        let n = m.len();
        // Faddeev-LeVerrier: coefficients c_k of x^n + c_1 x^{n-1} + ... + c_n
        let a = DMatrix::from_fn(n, n, |i, j| m[i][j]);
        let mut mk = DMatrix::<f64>::zeros(n, n);
        let id = DMatrix::<f64>::identity(n, n);
        let mut coeffs = vec![1.0];
        for k in 1..=n {
            mk = &a * &mk + &id * coeffs[k - 1];
            let ck = -(&a * &mk).trace() / k as f64;
            coeffs.push(ck);
        }
        let mut comp = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            comp[(i, n - 1)] = -coeffs[n - i];
        }
        let mut roots: Vec<f64> = comp.complex_eigenvalues().iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        roots
    }

    #[test]
    fn random_symmetric_against_companion_oracle() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(11);
        for _ in 0..10 {
            let n = 5;
            let mut m = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let x: f64 = rng.random_range(-2.0..2.0);
                    m[i][j] = x;
                    m[j][i] = x;
                }
            }
            let mat = Matrix::from_f64_rows(&m).unwrap();
            let e = sym_eigen(&mat, 1e-12).unwrap();
            assert!(close(&e.values, &charpoly_roots(&m), 1e-8), "{:?}", e.values);

            // reconstruction V diag V^T
            let lambda = Matrix::diagonal(&(), &e.values);
            let recon = e
                .vectors
                .mul(&lambda)
                .unwrap()
                .mul(&e.vectors.transpose())
                .unwrap();
            let err = recon.sub(&mat).unwrap().frobenius_norm();
            assert!(err <= 1e-9 * mat.frobenius_norm());
            let gram = e.vectors.transpose().mul(&e.vectors).unwrap();
            let id = Matrix::identity(n, &());
            assert!(gram.sub(&id).unwrap().frobenius_norm() < 1e-12);
        }
    }
}
