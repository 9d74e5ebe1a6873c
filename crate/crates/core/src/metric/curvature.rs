use crate::error::{Error, Result};
use crate::field::{Field, OrderedField};
use crate::linalg::{sym_eigen, Matrix};

use super::MetricAlgebra;

/// Levi-Civita connection of a left-invariant metric: matrix `N_a` per
/// basis element, column `b` holding `nabla_{f_a} f_b`. Obtained from
/// `2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)`.
pub fn levi_civita<F: OrderedField>(ma: &MetricAlgebra<F>) -> Vec<Matrix<F>> {
    let d = ma.dim();
    let tag = ma.tag();
    let g = ma.metric().gram();
    // low[a][b][c] = g([f_a, f_b], f_c)
    let mut low = vec![F::zero(tag); d * d * d];
    for a in 0..d {
        for b in 0..d {
            for (e, v) in ma.basis_bracket(a, b) {
                for c in 0..d {
                    low[(a * d + b) * d + c].add_mul_assign(v, g.get(*e, c));
                }
            }
        }
    }
    let at = |a: usize, b: usize, c: usize| &low[(a * d + b) * d + c];
    let half = F::from_i64(tag, 2).inv().expect("char 0");
    (0..d)
        .map(|a| {
            let mut lowered: Matrix<F> = Matrix::zeros(d, d, tag);
            for b in 0..d {
                for c in 0..d {
                    let v = at(a, b, c).sub(at(b, c, a)).add(at(c, a, b)).mul(&half);
                    lowered.set(c, b, v);
                }
            }
            ma.metric().inverse().mul(&lowered).expect("dimension")
        })
        .collect()
}

/// Curvature of a left-invariant metric with
/// `R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`.
#[derive(Clone, Debug)]
pub struct CurvatureData<F: Field> {
    d: usize,
    pub connection: Vec<Matrix<F>>,
    /// `g(R(f_a, f_b) f_c, f_e)` at `((a*d + b)*d + c)*d + e`.
    components: Vec<F>,
    pub ricci: Matrix<F>,
    pub ricci_operator: Matrix<F>,
    pub mean_curvature: Vec<F>,
}

impl<F: OrderedField> CurvatureData<F> {
    pub fn compute(ma: &MetricAlgebra<F>) -> Self {
        let d = ma.dim();
        let tag = ma.tag();
        let g = ma.metric().gram();
        let gi = ma.metric().inverse();
        let conn = levi_civita(ma);
        let mut components = vec![F::zero(tag); d * d * d * d];
        for a in 0..d {
            for b in a + 1..d {
                let mut r = conn[a].mul(&conn[b]).and_then(|x| x.sub(&conn[b].mul(&conn[a])?)).expect("dimension");
                for (e, v) in ma.basis_bracket(a, b) {
                    r = r.sub(&conn[*e].scale(v)).expect("dimension");
                }
                let lowered = g.mul(&r).expect("dimension");
                for c in 0..d {
                    for e in 0..d {
                        let v = lowered.get(e, c);
                        if !v.is_zero() {
                            components[((a * d + b) * d + c) * d + e] = v.clone();
                            components[((b * d + a) * d + c) * d + e] = v.neg();
                        }
                    }
                }
            }
        }
        let mut ricci: Matrix<F> = Matrix::zeros(d, d, tag);
        for a in 0..d {
            for b in 0..d {
                let mut s = F::zero(tag);
                for i in 0..d {
                    for j in 0..d {
                        s.add_mul_assign(gi.get(i, j), &components[((a * d + i) * d + j) * d + b]);
                    }
                }
                ricci.set(a, b, s);
            }
        }
        let ricci_operator = ma.ricci_operator(&ricci);
        CurvatureData {
            d,
            connection: conn,
            components,
            ricci,
            ricci_operator,
            mean_curvature: ma.mean_curvature(),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// `g(R(f_a, f_b) f_c, f_e)`.
    pub fn r(&self, a: usize, b: usize, c: usize, e: usize) -> &F {
        let d = self.d;
        &self.components[((a * d + b) * d + c) * d + e]
    }

    /// `g(R(X,Y)Y,X)` by multilinearity.
    pub fn sectional(&self, x: &[F], y: &[F]) -> F {
        let d = self.d;
        let mut s = F::zero(&tag_of(&self.ricci));
        for a in (0..d).filter(|&a| !x[a].is_zero()) {
            for b in (0..d).filter(|&b| !y[b].is_zero()) {
                let xy = x[a].mul(&y[b]);
                for c in (0..d).filter(|&c| !y[c].is_zero()) {
                    let xyy = xy.mul(&y[c]);
                    for e in (0..d).filter(|&e| !x[e].is_zero()) {
                        s.add_mul_assign(&xyy.mul(&x[e]), self.r(a, b, c, e));
                    }
                }
            }
        }
        s
    }

    /// Symmetric bilinear form of the curvature operator on the
    /// lexicographic basis `f_a ^ f_b` (a < b), normalized so that its
    /// diagonal is the sectional curvature `g(R(f_a,f_b)f_b,f_a)`.
    pub fn operator_form(&self) -> Matrix<F> {
        let pairs = lambda2_pairs(self.d);
        let mut m: Matrix<F> = Matrix::zeros(pairs.len(), pairs.len(), &tag_of(&self.ricci));
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, e)) in pairs.iter().enumerate() {
                m.set(i, j, self.r(a, b, e, c).clone());
            }
        }
        m
    }

    /// Largest violation of the pair symmetries and the first Bianchi
    /// identity (zero for exact data).
    pub fn symmetry_defect(&self) -> F {
        let d = self.d;
        let tag = tag_of(&self.ricci);
        let mut worst = F::zero(&tag);
        let mut see = |v: F| {
            let v = v.abs();
            if v > worst {
                worst = v;
            }
        };
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        let r = self.r(a, b, c, e);
                        see(r.add(self.r(b, a, c, e)));
                        see(r.add(self.r(a, b, e, c)));
                        see(r.sub(self.r(c, e, a, b)));
                        see(r.add(self.r(b, c, a, e)).add(self.r(c, a, b, e)));
                    }
                }
            }
        }
        worst
    }
}

fn tag_of<F: Field>(m: &Matrix<F>) -> F::Tag {
    m.tag().clone()
}

/// `(a, b)` with `a < b`, lexicographic.
pub fn lambda2_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).collect()
}

/// Gram matrix of the induced inner product on the lexicographic
/// `Λ²` basis: `g(a^b, c^e) = G_ac G_be - G_ae G_bc`.
pub fn lambda2_gram<F: Field>(g: &Matrix<F>) -> Matrix<F> {
    let pairs = lambda2_pairs(g.rows());
    let mut m = Matrix::zeros(pairs.len(), pairs.len(), g.tag());
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, e)) in pairs.iter().enumerate() {
            m.set(i, j, g.get(a, c).mul(g.get(b, e)).sub(&g.get(a, e).mul(g.get(b, c))));
        }
    }
    m
}

/// `g(R(X,Y)Y,X)` through the closed formula
/// `-3/4 |[X,Y]|^2 - 1/2 g(ad_X^2 Y, Y) - 1/2 g(ad_Y^2 X, X)
///  - g(ad_X^t X, ad_Y^t Y) + 1/4 |ad_X^t Y + ad_Y^t X|^2`,
/// with `^t` the `g`-adjoint.
pub fn sectional_formula<F: OrderedField>(ma: &MetricAlgebra<F>, x: &[F], y: &[F]) -> F {
    let tag = ma.tag();
    let g = ma.metric();
    let adx = ma.ad(x);
    let ady = ma.ad(y);
    let adxt = ma.metric_adjoint(&adx);
    let adyt = ma.metric_adjoint(&ady);
    let mv = |m: &Matrix<F>, v: &[F]| m.mul_vec(v).expect("dimension");
    let xy = ma.bracket(x, y);
    let adx2y = mv(&adx, &mv(&adx, y));
    let ady2x = mv(&ady, &mv(&ady, x));
    let u = mv(&adxt, x);
    let v = mv(&adyt, y);
    let w: Vec<F> = mv(&adxt, y).iter().zip(mv(&adyt, x)).map(|(p, q)| p.add(&q)).collect();
    let frac = |n: i64, den: i64| F::from_i64(tag, n).div(&F::from_i64(tag, den)).expect("char 0");
    frac(-3, 4)
        .mul(&g.inner(&xy, &xy))
        .add(&frac(-1, 2).mul(&g.inner(&adx2y, y)))
        .add(&frac(-1, 2).mul(&g.inner(&ady2x, x)))
        .sub(&g.inner(&u, &v))
        .add(&frac(1, 4).mul(&g.inner(&w, &w)))
}

pub const NONPOSITIVE_TOL: f64 = 1e-9;

/// Eigenvalues of the curvature operator, i.e. of the operator form
/// relative to the `Λ²` inner product.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpectrum {
    /// Ascending.
    pub values: Vec<f64>,
    pub max_eig: f64,
    /// `max_eig <= 1e-9`.
    pub nonpositive: bool,
    /// `max_eig` in `(-1e-9, 1e-9)`.
    pub boundary: bool,
}

/// Eigenvalues (ascending) of the symmetric form `b` relative to the inner
/// product `gamma`, i.e. of `B v = lambda Γ v`, through `Γ = L L^T`.
pub fn generalized_eigenvalues(b: &Matrix<f64>, gamma: &Matrix<f64>) -> Result<Vec<f64>> {
    let n = b.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let reduced = if *gamma == Matrix::identity(n, &()) {
        b.clone()
    } else {
        let gm = nalgebra::DMatrix::from_fn(n, n, |i, j| *gamma.get(i, j));
        let chol = nalgebra::Cholesky::new(gm).ok_or(Error::NotPositiveDefinite)?;
        let l = chol.l();
        let bm = nalgebra::DMatrix::from_fn(n, n, |i, j| *b.get(i, j));
        // L^{-1} B L^{-T}
        let left = l.solve_lower_triangular(&bm).ok_or(Error::NotPositiveDefinite)?;
        let both = l
            .solve_lower_triangular(&left.transpose())
            .ok_or(Error::NotPositiveDefinite)?;
        let rows: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| both[(i, j)]).collect()).collect();
        Matrix::from_f64_rows(&rows)?
    };
    Ok(sym_eigen(&reduced, 1e-9)?.values)
}

/// Spectrum of the curvature operator: the operator form relative to the
/// `Λ²` inner product.
pub fn curvature_operator_spectrum<F: OrderedField>(
    curv: &CurvatureData<F>,
    metric_gram: &Matrix<F>,
) -> Result<OperatorSpectrum> {
    let form = curv.operator_form().convert(&(), Field::to_f64);
    let gamma = lambda2_gram(metric_gram).convert(&(), Field::to_f64);
    let values = generalized_eigenvalues(&form, &gamma)?;
    let max_eig = values.last().copied().unwrap_or(0.0);
    Ok(OperatorSpectrum {
        nonpositive: max_eig <= NONPOSITIVE_TOL,
        boundary: max_eig > -NONPOSITIVE_TOL && max_eig < NONPOSITIVE_TOL,
        max_eig,
        values,
    })
}
