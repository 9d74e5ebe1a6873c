use crate::algebra::GraphLieAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, OrderedField};
use crate::graphs::every_vertex_in_clique;
use crate::linalg::{Matrix, Subspace};

use super::{MetricAlgebra, MetricTensor};

/// Outcome of the three Iwasawa-type conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct IwasawaReport<F: Field> {
    /// `a`, the `g`-orthogonal complement of `g'`, is abelian.
    pub a: bool,
    /// Every `ad_B`, `B` in `a`, is `g`-symmetric.
    pub b_symmetric: bool,
    /// `B -> ad_B` is injective on `a`.
    pub b_injective: bool,
    /// The candidate lies in `a` and its adjoint on `g'` is positive definite.
    pub c: bool,
    pub b0_found: bool,
    pub complement_dim: usize,
    /// Diagonal of `ad_{B0}` on the basis of `g'`, when that matrix is diagonal.
    pub b0_diagonal: Option<Vec<F>>,
}

impl<F: Field> IwasawaReport<F> {
    pub fn b(&self) -> bool {
        self.b_symmetric && self.b_injective
    }

    pub fn holds(&self) -> bool {
        self.a && self.b() && self.c
    }
}

impl<F: OrderedField> MetricAlgebra<F> {
    /// `g`-orthogonal complement of the derived algebra.
    pub fn orthogonal_complement_of_derived(&self) -> Subspace<F> {
        self.derived()
            .orthogonal_complement_in(self.metric().gram())
            .expect("dimension")
    }

    fn is_g_symmetric(&self, m: &Matrix<F>) -> bool {
        self.metric().gram().mul(m).expect("dimension").is_symmetric()
    }

    /// Decides (a), (b) and, given a candidate `b0`, (c).
    pub fn iwasawa_check(&self, b0: Option<&[F]>) -> IwasawaReport<F> {
        let derived = self.derived();
        let comp = self.orthogonal_complement_of_derived();
        let a = self.is_abelian(&comp);
        let ads: Vec<Matrix<F>> = comp.vectors().iter().map(|v| self.ad(v)).collect();
        let b_symmetric = ads.iter().all(|m| self.is_g_symmetric(m));
        let b_injective = Subspace::from_vectors(
            self.dim() * self.dim(),
            self.tag(),
            ads.iter().map(|m| m.data().to_vec()),
        )
        .dim()
            == comp.dim();

        let mut c = false;
        let mut b0_diagonal = None;
        if let Some(b0) = b0 {
            if b0.len() == self.dim() && comp.contains(b0) {
                let ad = self.ad(b0);
                let p = derived.basis().transpose();
                let q = p
                    .transpose()
                    .mul(self.metric().gram())
                    .and_then(|x| x.mul(&ad))
                    .and_then(|x| x.mul(&p))
                    .expect("dimension");
                c = q.is_symmetric() && q.is_positive_definite();
                let restricted: Option<Vec<Vec<F>>> = derived
                    .vectors()
                    .iter()
                    .map(|v| derived.coordinates(&ad.mul_vec(v).expect("dimension")))
                    .collect();
                if let Some(cols) = restricted {
                    let k = cols.len();
                    let diagonal = (0..k).all(|j| (0..k).all(|i| i == j || cols[j][i].is_zero()));
                    if diagonal {
                        b0_diagonal = Some((0..k).map(|j| cols[j][j].clone()).collect());
                    }
                }
            }
        }
        IwasawaReport {
            a,
            b_symmetric,
            b_injective,
            c,
            b0_found: b0.is_some(),
            complement_dim: comp.dim(),
            b0_diagonal,
        }
    }

    /// Ricci form assembled from the block formulas on `a ⊕ g'`:
    /// `Ric(B,C) = -tr(ad_B ad_C)`, `Ric(B,X) = 0`,
    /// `Ric(X,Y) = Ric_{g'}(X,Y) - g([H,X],Y)`, with `Ric_{g'}` the Ricci
    /// form of the nilpotent derived algebra and its induced metric.
    /// Requires (a) and the symmetry part of (b).
    pub fn ricci_blocks(&self) -> Result<Matrix<F>> {
        let report = self.iwasawa_check(None);
        if !report.a || !report.b_symmetric {
            return Err(Error::Hypothesis(
                "block formulas need an abelian orthogonal complement with symmetric adjoints".into(),
            ));
        }
        let tag = self.tag();
        let d = self.dim();
        let g = self.metric();
        let a_basis = self.orthogonal_complement_of_derived().vectors();
        let n_basis = self.derived().vectors();
        let h = self.mean_curvature();
        let had = self.ad(&h);

        // Gram of g' and its inverse
        let k = n_basis.len();
        let mut gn: Matrix<F> = Matrix::zeros(k, k, tag);
        for i in 0..k {
            for j in 0..k {
                gn.set(i, j, g.inner(&n_basis[i], &n_basis[j]));
            }
        }
        let gni = if k == 0 { gn.clone() } else { gn.inverse().ok_or(Error::NotPositiveDefinite)? };
        // pairwise brackets inside g'
        let br: Vec<Vec<Vec<F>>> = n_basis
            .iter()
            .map(|x| n_basis.iter().map(|y| self.bracket(x, y)).collect())
            .collect();
        let half = F::from_i64(tag, 2).inv().expect("char 0");
        let quarter = F::from_i64(tag, 4).inv().expect("char 0");
        let nil_ricci = |x: &[F], y: &[F]| -> F {
            let xs: Vec<Vec<F>> = n_basis.iter().map(|p| self.bracket(x, p)).collect();
            let ys: Vec<Vec<F>> = n_basis.iter().map(|p| self.bracket(y, p)).collect();
            let mut t1 = F::zero(tag);
            for i in 0..k {
                for j in 0..k {
                    if !gni.get(i, j).is_zero() {
                        t1.add_mul_assign(gni.get(i, j), &g.inner(&xs[i], &ys[j]));
                    }
                }
            }
            let kx: Vec<Vec<F>> = br.iter().map(|row| row.iter().map(|z| g.inner(z, x)).collect()).collect();
            let ky: Vec<Vec<F>> = br.iter().map(|row| row.iter().map(|z| g.inner(z, y)).collect()).collect();
            let mut t2 = F::zero(tag);
            for i in 0..k {
                for kk in 0..k {
                    if gni.get(i, kk).is_zero() {
                        continue;
                    }
                    for j in 0..k {
                        if kx[i][j].is_zero() {
                            continue;
                        }
                        for l in 0..k {
                            if gni.get(j, l).is_zero() {
                                continue;
                            }
                            t2.add_mul_assign(&gni.get(i, kk).mul(gni.get(j, l)), &kx[i][j].mul(&ky[kk][l]));
                        }
                    }
                }
            }
            t1.mul(&half).neg().add(&t2.mul(&quarter))
        };

        let basis: Vec<Vec<F>> = a_basis.iter().chain(&n_basis).cloned().collect();
        let na = a_basis.len();
        let mut blocks: Matrix<F> = Matrix::zeros(d, d, tag);
        for i in 0..d {
            for j in i..d {
                let v = if i < na && j < na {
                    let prod = self.ad(&basis[i]).mul(&self.ad(&basis[j])).expect("dimension");
                    prod.trace().neg()
                } else if i < na {
                    F::zero(tag)
                } else {
                    let hx = had.mul_vec(&basis[i]).expect("dimension");
                    nil_ricci(&basis[i], &basis[j]).sub(&g.inner(&hx, &basis[j]))
                };
                blocks.set(i, j, v.clone());
                blocks.set(j, i, v);
            }
        }
        // back to the standard basis: Ric = P^{-T} blocks P^{-1}
        let p = Matrix::from_rows(tag, basis)?.transpose();
        let pinv = p.inverse().ok_or_else(|| Error::Consistency("a + g' does not span".into()))?;
        pinv.transpose().mul(&blocks)?.mul(&pinv)
    }

    /// `Ric(X,X) = -1/2 tr(ad_X^2) - 1/2 tr(ad_X ad_X^t)
    ///             + 1/4 sum_{i,j} g([E_i,E_j],X)^2 - g(ad_H X, X)`,
    /// the double sum over ordered pairs of a `g`-orthonormal frame.
    pub fn ricci_scalar_form(&self, x: &[F]) -> F {
        let tag = self.tag();
        let d = self.dim();
        let g = self.metric();
        let gi = g.inverse();
        let adx = self.ad(x);
        let t1 = adx.mul(&adx).expect("dimension").trace();
        let t2 = adx.mul(&self.metric_adjoint(&adx)).expect("dimension").trace();
        let kx: Vec<Vec<F>> = (0..d)
            .map(|i| (0..d).map(|j| g.inner(&self.bracket(&self.unit(i), &self.unit(j)), x)).collect())
            .collect();
        let mut t3 = F::zero(tag);
        for i in 0..d {
            for kk in 0..d {
                if gi.get(i, kk).is_zero() {
                    continue;
                }
                for j in 0..d {
                    if kx[i][j].is_zero() {
                        continue;
                    }
                    for l in 0..d {
                        if gi.get(j, l).is_zero() {
                            continue;
                        }
                        t3.add_mul_assign(&gi.get(i, kk).mul(gi.get(j, l)), &kx[i][j].mul(&kx[kk][l]));
                    }
                }
            }
        }
        let hx = self.ad(&self.mean_curvature()).mul_vec(x).expect("dimension");
        let half = F::from_i64(tag, 2).inv().expect("char 0");
        let quarter = F::from_i64(tag, 4).inv().expect("char 0");
        t1.add(&t2)
            .mul(&half)
            .neg()
            .add(&t3.mul(&quarter))
            .sub(&g.inner(&hx, x))
    }
}

/// `B0 = -(sum of clique elements)` in the graph algebra's coordinates.
pub fn clique_sum_candidate<F: Field>(alg: &GraphLieAlgebra<F>) -> Vec<F> {
    let mut v = alg.zero_element();
    for i in alg.clique_range() {
        v[i] = F::one(alg.tag()).neg();
    }
    v
}

/// The decomposition `g = g1 ⊕ g2` with `g1 = g' ⊕ ā`, `ā` the standard
/// orthogonal complement of `ker A` inside the clique span, `g2 = ker A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Splitting<F: Field> {
    pub g1: Subspace<F>,
    pub g2: Subspace<F>,
    pub a_bar: Subspace<F>,
    pub g1_is_subalgebra: bool,
    pub g2_is_center: bool,
    pub g2_is_abelian: bool,
    pub commute: bool,
    /// `B0` lies in `ā` because clique coefficients of kernel elements sum to 0.
    pub b0_in_a_bar: bool,
}

impl<F: Field> Splitting<F> {
    pub fn holds(&self) -> bool {
        self.g1_is_subalgebra && self.g2_is_center && self.g2_is_abelian && self.commute && self.b0_in_a_bar
    }
}

/// `g' ⊕ ā` without any hypothesis on the graph.
pub fn g1_subalgebra<F: OrderedField>(alg: &GraphLieAlgebra<F>) -> Result<(Subspace<F>, Subspace<F>)> {
    let full = alg.full_space();
    let derived = alg.bracket_span(&full, &full)?;
    let kernel = alg.incidence_kernel_in_algebra();
    let a_bar = kernel.orthogonal_complement().intersection(&alg.clique_space())?;
    let g1 = derived.sum(&a_bar)?;
    if !alg.is_subalgebra(&g1)? {
        return Err(Error::Consistency("g' + ā is not a subalgebra".into()));
    }
    Ok((g1, a_bar))
}

pub fn split_g1_g2<F: OrderedField>(alg: &GraphLieAlgebra<F>) -> Result<Splitting<F>> {
    if !every_vertex_in_clique(alg.graph(), alg.cliques()) {
        return Err(Error::Hypothesis("some vertex lies in no clique".into()));
    }
    let (g1, a_bar) = g1_subalgebra(alg)?;
    let g2 = alg.incidence_kernel_in_algebra();
    let g1_is_subalgebra = alg.is_subalgebra(&g1)? && g1.dim() + g2.dim() == alg.dim();
    let g2_is_center = g2 == alg.center_oracle();
    let g2_is_abelian = alg.bracket_span(&g2, &g2)?.is_zero();
    let commute = alg.bracket_span(&g1, &g2)?.is_zero();
    let mut b0_in_a_bar = true;
    for z in g2.vectors() {
        b0_in_a_bar &= alg.trace_identity_check(&z)?;
    }
    b0_in_a_bar &= a_bar.contains(&clique_sum_candidate(alg));
    Ok(Splitting {
        g1,
        g2,
        a_bar,
        g1_is_subalgebra,
        g2_is_center,
        g2_is_abelian,
        commute,
        b0_in_a_bar,
    })
}

/// `g1` as a metric algebra with the metric induced from `metric`, plus
/// the coordinates of `B0` in its basis.
pub fn restrict_to_g1<F: OrderedField>(
    alg: &GraphLieAlgebra<F>,
    metric: &MetricTensor<F>,
) -> Result<(MetricAlgebra<F>, Option<Vec<F>>)> {
    let (g1, _) = g1_subalgebra(alg)?;
    let ma = MetricAlgebra::restricted(alg, &g1, metric)?;
    let b0 = g1.coordinates(&clique_sum_candidate(alg));
    Ok((ma, b0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Rational};
    use crate::graphs::{generate, Family, Graph};
    use crate::metric::CurvatureData;

    type Alg = GraphLieAlgebra<Rational>;

    fn build(f: Family) -> Alg {
        Alg::build(&generate(&f, 0).unwrap(), 3, &()).unwrap()
    }

    #[test]
    fn triangle_iwasawa() {
        let a = build(Family::Complete(3));
        let m = MetricAlgebra::standard(&a);
        let r = m.iwasawa_check(Some(&clique_sum_candidate(&a)));
        assert!(r.holds());
        let mut diag: Vec<i64> = r
            .b0_diagonal
            .unwrap()
            .iter()
            .map(|x| x.to_integer().try_into().unwrap())
            .collect();
        diag.sort_unstable();
        assert_eq!(diag, vec![1, 1, 1, 2, 2, 2]);
    }

    #[test]
    fn path_fails_c() {
        let a = build(Family::Path(3));
        let m = MetricAlgebra::standard(&a);
        let r = m.iwasawa_check(Some(&clique_sum_candidate(&a)));
        assert!(!r.c);
        assert!(!m.iwasawa_check(None).c);
    }

    #[test]
    fn k5_split() {
        let a = build(Family::Complete(5));
        let s = split_g1_g2(&a).unwrap();
        assert!(s.holds());
        assert_eq!((s.g1.dim(), s.g2.dim()), (20, 5));
        let (m, b0) = restrict_to_g1(&a, &MetricTensor::identity(25, &())).unwrap();
        let r = m.iwasawa_check(b0.as_deref());
        assert!(r.holds(), "{r:?}");
        // on the full algebra the kernel of A is central, so (b) loses injectivity
        let full = MetricAlgebra::standard(&a).iwasawa_check(Some(&clique_sum_candidate(&a)));
        assert!(!full.b_injective);
    }

    #[test]
    fn k3_split_is_trivial() {
        let s = split_g1_g2(&build(Family::Complete(3))).unwrap();
        assert_eq!((s.g1.dim(), s.g2.dim()), (7, 0));
        assert!(matches!(split_g1_g2(&build(Family::Path(3))), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn block_ricci_matches_trace_ricci() {
        let a = build(Family::Complete(3));
        let m = MetricAlgebra::standard(&a);
        let blocks = m.ricci_blocks().unwrap();
        assert_eq!(blocks.get(6, 6), &int(-15));
        assert_eq!(blocks.get(6, 0), &int(0));
        assert_eq!(blocks, CurvatureData::compute(&m).ricci);
    }

    #[test]
    fn scalar_form_matches_blocks_on_diagonal_metric() {
        let a = build(Family::Complete(3));
        let diag: Vec<Rational> = [1, 2, 3, 1, 5, 2, 7].iter().map(|&x| int(x)).collect();
        let m = MetricAlgebra::from_graph_algebra(&a, MetricTensor::diagonal(&(), &diag).unwrap()).unwrap();
        let blocks = m.ricci_blocks().unwrap();
        for i in 0..7 {
            assert_eq!(m.ricci_scalar_form(&m.unit(i)), *blocks.get(i, i));
        }
        let x: Vec<Rational> = (0..7).map(|i| int(i - 2)).collect();
        let bx = blocks.mul_vec(&x).unwrap();
        let q: Rational = x.iter().zip(&bx).map(|(p, q)| p * q).sum();
        assert_eq!(m.ricci_scalar_form(&x), q);
    }

    #[test]
    fn blocks_refuse_without_symmetric_complement() {
        let g = Graph::from_labels(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let a = Alg::build(&g, 3, &()).unwrap();
        let mut gram = Matrix::identity(7, &());
        gram.set(0, 6, crate::field::rat(1, 2));
        gram.set(6, 0, crate::field::rat(1, 2));
        let m = MetricAlgebra::from_graph_algebra(&a, MetricTensor::new(gram).unwrap()).unwrap();
        assert!(matches!(m.ricci_blocks(), Err(Error::Hypothesis(_))));
    }
}
