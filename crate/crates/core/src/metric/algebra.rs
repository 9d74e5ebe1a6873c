use std::collections::BTreeMap;

use crate::algebra::{GraphLieAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::field::{Field, OrderedField};
use crate::linalg::{Matrix, SparseSystem, Subspace};

use super::MetricTensor;

/// A finite-dimensional Lie algebra given by structure constants on a
/// basis, together with an inner product on that basis.
#[derive(Clone, Debug)]
pub struct MetricAlgebra<F: Field> {
    tag: F::Tag,
    labels: Vec<String>,
    /// `consts[a][b] = [f_a, f_b]`, sparse.
    consts: Vec<Vec<SparseVec<F>>>,
    metric: MetricTensor<F>,
    /// Basis vectors in the coordinates of the algebra this one was
    /// restricted from (rows), if any.
    embedding: Option<Matrix<F>>,
}

impl<F: OrderedField> MetricAlgebra<F> {
    /// Builds from explicit structure constants; `consts[a][b]` must be
    /// antisymmetric.
    pub fn from_structure(
        labels: Vec<String>,
        consts: Vec<Vec<SparseVec<F>>>,
        metric: MetricTensor<F>,
    ) -> Result<Self> {
        let d = labels.len();
        if consts.len() != d || consts.iter().any(|r| r.len() != d) || metric.dim() != d {
            return Err(Error::Dimension(format!("structure constants or metric do not match dimension {d}")));
        }
        let tag = metric.gram().tag().clone();
        let mut out = MetricAlgebra {
            tag,
            labels,
            consts: Vec::new(),
            metric,
            embedding: None,
        };
        for a in 0..d {
            for b in 0..d {
                let mut ab: BTreeMap<usize, F> = BTreeMap::new();
                for (c, v) in &consts[a][b] {
                    ab.entry(*c).or_insert_with(|| F::zero(&out.tag)).add_assign(v);
                }
                let mut ba: BTreeMap<usize, F> = BTreeMap::new();
                for (c, v) in &consts[b][a] {
                    ba.entry(*c).or_insert_with(|| F::zero(&out.tag)).add_assign(v);
                }
                ab.retain(|_, v| !v.is_zero());
                ba.retain(|_, v| !v.is_zero());
                let neg: BTreeMap<usize, F> = ba.iter().map(|(c, v)| (*c, v.neg())).collect();
                if ab != neg {
                    return Err(Error::Dimension(format!("bracket of basis elements {a} and {b} is not antisymmetric")));
                }
            }
        }
        out.consts = consts
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        let mut m: BTreeMap<usize, F> = BTreeMap::new();
                        for (c, x) in v {
                            m.entry(c).or_insert_with(|| F::zero(&out.tag)).add_assign(&x);
                        }
                        m.into_iter().filter(|(_, x)| !x.is_zero()).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(out)
    }

    /// The graph algebra with `metric` on its standard basis.
    pub fn from_graph_algebra(alg: &GraphLieAlgebra<F>, metric: MetricTensor<F>) -> Result<Self> {
        let d = alg.dim();
        if metric.dim() != d {
            return Err(Error::Dimension(format!(
                "metric of size {} for an algebra of dimension {d}",
                metric.dim()
            )));
        }
        let consts = (0..d)
            .map(|a| (0..d).map(|b| alg.basis_bracket(a, b)).collect())
            .collect();
        let labels = alg.basis().iter().map(ToString::to_string).collect();
        Ok(MetricAlgebra {
            tag: alg.tag().clone(),
            labels,
            consts,
            metric,
            embedding: None,
        })
    }

    /// The graph algebra with its identity metric.
    pub fn standard(alg: &GraphLieAlgebra<F>) -> Self {
        Self::from_graph_algebra(alg, MetricTensor::identity(alg.dim(), alg.tag())).expect("matching dimension")
    }

    /// Restriction to a subalgebra `sub` (basis: the RREF rows of `sub`),
    /// with the metric induced from `metric` on the ambient algebra.
    pub fn restricted(alg: &GraphLieAlgebra<F>, sub: &Subspace<F>, metric: &MetricTensor<F>) -> Result<Self> {
        if sub.ambient() != alg.dim() || metric.dim() != alg.dim() {
            return Err(Error::Dimension("subspace or metric of another algebra".into()));
        }
        let basis = sub.vectors();
        let k = basis.len();
        let mut consts = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let z = alg.bracket(&basis[i], &basis[j])?;
                let coords = sub
                    .coordinates(&z)
                    .ok_or_else(|| Error::Hypothesis("subspace is not closed under the bracket".into()))?;
                let sparse: SparseVec<F> = coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                consts[j][i] = sparse.iter().map(|(c, x)| (*c, x.neg())).collect();
                consts[i][j] = sparse;
            }
        }
        let s = sub.basis();
        let gram = s.mul(metric.gram())?.mul(&s.transpose())?;
        let labels = basis.iter().map(|v| alg.render_element(v)).collect();
        Ok(MetricAlgebra {
            tag: alg.tag().clone(),
            labels,
            consts,
            metric: MetricTensor::new(gram)?,
            embedding: Some(s.clone()),
        })
    }

    /// Same structure, different metric.
    pub fn with_metric(&self, metric: MetricTensor<F>) -> Result<Self> {
        if metric.dim() != self.dim() {
            return Err(Error::Dimension("metric of another size".into()));
        }
        Ok(MetricAlgebra {
            metric,
            ..self.clone()
        })
    }

    pub fn to_f64(&self) -> MetricAlgebra<f64> {
        MetricAlgebra {
            tag: (),
            labels: self.labels.clone(),
            consts: self
                .consts
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(|(c, x)| (*c, x.to_f64())).collect())
                        .collect()
                })
                .collect(),
            metric: self.metric.to_f64(),
            embedding: self.embedding.as_ref().map(|m| m.convert(&(), Field::to_f64)),
        }
    }
}

impl<F: Field> MetricAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn tag(&self) -> &F::Tag {
        &self.tag
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn metric(&self) -> &MetricTensor<F> {
        &self.metric
    }

    pub fn embedding(&self) -> Option<&Matrix<F>> {
        self.embedding.as_ref()
    }

    pub fn zero_element(&self) -> Vec<F> {
        vec![F::zero(&self.tag); self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vec<F> {
        let mut v = self.zero_element();
        v[i] = F::one(&self.tag);
        v
    }

    /// `[f_a, f_b]`, sparse.
    pub fn basis_bracket(&self, a: usize, b: usize) -> &SparseVec<F> {
        &self.consts[a][b]
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = self.zero_element();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa.mul(yb);
                for (c, v) in &self.consts[a][b] {
                    out[*c].add_mul_assign(&s, v);
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`, column `b` = `[x, f_b]`.
    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let d = self.dim();
        let mut m: Matrix<F> = Matrix::zeros(d, d, &self.tag);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for b in 0..d {
                for (c, v) in &self.consts[a][b] {
                    m.get_mut(*c, b).add_mul_assign(xa, v);
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, a: usize) -> Matrix<F> {
        self.ad(&self.unit(a))
    }

    /// `g`-adjoint `G^{-1} M^T G`.
    pub fn metric_adjoint(&self, m: &Matrix<F>) -> Matrix<F> {
        self.metric
            .inverse()
            .mul(&m.transpose())
            .and_then(|x| x.mul(self.metric.gram()))
            .expect("square matrices of the algebra dimension")
    }

    /// Span of all brackets.
    pub fn derived(&self) -> Subspace<F> {
        let d = self.dim();
        let vectors = (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).filter_map(|(a, b)| {
            let v = &self.consts[a][b];
            (!v.is_empty()).then(|| {
                let mut out = self.zero_element();
                for (c, x) in v {
                    out[*c] = x.clone();
                }
                out
            })
        });
        Subspace::from_vectors(d, &self.tag, vectors)
    }

    /// Whether all brackets of elements of `s` vanish.
    pub fn is_abelian(&self, s: &Subspace<F>) -> bool {
        let v = s.vectors();
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| self.bracket(&v[i], &v[j]).iter().all(Field::is_zero)))
    }

    /// Derivations by the ungraded Leibniz system, each a `d x d` matrix
    /// with column `j` the image of `f_j`.
    pub fn derivations(&self) -> Vec<Matrix<F>> {
        let d = self.dim();
        // into[b][c] = [(i, C_ib^c)]
        let mut into: Vec<BTreeMap<usize, Vec<(usize, F)>>> = vec![BTreeMap::new(); d];
        for b in 0..d {
            for i in 0..d {
                for (c, v) in &self.consts[i][b] {
                    into[b].entry(*c).or_default().push((i, v.clone()));
                }
            }
        }
        let mut sys = SparseSystem::new(d * d, &self.tag);
        for a in 0..d {
            for b in a + 1..d {
                for c in 0..d {
                    let mut terms: Vec<(usize, F)> = Vec::new();
                    for (e, v) in &self.consts[a][b] {
                        terms.push((c * d + e, v.clone()));
                    }
                    if let Some(list) = into[b].get(&c) {
                        for (i, v) in list {
                            terms.push((i * d + a, v.neg()));
                        }
                    }
                    if let Some(list) = into[a].get(&c) {
                        for (i, v) in list {
                            terms.push((i * d + b, v.clone()));
                        }
                    }
                    if !terms.is_empty() {
                        sys.add_equation(terms);
                    }
                }
            }
        }
        sys.kernel()
            .vectors()
            .into_iter()
            .map(|v| Matrix::from_rows(&self.tag, v.chunks(d).map(<[F]>::to_vec).collect()).expect("d x d"))
            .collect()
    }

    /// Whether `m` satisfies the Leibniz rule on all basis pairs.
    pub fn is_derivation(&self, m: &Matrix<F>) -> bool {
        let d = self.dim();
        if m.rows() != d || m.cols() != d {
            return false;
        }
        let images: Vec<Vec<F>> = (0..d).map(|j| m.column(j)).collect();
        for a in 0..d {
            for b in a + 1..d {
                let mut ab = self.zero_element();
                for (c, v) in &self.consts[a][b] {
                    ab[*c] = v.clone();
                }
                let lhs = m.mul_vec(&ab).expect("dimension");
                let r1 = self.bracket(&images[a], &self.unit(b));
                let r2 = self.bracket(&self.unit(a), &images[b]);
                if lhs.iter().zip(r1.iter().zip(&r2)).any(|(l, (x, y))| !l.sub(x).sub(y).is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// `H` with `g(H, Y) = tr ad_Y` for every `Y`.
    pub fn mean_curvature(&self) -> Vec<F> {
        let traces: Vec<F> = (0..self.dim()).map(|b| self.ad_basis(b).trace()).collect();
        self.metric.raise(&traces)
    }

    /// `G^{-1} Ric`, the Ricci operator of a Ricci form.
    pub fn ricci_operator(&self, ricci: &Matrix<F>) -> Matrix<F> {
        self.metric.inverse().mul(ricci).expect("dimension")
    }
}

impl<F: OrderedField> MetricAlgebra<F> {
    /// Ricci form from the classical closed formula for left-invariant
    /// metrics, polarized:
    /// `Ric(X,X) = -1/2 sum |[X,E_i]|^2 - 1/2 B(X,X)
    ///             + 1/4 sum_{i,j} g([E_i,E_j],X)^2 - g([H,X],X)`
    /// with `B` the Killing form and `E_i` a `g`-orthonormal frame,
    /// written in the basis through `G` and `G^{-1}`.
    pub fn ricci_direct(&self) -> Matrix<F> {
        let d = self.dim();
        let tag = &self.tag;
        let g = self.metric.gram();
        let gi = self.metric.inverse();
        let ads: Vec<Matrix<F>> = (0..d).map(|a| self.ad_basis(a)).collect();
        // k[a][i][j] = g([f_i, f_j], f_a)
        let k: Vec<Matrix<F>> = (0..d)
            .map(|a| {
                let mut m: Matrix<F> = Matrix::zeros(d, d, tag);
                for i in 0..d {
                    for j in 0..d {
                        let mut s = F::zero(tag);
                        for (c, v) in &self.consts[i][j] {
                            s.add_mul_assign(v, g.get(*c, a));
                        }
                        m.set(i, j, s);
                    }
                }
                m
            })
            .collect();
        let conj: Vec<Matrix<F>> = ads
            .iter()
            .map(|ad| g.mul(ad).and_then(|x| x.mul(gi)).expect("dimension"))
            .collect();
        let lk: Vec<Matrix<F>> = k
            .iter()
            .map(|m| gi.mul(m).and_then(|x| x.mul(gi)).expect("dimension"))
            .collect();
        let h = self.mean_curvature();
        let gad_h = g.mul(&self.ad(&h)).expect("dimension");

        let dot = |x: &Matrix<F>, y: &Matrix<F>| -> F {
            let mut s = F::zero(tag);
            for (p, q) in x.data().iter().zip(y.data()) {
                s.add_mul_assign(p, q);
            }
            s
        };
        let half = F::from_i64(tag, 2).inv().expect("char 0");
        let quarter = F::from_i64(tag, 4).inv().expect("char 0");
        let mut ric: Matrix<F> = Matrix::zeros(d, d, tag);
        for a in 0..d {
            for b in a..d {
                let t1 = dot(&ads[a], &conj[b]);
                let mut killing = F::zero(tag);
                for i in 0..d {
                    for c in 0..d {
                        killing.add_mul_assign(ads[a].get(i, c), ads[b].get(c, i));
                    }
                }
                let s = dot(&lk[a], &k[b]);
                // sym g([H, f_a], f_b) = ((G ad_H)_{ba} + (G ad_H)_{ab}) / 2
                let hterm = gad_h.get(b, a).add(gad_h.get(a, b)).mul(&half);
                let v = t1
                    .add(&killing)
                    .mul(&half)
                    .neg()
                    .add(&s.mul(&quarter))
                    .sub(&hterm);
                ric.set(a, b, v.clone());
                ric.set(b, a, v);
            }
        }
        ric
    }
}
