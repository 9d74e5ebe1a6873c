use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::algebra::{BasisElement, GraphLieAlgebra};
use crate::error::{Error, Result};
use crate::field::{approximate_rational, int, Field, OrderedField, Rational};
use crate::graphs::{automorphisms, every_vertex_in_clique, DEFAULT_MAX_N};
use crate::linalg::Matrix;

use super::{MetricAlgebra, MetricTensor};

/// `Ric_op = c Id + D` with `D` a derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct SolitonCertificate<F: Field> {
    pub c: F,
    pub derivation: Matrix<F>,
    /// 0 for exact certificates.
    pub residual: f64,
    pub is_derivation: bool,
    pub metric: MetricTensor<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolitonOutcome<F: Field> {
    Certified(SolitonCertificate<F>),
    /// No exact solution; `residual` is the Frobenius distance from the
    /// Ricci operator to `span{Id} + Der` and `best_c` the matching
    /// least-squares coefficient of `Id`.
    Refused { residual: f64, best_c: f64 },
}

impl<F: Field> SolitonOutcome<F> {
    pub fn certificate(&self) -> Option<&SolitonCertificate<F>> {
        match self {
            SolitonOutcome::Certified(c) => Some(c),
            SolitonOutcome::Refused { .. } => None,
        }
    }
}

impl<F: OrderedField> MetricAlgebra<F> {
    /// Exact soliton test for the algebra's own Ricci operator.
    pub fn soliton_check(&self) -> Result<SolitonOutcome<F>> {
        let ric = self.ricci_direct();
        self.soliton_check_operator(&self.ricci_operator(&ric))
    }

    /// Solves `op - c Id ∈ Der` exactly for `(c, D)`.
    pub fn soliton_check_operator(&self, op: &Matrix<F>) -> Result<SolitonOutcome<F>> {
        if !F::EXACT {
            return Err(Error::InexactMetric);
        }
        let d = self.dim();
        if op.rows() != d || op.cols() != d {
            return Err(Error::Dimension("operator of another size".into()));
        }
        let tag = self.tag();
        let ders = self.derivations();
        let id: Matrix<F> = Matrix::identity(d, tag);
        // columns: Id, D_1, ..., D_k (flattened)
        let columns: Vec<&Matrix<F>> = std::iter::once(&id).chain(ders.iter()).collect();
        let mut system: Matrix<F> = Matrix::zeros(d * d, columns.len(), tag);
        for (j, m) in columns.iter().enumerate() {
            for (i, v) in m.data().iter().enumerate() {
                system.set(i, j, v.clone());
            }
        }
        match system.solve(op.data())? {
            Some(sol) => {
                let c = sol.particular[0].clone();
                let derivation = op.sub(&id.scale(&c))?;
                let is_derivation = self.is_derivation(&derivation);
                if !is_derivation {
                    return Err(Error::Consistency("soliton solution fails the Leibniz check".into()));
                }
                Ok(SolitonOutcome::Certified(SolitonCertificate {
                    c,
                    derivation,
                    residual: 0.0,
                    is_derivation,
                    metric: self.metric().clone(),
                }))
            }
            None => {
                let basis: Vec<Vec<f64>> = columns
                    .iter()
                    .map(|m| m.data().iter().map(Field::to_f64).collect())
                    .collect();
                let target: Vec<f64> = op.data().iter().map(Field::to_f64).collect();
                let (residual, coeffs) = least_squares(&basis, &target);
                Ok(SolitonOutcome::Refused {
                    residual,
                    best_c: coeffs.first().copied().unwrap_or(0.0),
                })
            }
        }
    }
}

/// Least-squares fit of `target` by the given vectors via SVD; returns the
/// residual norm and the coefficients.
fn least_squares(vectors: &[Vec<f64>], target: &[f64]) -> (f64, Vec<f64>) {
    let n = target.len();
    let k = vectors.len();
    let a = nalgebra::DMatrix::from_fn(n, k, |i, j| vectors[j][i]);
    let b = nalgebra::DVector::from_column_slice(target);
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&b, 1e-12).unwrap_or_else(|_| nalgebra::DVector::zeros(k));
    let r = &a * &x - &b;
    (r.norm(), x.iter().copied().collect())
}

/// Orthonormal basis (Frobenius) of `span{Id} + Der`, flattened.
fn orthonormal_span(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let p: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
                for (x, y) in w.iter_mut().zip(q) {
                    *x -= p * y;
                }
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scale = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-10 * scale.max(1.0) {
            out.push(w.into_iter().map(|x| x / norm).collect());
        }
    }
    out
}

/// `||P_perp op|| / ||op||`, the projection onto the span of `basis`.
fn relative_residual(basis: &[Vec<f64>], op: &[f64]) -> f64 {
    let norm = op.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return 0.0;
    }
    let mut r = op.to_vec();
    for q in basis {
        let p: f64 = r.iter().zip(q).map(|(a, b)| a * b).sum();
        for (x, y) in r.iter_mut().zip(q) {
            *x -= p * y;
        }
    }
    r.iter().map(|x| x * x).sum::<f64>().sqrt() / norm
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            iters: 500,
            tol: 1e-8,
            seed: 0,
        }
    }
}

/// Result of the diagonal soliton search.
#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Best diagonal metric found.
    pub metric_diag: Vec<f64>,
    pub residual: f64,
    /// Residual after each pass.
    pub history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Number of free log-scale parameters after symmetry reduction and gauge fixing.
    pub free_parameters: usize,
    /// Rationalized metric and the outcome of the exact check on it.
    pub rational_metric: Option<Vec<Rational>>,
    pub exact: Option<SolitonOutcome<Rational>>,
}

/// Basis-element orbits under the graph automorphism group (every element
/// alone when the group is too large to enumerate).
fn basis_orbits(alg: &GraphLieAlgebra<Rational>) -> Vec<usize> {
    let d = alg.dim();
    let mut orbit: Vec<usize> = (0..d).collect();
    let Ok(auts) = automorphisms(alg.graph(), DEFAULT_MAX_N) else {
        return orbit;
    };
    let weights = alg.weights();
    for sigma in auts {
        if (0..sigma.len()).any(|v| weights[v] != weights[sigma[v]]) {
            continue;
        }
        for (i, b) in alg.basis().iter().enumerate() {
            let image = match b {
                BasisElement::Vertex(v) => BasisElement::Vertex(sigma[*v]),
                BasisElement::Edge(a, c) => {
                    let (x, y) = (sigma[*a], sigma[*c]);
                    BasisElement::Edge(x.min(y), x.max(y))
                }
                BasisElement::Clique(t) => {
                    let mut m: Vec<usize> = t.iter().map(|&v| sigma[v]).collect();
                    m.sort_unstable();
                    BasisElement::Clique(m)
                }
            };
            if let Some(j) = alg.index_of(&image) {
                let (ri, rj) = (root(&orbit, i), root(&orbit, j));
                let (lo, hi) = (ri.min(rj), ri.max(rj));
                orbit[hi] = lo;
            }
        }
    }
    (0..d).map(|i| root(&orbit, i)).collect()
}

fn root(parent: &[usize], mut i: usize) -> usize {
    while parent[i] != i {
        i = parent[i];
    }
    i
}

/// Coordinate descent over log-scales of diagonal metrics, minimizing the
/// relative size of the Ricci operator's component orthogonal to
/// `span{Id} + Der`. Vertex scales and the first edge orbit are fixed:
/// diagonal automorphisms rescale vertices freely, and a homothety
/// absorbs one more scale.
pub fn soliton_search_diagonal(alg: &GraphLieAlgebra<Rational>, config: &SearchConfig) -> Result<SearchResult> {
    if !every_vertex_in_clique(alg.graph(), alg.cliques()) {
        return Err(Error::Hypothesis("some vertex lies in no clique".into()));
    }
    let d = alg.dim();
    let exact = MetricAlgebra::standard(alg);
    let approx = exact.to_f64();
    let mut span_vectors: Vec<Vec<f64>> = vec![Matrix::<f64>::identity(d, &()).data().to_vec()];
    span_vectors.extend(exact.derivations().iter().map(|m| m.data().iter().map(Field::to_f64).collect()));
    let span = orthonormal_span(&span_vectors);

    let orbit = basis_orbits(alg);
    let (n, _, _) = alg.dims();
    let first_edge_orbit = (d > n).then(|| orbit[n]);
    let mut reps: Vec<usize> = orbit.clone();
    reps.sort_unstable();
    reps.dedup();
    let free: Vec<usize> = reps
        .into_iter()
        .filter(|&r| r >= n && Some(r) != first_edge_orbit)
        .collect();

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(config.seed);
    let mut params: Vec<f64> = free.iter().map(|_| rng.random_range(-0.25..0.25)).collect();
    let diag_of = |p: &[f64]| -> Vec<f64> {
        (0..d)
            .map(|i| match free.iter().position(|&r| r == orbit[i]) {
                Some(k) => p[k].exp(),
                None => 1.0,
            })
            .collect()
    };
    let objective = |p: &[f64]| -> f64 {
        let diag = diag_of(p);
        let metric = MetricTensor::diagonal(&(), &diag).expect("positive diagonal");
        let ma = approx.with_metric(metric).expect("dimension");
        let op = ma.ricci_operator(&ma.ricci_direct());
        relative_residual(&span, op.data())
    };

    let mut best = objective(&params);
    let mut history = vec![best];
    let mut step = 0.5;
    let mut iterations = 0;
    while iterations < config.iters && best >= config.tol && step > 1e-14 {
        iterations += 1;
        let mut improved = false;
        for k in 0..params.len() {
            for dir in [1.0, -1.0] {
                let mut trial = params.clone();
                trial[k] += dir * step;
                let r = objective(&trial);
                if r < best {
                    best = r;
                    params = trial;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
        history.push(best);
    }

    let metric_diag = diag_of(&params);
    let rational_metric: Option<Vec<Rational>> =
        metric_diag.iter().map(|&x| approximate_rational(x, 1000)).collect();
    let exact_outcome = match &rational_metric {
        Some(q) if q.iter().all(|x| *x > int(0)) => {
            let ma = exact.with_metric(MetricTensor::diagonal(&(), q)?)?;
            Some(ma.soliton_check()?)
        }
        _ => None,
    };
    Ok(SearchResult {
        metric_diag,
        residual: best,
        converged: best < config.tol,
        history,
        iterations,
        free_parameters: free.len(),
        rational_metric,
        exact: exact_outcome,
    })
}

/// Report of the stably-Ricci-diagonal test.
#[derive(Clone, Debug, PartialEq)]
pub struct StablyDiagonalReport {
    pub trials: usize,
    pub all_diagonal: bool,
    pub max_off_diagonal: f64,
    /// First `(trial, row, column)` with a nonzero off-diagonal entry.
    pub first_failure: Option<(usize, usize, usize)>,
}

/// Random diagonal metric with entries `p/q`, `1 <= p <= 20`, `1 <= q <= 10`.
pub fn random_diagonal_metric(d: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..d)
        .map(|_| Rational::new(rng.random_range(1..=20).into(), rng.random_range(1..=10).into()))
        .collect()
}

/// Exact check that the Ricci operator is diagonal for `trials` random
/// diagonal rational metrics.
pub fn stably_ricci_diagonal_test(
    alg: &GraphLieAlgebra<Rational>,
    trials: usize,
    seed: u64,
) -> Result<StablyDiagonalReport> {
    if !every_vertex_in_clique(alg.graph(), alg.cliques()) {
        return Err(Error::Hypothesis("some vertex lies in no clique".into()));
    }
    let d = alg.dim();
    let base = MetricAlgebra::standard(alg);
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut max_off = 0.0f64;
    let mut first_failure = None;
    for trial in 0..trials {
        let diag = random_diagonal_metric(d, &mut rng);
        let ma = base.with_metric(MetricTensor::diagonal(&(), &diag)?)?;
        let op = ma.ricci_operator(&ma.ricci_direct());
        for i in 0..d {
            for j in 0..d {
                if i != j && !op.get(i, j).is_zero() {
                    max_off = max_off.max(op.get(i, j).to_f64().abs());
                    first_failure.get_or_insert((trial, i, j));
                }
            }
        }
    }
    Ok(StablyDiagonalReport {
        trials,
        all_diagonal: first_failure.is_none(),
        max_off_diagonal: max_off,
        first_failure,
    })
}
