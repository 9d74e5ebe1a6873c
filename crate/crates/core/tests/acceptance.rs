//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use liegraph::algebra::GraphLieAlgebra;
use liegraph::field::{int, rat};
use liegraph::graphs::{generate, Family, Graph};
use liegraph::linalg::Matrix;
use liegraph::metric::*;
use liegraph::{FpAlgebra, PrimeModulus, QAlgebra, QMetric, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

type Outcome = (bool, String);

fn triangle_pendant() -> Graph {
    Graph::from_labels(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
}

fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut fam = |f: Family, seed: u64, name: String| out.push((name, generate(&f, seed).unwrap()));
    for n in 3..=6 {
        fam(Family::Complete(n), 0, format!("K{n}"));
    }
    for n in 2..=5 {
        fam(Family::Path(n), 0, format!("P{n}"));
    }
    for n in 4..=6 {
        fam(Family::Cycle(n), 0, format!("C{n}"));
    }
    for seed in 0..20 {
        let n = 4 + (seed as usize % 5);
        fam(Family::Gnp(n, 0.4), seed, format!("G({n},0.4)#{seed}"));
    }
    out.push(("triangle+pendant".into(), triangle_pendant()));
    out
}

fn q(g: &Graph, k: usize) -> QAlgebra {
    GraphLieAlgebra::build(g, k, &()).unwrap()
}

fn complete(n: usize) -> QAlgebra {
    q(&generate(&Family::Complete(n), 0).unwrap(), 3)
}

fn random_weights(n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let p: i64 = rng.random_range(1..=5);
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            rat(sign * p, rng.random_range(1..=4))
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

fn jacobi_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(1);
    let mut algebras = 0;
    let mut triples = 0;
    let mut failures = Vec::new();
    for (name, g) in corpus() {
        for k in [3, 4] {
            let unit = q(&g, k);
            let weighted = GraphLieAlgebra::build_with_weights(&g, k, &(), random_weights(g.n(), &mut rng)).unwrap();
            for (tag, a) in [("unit", unit), ("weighted", weighted)] {
                let r = a.verify_jacobi();
                algebras += 1;
                triples += r.triples_checked;
                if !r.holds {
                    failures.push(format!("{name} k={k} {tag} at {:?}", r.witness));
                }
            }
        }
    }
    let t = start.elapsed();
    let ok = failures.is_empty() && within(t, 10);
    (ok, format!("{algebras} algebras, {triples} triples, {t:.2?}, failures {failures:?}"))
}

fn clique_constants() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 3..=8 {
        let a = complete(n);
        let expected = if n < 5 { 0 } else { binomial(n, 3) - n };
        let oracle = a.center_oracle();
        let formula = a.center_formula().unwrap();
        let rank = a.clique_incidence_matrix().rank();
        ok &= oracle.dim() == expected && formula == oracle;
        if n >= 5 {
            ok &= rank == n;
        }
        notes.push(format!("K{n}: dim Z {} rank A {rank}", oracle.dim()));
    }
    let k4 = complete(4);
    let det = k4.clique_incidence_matrix().det().unwrap();
    ok &= det == int(-3);
    notes.push(format!("det A(K4) {det}"));

    let k5 = complete(5);
    let mut x = k5.zero_element();
    for (t, c) in [([0, 1, 2], 1), ([0, 2, 3], -1), ([0, 3, 4], 1), ([0, 1, 4], -1)] {
        x[k5.clique_basis_index(&t).unwrap()] = int(c);
    }
    let central = (0..k5.dim()).all(|b| k5.bracket(&x, &k5.unit(b)).unwrap().iter().all(|c| *c == int(0)));
    let in_center = k5.center_oracle().contains(&x);
    ok &= central && in_center;
    notes.push(format!("K5 x central {central}"));
    (ok, notes.join("; "))
}

fn series_closed_forms() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (name, g) in corpus() {
        let a = q(&g, 3);
        let r = a.verify_series_closed_form().unwrap();
        let derived = a.derived_series();
        let reaches_zero = derived.len() <= 3 && derived.last().is_none_or(|s| s.is_zero());
        checked += 1;
        if !r.holds() || !r.derived_3 || !reaches_zero {
            failures.push(format!("{name}: {r:?}"));
        }
    }
    (failures.is_empty(), format!("{checked} graphs, failures {failures:?}"))
}

fn center_nilradical() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, g) in corpus() {
        let a = q(&g, 3);
        checked += 1;
        let center_ok = a.center_formula().unwrap() == a.center_oracle();
        let nr = a.nilradical();
        let nr_ok = nr.as_ref().is_ok_and(|s| *s == a.nilradical_parts() && a.is_nilpotent_subalgebra(s).unwrap());
        if !center_ok || !nr_ok {
            failures.push(name);
        }
    }
    let f2 = PrimeModulus::new(2).unwrap();
    let mut char2 = Vec::new();
    let mut contained = true;
    for (name, g) in corpus() {
        let a: FpAlgebra = GraphLieAlgebra::build(&g, 3, &f2).unwrap();
        let formula = a.center_formula_parts();
        let oracle = a.center_oracle();
        contained &= formula.is_subspace_of(&oracle);
        if name == "K3" || name == "K5" {
            char2.push(format!("{name} over F2: formula {} oracle {}", formula.dim(), oracle.dim()));
        }
    }
    let ok = failures.is_empty() && contained;
    (ok, format!("{checked} graphs over Q, failures {failures:?}; F2 formula within oracle {contained}; {}", char2.join(", ")))
}

fn permutation_isomorphisms() -> Outcome {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
    let mut failures = Vec::new();
    for i in 0..50u64 {
        let n = 3 + (i as usize % 5);
        let g = generate(&Family::Gnp(n, 0.6), 100 + i).unwrap();
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut rng);
        let h = g.permute(&sigma).unwrap();
        let (a, b) = (q(&g, 3), q(&h, 3));
        let map_ok = matches!(a.isomorphism_from_permutation(&b, &sigma), Ok(Ok(_)));
        let fp_ok = a.fingerprint().unwrap() == b.fingerprint().unwrap();
        if !map_ok || !fp_ok {
            failures.push(format!("pair {i}: map {map_ok} fingerprint {fp_ok}"));
        }
    }
    (failures.is_empty(), format!("50 pairs, failures {failures:?}"))
}

fn completely_solvable() -> Outcome {
    let allowed = ["0", "-1", "-2"];
    let mut checked = 0;
    let mut failures = Vec::new();
    for (name, g) in corpus() {
        let a = q(&g, 3);
        if !liegraph::graphs::every_vertex_in_clique(a.graph(), a.cliques()) {
            continue;
        }
        checked += 1;
        let r = a.completely_solvable_check();
        let entries_ok = r.diagonals.iter().flatten().all(|x| allowed.contains(&x.as_str()));
        if !r.holds || !entries_ok {
            failures.push(name);
        }
    }
    (failures.is_empty() && checked > 0, format!("{checked} hypothesis graphs, failures {failures:?}"))
}

fn relative_close(a: f64, b: f64, rel: f64) -> bool {
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= rel * scale.max(1e-12)
}

fn random_vector(d: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..d).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn curvature_cross_validation() -> Outcome {
    let start = Instant::now();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
    let mut notes = Vec::new();
    let mut ok = true;
    let tp = q(&triangle_pendant(), 3);
    let (tp_g1, _) = restrict_to_g1(&tp, &identity_metric(&tp)).unwrap();
    let cases: Vec<(&str, MetricAlgebra<f64>)> = vec![
        ("K3", MetricAlgebra::standard(&complete(3)).to_f64()),
        ("K4", MetricAlgebra::standard(&complete(4)).to_f64()),
        ("K5", MetricAlgebra::standard(&complete(5)).to_f64()),
        ("triangle+pendant g1", tp_g1.to_f64()),
    ];
    for (name, ma) in cases {
        let curv = CurvatureData::compute(&ma);
        let mut worst: f64 = 0.0;
        let mut bad = 0;
        for _ in 0..100 {
            let x = random_vector(ma.dim(), &mut rng);
            let y = random_vector(ma.dim(), &mut rng);
            let koszul = curv.sectional(&x, &y);
            let formula = sectional_formula(&ma, &x, &y);
            let scale = koszul.abs().max(formula.abs()).max(1e-12);
            worst = worst.max((koszul - formula).abs() / scale);
            if !relative_close(koszul, formula, 1e-9) {
                bad += 1;
            }
        }
        ok &= bad == 0;
        notes.push(format!("{name} worst rel {worst:.1e}"));
    }
    for n in [3, 4] {
        let a = complete(n);
        let ma = MetricAlgebra::standard(&a);
        let curv = CurvatureData::compute(&ma);
        let blocks = ma.ricci_blocks().unwrap();
        let agree = blocks == curv.ricci;
        ok &= agree;
        notes.push(format!("K{n} blocks == trace Ricci {agree}"));
        if n == 3 {
            let u = a.clique_range().start;
            let v = curv.ricci.get(u, u).clone();
            ok &= v == int(-15);
            notes.push(format!("Ric(e123,e123) = {v}"));
        }
    }
    let t = start.elapsed();
    ok &= within(t, 20);
    notes.push(format!("{t:.2?}"));
    (ok, notes.join("; "))
}

fn identity_metric(a: &QAlgebra) -> QMetric {
    MetricTensor::identity(a.dim(), &())
}

fn iwasawa_structure() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [3, 4, 5] {
        let a = complete(n);
        let metric = identity_metric(&a);
        let (ma, b0) = if n == 5 {
            let (g1, b0) = restrict_to_g1(&a, &metric).unwrap();
            (g1, b0)
        } else {
            (MetricAlgebra::standard(&a), Some(clique_sum_candidate(&a)))
        };
        let iw = ma.iwasawa_check(b0.as_deref());
        let split = split_g1_g2(&a).unwrap();
        let ker = a.incidence_kernel().dim();
        let split_ok = split.holds() && split.g2.dim() == ker;
        let stably = stably_ricci_diagonal_test(&a, 20, 0).unwrap();
        ok &= iw.holds() && split_ok && stably.all_diagonal;
        notes.push(format!(
            "K{n}: iwasawa a={} b={} c={} on {}; split {split_ok} dim g2 {}; stably diagonal {} (max off {}, first failure {:?})",
            iw.a,
            iw.b(),
            iw.c,
            if n == 5 { "g1" } else { "g" },
            split.g2.dim(),
            stably.all_diagonal,
            stably.max_off_diagonal,
            stably.first_failure
        ));
    }
    (ok, notes.join("; "))
}

fn soliton_search() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [3, 4] {
        let a = complete(n);
        let r = soliton_search_diagonal(&a, &SearchConfig::default()).unwrap();
        let reached = r.residual < 1e-8 && r.iterations <= 500;
        ok &= reached;
        notes.push(format!("K{n}: residual {:.3e} after {} iterations", r.residual, r.iterations));
        if n == 3 {
            let verified = r.exact.as_ref().and_then(|o| o.certificate()).is_some_and(|cert| {
                let ma = MetricAlgebra::standard(&a).with_metric(cert.metric.clone()).unwrap();
                let op = ma.ricci_operator(&ma.ricci_direct());
                let rebuilt = Matrix::identity(ma.dim(), &()).scale(&cert.c).add(&cert.derivation).unwrap();
                cert.is_derivation && ma.is_derivation(&cert.derivation) && op == rebuilt
            });
            ok &= verified;
            let c = r.exact.as_ref().and_then(|o| o.certificate()).map(|c| c.c.to_string());
            notes.push(format!("K3 certificate verified {verified} c {c:?}"));
        }
    }
    let t = start.elapsed();
    ok &= within(t, 20);
    notes.push(format!("{t:.2?}"));
    (ok, notes.join("; "))
}

fn curvature_operator_reporting() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [3, 4] {
        let ma = MetricAlgebra::standard(&complete(n));
        let exact = CurvatureData::compute(&ma);
        let float = CurvatureData::compute(&ma.to_f64());
        let defect_exact = exact.symmetry_defect();
        let defect_float = float.symmetry_defect();
        let form = float.operator_form();
        let asym = (0..form.rows())
            .flat_map(|i| (0..form.cols()).map(move |j| (i, j)))
            .map(|(i, j)| (form.get(i, j) - form.get(j, i)).abs())
            .fold(0.0, f64::max);
        let spectrum = curvature_operator_spectrum(&exact, ma.metric().gram()).unwrap();
        ok &= defect_exact == int(0) && defect_float <= 1e-12 && asym <= 1e-12;
        notes.push(format!(
            "K{n}: defect {defect_float:.1e}, max eig {:.3e}, nonpositive {} (boundary {})",
            spectrum.max_eig, spectrum.nonpositive, spectrum.boundary
        ));
    }
    (ok, notes.join("; "))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("jacobi suite", jacobi_suite),
        ("clique constants", clique_constants),
        ("series closed forms", series_closed_forms),
        ("center and nilradical oracles", center_nilradical),
        ("permutation isomorphisms", permutation_isomorphisms),
        ("completely solvable", completely_solvable),
        ("curvature cross-validation", curvature_cross_validation),
        ("iwasawa structure", iwasawa_structure),
        ("soliton search", soliton_search),
        ("curvature operator reporting", curvature_operator_reporting),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run();
        failed += usize::from(!ok);
        println!("criterion {:>2} {name}: {} ({detail})", i + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
