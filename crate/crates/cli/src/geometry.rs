use std::path::Path;

use liegraph::algebra::GraphLieAlgebra;
use liegraph::field::{parse_rational, Field};
use liegraph::graphs::every_vertex_in_clique;
use liegraph::linalg::Matrix;
use liegraph::metric::{
    clique_sum_candidate, curvature_operator_spectrum, generalized_eigenvalues, restrict_to_g1,
    soliton_search_diagonal, split_g1_g2, stably_ricci_diagonal_test, CurvatureData, IwasawaReport, MetricAlgebra,
    MetricTensor, SearchConfig, SolitonOutcome,
};
use liegraph::{QAlgebra, Rational};
use serde_json::{json, Map, Value};

use crate::report::{self, float, floats, refusal};
use crate::{read_graph, CliError};

fn scalar(v: &Value) -> Result<Rational, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(CliError::Input(format!("metric entry {other} is not a number"))),
    };
    Ok(parse_rational(&text)?)
}

/// `{"diag": [...]}` or `{"matrix": [[...]]}`, entries as rational strings or numbers.
pub fn parse_metric_json(text: &str) -> Result<Matrix<Rational>, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("metric file: {e}")))?;
    let as_array = |x: &Value| -> Result<Vec<Value>, CliError> {
        x.as_array()
            .cloned()
            .ok_or_else(|| CliError::Input("metric file: expected an array".into()))
    };
    if let Some(d) = v.get("diag") {
        let entries = as_array(d)?.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
        return Ok(Matrix::diagonal(&(), &entries));
    }
    if let Some(m) = v.get("matrix") {
        let rows = as_array(m)?
            .iter()
            .map(|r| as_array(r)?.iter().map(scalar).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Matrix::from_rows(&(), rows)?);
    }
    Err(CliError::Input("metric file: expected a \"diag\" or \"matrix\" key".into()))
}

fn load_metric(
    alg: &QAlgebra,
    file: Option<&Path>,
    diag: Option<&str>,
) -> Result<(MetricTensor<Rational>, &'static str), CliError> {
    let (gram, source) = if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        (parse_metric_json(&text)?, "file")
    } else if let Some(list) = diag {
        let entries = list.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
        (Matrix::diagonal(&(), &entries), "diag")
    } else {
        (Matrix::identity(alg.dim(), &()), "identity")
    };
    if gram.rows() != alg.dim() || gram.cols() != alg.dim() {
        return Err(CliError::Input(format!(
            "metric is {}x{} but the algebra has dimension {}",
            gram.rows(),
            gram.cols(),
            alg.dim()
        )));
    }
    Ok((MetricTensor::new(gram)?, source))
}

fn iwasawa_json(r: &IwasawaReport<Rational>, applied_to: &str) -> Value {
    json!({
        "applied_to": applied_to,
        "a": r.a,
        "b": r.b(),
        "b_symmetric": r.b_symmetric,
        "b_injective": r.b_injective,
        "c": r.c,
        "b0_found": r.b0_found,
        "b0_diagonal": r.b0_diagonal.as_ref().map(|d| d.iter().map(|x| x.render()).collect::<Vec<_>>()),
    })
}

pub fn metric(
    input: &Path,
    k: usize,
    file: Option<&Path>,
    diag: Option<&str>,
    trials: usize,
    seed: u64,
) -> Result<Value, CliError> {
    let g = read_graph(input)?;
    let alg = GraphLieAlgebra::<Rational>::build(&g, k, &())?;
    let (metric, source) = load_metric(&alg, file, diag)?;
    let ma = MetricAlgebra::from_graph_algebra(&alg, metric.clone())?;
    let hypothesis = every_vertex_in_clique(alg.graph(), alg.cliques());
    let refuse_hyp = || refusal("hypothesis fails: some vertex lies in no clique");

    let ric = ma.ricci_direct();
    let gram_f = metric.gram().convert(&(), Field::to_f64);
    let ricci_spectrum = generalized_eigenvalues(&ric.convert(&(), Field::to_f64), &gram_f)?;
    let blocks = if hypothesis {
        match ma.ricci_blocks() {
            Ok(b) => {
                if b != ric {
                    return Err(CliError::Consistency("block Ricci formulas disagree with the direct Ricci".into()));
                }
                json!(true)
            }
            Err(e) => refusal(e),
        }
    } else {
        refuse_hyp()
    };
    let mut diagonal = Map::new();
    for (i, label) in ma.labels().iter().enumerate() {
        diagonal.insert(label.clone(), json!(ric.get(i, i).render()));
    }
    let ricci = json!({
        "matrix": ric.to_json(),
        "diagonal": diagonal,
        "spectrum": floats(&ricci_spectrum),
        "blocks_agree": blocks,
    });

    let curv = CurvatureData::compute(&ma.to_f64());
    let spectrum = curvature_operator_spectrum(&curv, &gram_f)?;
    let curvature_operator = json!({
        "max_eig": float(spectrum.max_eig),
        "nonpositive": spectrum.nonpositive,
        "boundary": spectrum.boundary,
        "spectrum": floats(&spectrum.values),
        "symmetry_defect": float(curv.symmetry_defect()),
    });

    let (iwasawa, split) = if hypothesis {
        let s = split_g1_g2(&alg)?;
        let iw = if s.g2.is_zero() {
            iwasawa_json(&ma.iwasawa_check(Some(&clique_sum_candidate(&alg))), "g")
        } else {
            let (g1, b0) = restrict_to_g1(&alg, &metric)?;
            iwasawa_json(&g1.iwasawa_check(b0.as_deref()), "g1")
        };
        let split = json!({
            "dim_g1": s.g1.dim(),
            "dim_g2": s.g2.dim(),
            "g1_is_subalgebra": s.g1_is_subalgebra,
            "g2_is_center": s.g2_is_center,
            "b0_in_a_bar": s.b0_in_a_bar,
        });
        (iw, split)
    } else {
        (refuse_hyp(), refuse_hyp())
    };

    let soliton = match ma.soliton_check()? {
        SolitonOutcome::Certified(c) => json!({
            "found": true,
            "c": c.c.render(),
            "residual": float(c.residual),
            "is_derivation": c.is_derivation,
        }),
        SolitonOutcome::Refused { residual, best_c } => json!({
            "found": false,
            "c": float(best_c),
            "residual": float(residual),
        }),
    };

    let stably = if trials == 0 {
        Value::Null
    } else if hypothesis {
        let r = stably_ricci_diagonal_test(&alg, trials, seed)?;
        json!({
            "trials": r.trials,
            "all_diagonal": r.all_diagonal,
            "max_off_diagonal": float(r.max_off_diagonal),
            "first_failure": r.first_failure.map(|(t, i, j)| json!({
                "trial": t,
                "row": ma.labels()[i],
                "column": ma.labels()[j],
            })),
        })
    } else {
        refuse_hyp()
    };

    let mut section = Map::new();
    section.insert("metric".into(), json!({ "source": source, "diagonal": metric.is_diagonal(), "dim": ma.dim() }));
    section.insert("iwasawa".into(), iwasawa);
    section.insert("ricci".into(), ricci);
    section.insert("curvature_operator".into(), curvature_operator);
    section.insert("soliton".into(), soliton);
    section.insert("split".into(), split);
    section.insert("stably_ricci_diagonal".into(), stably);
    section.insert(
        "mean_curvature".into(),
        json!(ma.mean_curvature().iter().map(|x| x.render()).collect::<Vec<_>>()),
    );
    let mut sections = Map::new();
    sections.insert("metric".into(), Value::Object(section));
    let config = json!({
        "k": k,
        "field": "q",
        "weights": g.weights().map(|w| w.iter().map(|x| x.render()).collect::<Vec<_>>()),
        "metric": source,
        "metric_diag": diag,
        "trials": trials,
        "seed": seed,
    });
    Ok(report::envelope("metric", report::graph_digest(&g), config, sections))
}

pub fn soliton(input: &Path, k: usize, iters: usize, tol: f64, seed: u64) -> Result<Value, CliError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Input("--tol must be positive".into()));
    }
    let g = read_graph(input)?;
    let alg = GraphLieAlgebra::<Rational>::build(&g, k, &())?;
    let config = SearchConfig { iters, tol, seed };
    let section = match soliton_search_diagonal(&alg, &config) {
        Ok(r) => {
            let certificate = match &r.exact {
                Some(SolitonOutcome::Certified(c)) => json!({
                    "verified": c.is_derivation,
                    "c": c.c.render(),
                    "residual": float(c.residual),
                }),
                Some(SolitonOutcome::Refused { residual, .. }) => json!({
                    "verified": false,
                    "residual": float(*residual),
                }),
                None => Value::Null,
            };
            json!({
                "found": r.converged,
                "residual": float(r.residual),
                "iterations": r.iterations,
                "free_parameters": r.free_parameters,
                "history": floats(&r.history),
                "metric_diag": floats(&r.metric_diag),
                "rational_metric": r.rational_metric.as_ref().map(|q| q.iter().map(|x| x.render()).collect::<Vec<_>>()),
                "certificate": certificate,
            })
        }
        Err(e @ liegraph::Error::Hypothesis(_)) => refusal(e),
        Err(e) => return Err(e.into()),
    };
    let mut sections = Map::new();
    sections.insert("soliton".into(), section);
    let config = json!({
        "k": k,
        "field": "q",
        "weights": g.weights().map(|w| w.iter().map(|x| x.render()).collect::<Vec<_>>()),
        "iters": iters,
        "tol": float(tol),
        "seed": seed,
    });
    Ok(report::envelope("soliton", report::graph_digest(&g), config, sections))
}
