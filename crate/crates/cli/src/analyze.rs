use std::path::Path;

use liegraph::algebra::GraphLieAlgebra;
use liegraph::field::{Field, FieldKind};
use liegraph::graphs::{canonical_form_with_limit, coherence_graph, every_vertex_in_clique, Graph, Similarity};
use liegraph::Error;
use serde_json::{json, Map, Value};

use crate::report::{self, edge_labels, labels, refusal};
use crate::{read_graph, read_weights, CliError};

pub fn run(input: &Path, k: usize, field: &str, weights: Option<&Path>) -> Result<Value, CliError> {
    let kind: FieldKind = field.parse()?;
    let mut g = read_graph(input)?;
    if let Some(w) = weights {
        let parsed = read_weights(w, g.n())?;
        g = g.with_weights(parsed)?;
    }
    let max_n = report::max_n_from_env()?;
    let mut warnings: Vec<String> = Vec::new();
    let graph = graph_section(&g, k, max_n, &mut warnings)?;
    let algebra = match kind {
        FieldKind::Rationals => algebra_section::<liegraph::Rational>(&g, k, &(), &mut warnings)?,
        FieldKind::Prime(p) => algebra_section::<liegraph::Fp>(&g, k, &p, &mut warnings)?,
    };
    let config = json!({
        "k": k,
        "field": kind.name(),
        "weights": g.weights().map(|w| w.iter().map(|x| x.render()).collect::<Vec<_>>()),
        "seed": 0,
        "max_n": max_n,
    });
    let mut sections = Map::new();
    sections.insert("graph".into(), graph);
    sections.insert("algebra".into(), algebra);
    sections.insert("warnings".into(), json!(warnings));
    Ok(report::envelope("analyze", report::graph_digest(&g), config, sections))
}

pub fn graph_section(g: &Graph, k: usize, max_n: usize, warnings: &mut Vec<String>) -> Result<Value, CliError> {
    let cliques = liegraph::graphs::enumerate_k_cliques(g, k)?;
    let dec = liegraph::graphs::decompose(g, &cliques);
    let coherence = coherence_graph(g, Similarity::Closed);
    let canonical = match canonical_form_with_limit(g, max_n) {
        Ok(c) => json!({ "edges": edge_labels(&c.edges), "labeling": labels(&c.labeling) }),
        Err(e @ Error::SizeGuard { .. }) => {
            warnings.push(format!("canonical form skipped: {e}"));
            Value::Null
        }
        Err(e) => return Err(e.into()),
    };
    let clique_list: Vec<Value> = cliques.cliques().iter().map(|t| labels(t)).collect();
    Ok(json!({
        "n": g.n(),
        "edge_count": g.edge_count(),
        "k": k,
        "clique_count": cliques.len(),
        "cliques": clique_list,
        "every_vertex_in_clique": every_vertex_in_clique(g, &cliques),
        "decomposition": {
            "v_delta": labels(&dec.v_delta),
            "v_gamma": labels(&dec.v_gamma),
            "e_delta": edge_labels(&dec.e_delta),
            "e_gamma": edge_labels(&dec.e_gamma),
            "e_delta_gamma": edge_labels(&dec.e_delta_gamma),
        },
        "coherence": {
            "rule": "closed",
            "classes": coherence.components.iter().map(|c| labels(c)).collect::<Vec<_>>(),
            "all_classes_complete": coherence.all_components_complete(),
        },
        "canonical_form": canonical,
    }))
}

fn algebra_section<F: Field>(g: &Graph, k: usize, tag: &F::Tag, warnings: &mut Vec<String>) -> Result<Value, CliError> {
    let alg = GraphLieAlgebra::<F>::build(g, k, tag)?;
    let (dim_v, dim_w, dim_u) = alg.dims();
    let jacobi = alg.verify_jacobi();
    if !jacobi.holds {
        return Err(CliError::Consistency(format!("Jacobi identity fails at {:?}", jacobi.witness)));
    }
    let dims = |s: Vec<liegraph::linalg::Subspace<F>>| s.iter().map(|x| x.dim()).collect::<Vec<_>>();
    let series = match alg.verify_series_closed_form() {
        Ok(c) => {
            if !c.holds() {
                return Err(CliError::Consistency(format!("series differ from their closed forms: {c:?}")));
            }
            json!(true)
        }
        Err(e) => {
            warnings.push(format!("series closed forms: {e}"));
            refusal(e)
        }
    };
    let oracle = alg.center_oracle();
    let center_formula = match alg.center_formula() {
        Ok(z) => {
            if z != oracle {
                return Err(CliError::Consistency("center formula disagrees with the direct computation".into()));
            }
            json!(z.dim())
        }
        Err(e) => {
            warnings.push(format!("center formula: {e}"));
            let parts = alg.center_formula_parts();
            json!({ "refused": e.to_string(), "formula_dim": parts.dim(), "contained_in_center": parts.is_subspace_of(&oracle) })
        }
    };
    let nilradical = match alg.nilradical() {
        Ok(nr) => json!(nr.dim()),
        Err(Error::Consistency(m)) => return Err(CliError::Consistency(m)),
        Err(e) => {
            warnings.push(format!("nilradical: {e}"));
            refusal(e)
        }
    };
    let fingerprint = match alg.fingerprint() {
        Ok(f) => serde_json::to_value(f).expect("serializable"),
        Err(e) => {
            warnings.push(format!("fingerprint: {e}"));
            refusal(e)
        }
    };
    let weight_conditions = match alg.weight_conditions() {
        Ok(()) => json!(true),
        Err(e) => {
            warnings.push(e.to_string());
            json!(false)
        }
    };
    let cs = alg.completely_solvable_check();
    let incidence = alg.clique_incidence_matrix();
    Ok(json!({
        "field": F::field_name(tag),
        "dim": alg.dim(),
        "dim_v": dim_v,
        "dim_w": dim_w,
        "dim_u": dim_u,
        "jacobi": { "holds": jacobi.holds, "triples_checked": jacobi.triples_checked },
        "derived_series": dims(alg.derived_series()),
        "lower_central_series": dims(alg.lower_central_series()),
        "nilpotent": alg.is_nilpotent(),
        "series_closed_forms": series,
        "center_dim": oracle.dim(),
        "center_formula_dim": center_formula,
        "nilradical_dim": nilradical,
        "derivations_dim": alg.derivation_space().dim(),
        "incidence_rank": incidence.rank(),
        "ker_a_dim": alg.incidence_kernel().dim(),
        "weight_conditions": weight_conditions,
        "completely_solvable": { "holds": cs.holds, "derived_is_v_plus_w": cs.derived_is_v_plus_w },
        "fingerprint": fingerprint,
    }))
}
