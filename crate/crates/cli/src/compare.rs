use std::path::Path;

use liegraph::algebra::GraphLieAlgebra;
use liegraph::graphs::{canonical_form_with_limit, find_isomorphism};
use liegraph::Rational;
use serde_json::{json, Map, Value};

use crate::report::{self, labels};
use crate::{read_graph, CliError};

pub fn run(a: &Path, b: &Path, k: usize, max_n: usize) -> Result<Value, CliError> {
    let ga = read_graph(a)?;
    let gb = read_graph(b)?;
    let ca = canonical_form_with_limit(&ga, max_n)?;
    let cb = canonical_form_with_limit(&gb, max_n)?;
    let graphs_isomorphic = ga.n() == gb.n() && ca.edges == cb.edges;
    let alg_a = GraphLieAlgebra::<Rational>::build(&ga, k, &())?;
    let alg_b = GraphLieAlgebra::<Rational>::build(&gb, k, &())?;
    let fa = alg_a.fingerprint()?;
    let fb = alg_b.fingerprint()?;
    let fingerprints_equal = fa == fb;

    let witness = if graphs_isomorphic {
        let sigma = find_isomorphism(&ga, &gb, max_n)?
            .ok_or_else(|| CliError::Consistency("equal canonical forms but no isomorphism found".into()))?;
        match alg_a.isomorphism_from_permutation(&alg_b, &sigma)? {
            Ok(_) => json!({ "permutation": labels(&sigma), "algebra_map_verified": true }),
            Err(failure) => {
                return Err(CliError::Consistency(format!(
                    "graph isomorphism does not induce an algebra isomorphism: {failure}"
                )))
            }
        }
    } else {
        Value::Null
    };
    if graphs_isomorphic && !fingerprints_equal {
        return Err(CliError::Consistency("isomorphic graphs with different fingerprints".into()));
    }
    let mut sections = Map::new();
    sections.insert(
        "comparison".into(),
        json!({
            "graphs_isomorphic": graphs_isomorphic,
            "fingerprints_equal": fingerprints_equal,
            "fingerprint_collision": !graphs_isomorphic && fingerprints_equal,
            "witness": witness,
            "fingerprints": { "a": fa, "b": fb },
        }),
    );
    let digest = report::digest(&format!("{}\n{}", ga.to_edge_list(), gb.to_edge_list()));
    let config = json!({ "k": k, "field": "q", "max_n": max_n, "seed": 0 });
    Ok(report::envelope("compare", digest, config, sections))
}
