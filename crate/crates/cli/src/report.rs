use std::io::Write;
use std::path::Path;

use liegraph::field::format_f64;
use liegraph::graphs::{Graph, DEFAULT_MAX_N};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Guard for exhaustive searches: `LIEGRAPH_MAX_N` when set, else the default.
pub fn max_n_from_env() -> Result<usize, CliError> {
    match std::env::var("LIEGRAPH_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("LIEGRAPH_MAX_N must be a non-negative integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

/// Float as a JSON number with 17 significant digits; `null` when not finite.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(serde_json::from_str(&format_f64(x)).expect("valid JSON number"))
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| float(x)).collect())
}

/// 1-based vertex labels.
pub fn labels(vs: &[usize]) -> Value {
    json!(vs.iter().map(|v| v + 1).collect::<Vec<_>>())
}

pub fn edge_labels(es: &[(usize, usize)]) -> Value {
    json!(es.iter().map(|(a, b)| [a + 1, b + 1]).collect::<Vec<_>>())
}

pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

/// Digest of the canonical edge-list text of a graph.
pub fn graph_digest(g: &Graph) -> String {
    digest(&g.to_edge_list())
}

/// Top-level report skeleton.
pub fn envelope(command: &str, input_digest: String, config: Value, sections: Map<String, Value>) -> Value {
    let mut root = Map::new();
    root.insert("tool".into(), json!("liegraph"));
    root.insert("version".into(), json!(VERSION));
    root.insert("command".into(), json!(command));
    root.insert("input_digest".into(), json!(input_digest));
    root.insert("config".into(), config);
    for (k, v) in sections {
        root.insert(k, v);
    }
    Value::Object(root)
}

pub fn refusal(message: impl std::fmt::Display) -> Value {
    json!({ "refused": message.to_string() })
}

/// Writes the JSON report (to `out` atomically, else stdout) and, with
/// `pretty`, a flat human-readable table on the other stream.
pub fn emit(report: &Value, out: Option<&Path>, pretty: bool) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("serializable") + "\n";
    match out {
        Some(path) => {
            write_atomic(path, text.as_bytes())?;
            if pretty {
                print!("{}", table(report));
            }
        }
        None => {
            print!("{text}");
            if pretty {
                eprint!("{}", table(report));
            }
        }
    }
    Ok(())
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Input(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// `path.to.key  value` lines for scalars and short arrays.
pub fn table(report: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::Array(items) if items.len() > 8 || items.iter().any(|x| x.is_object() || x.is_array()) => {
                out.push((prefix.to_string(), format!("[{} items]", items.len())));
            }
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", report, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:width$}  {v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_fixed_precision() {
        assert_eq!(float(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(float(25.0).to_string(), "2.5000000000000000e+1");
        assert_eq!(float(-0.0).to_string(), "0.0000000000000000e+0");
        assert_eq!(float(f64::NAN), Value::Null);
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            digest(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn table_flattens() {
        let t = table(&json!({"a": {"b": 1, "c": [1, 2]}, "d": "x"}));
        assert!(t.contains("a.b  1\n"));
        assert!(t.contains("a.c  [1,2]\n"));
    }
}
