use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{parse_rational, render_rational, Rational};

/// Undirected simple graph on vertices `0..n`.
///
/// The Rust API is 0-based; text formats and reports use labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<BTreeSet<usize>>,
    weights: Option<Vec<Rational>>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has an endpoint outside 1..={n}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", a + 1)));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    a.min(b) + 1,
                    a.max(b) + 1
                )));
            }
        }
        let mut neighbors = vec![BTreeSet::new(); n];
        for &(a, b) in &set {
            neighbors[a].insert(b);
            neighbors[b].insert(a);
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
            neighbors,
            weights: None,
        })
    }

    /// Same as [`Graph::new`] but with 1-based labels.
    pub fn from_labels(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a == 0 || b == 0) {
            return Err(Error::InvalidGraph(format!("label 0 in edge ({a}, {b})")));
        }
        Self::new(n, edges.iter().map(|&(a, b)| (a - 1, b - 1)))
    }

    pub fn with_weights(mut self, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != self.n {
            return Err(Error::Weights(format!(
                "expected {} weights, got {}",
                self.n,
                weights.len()
            )));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted, each pair `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.neighbors[a].contains(&b)
    }

    /// Position of edge `(a, b)` in [`Graph::edges`].
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.neighbors[v].is_empty()
    }

    pub fn weights(&self) -> Option<&[Rational]> {
        self.weights.as_deref()
    }

    /// Weights with the default of 1 filled in.
    pub fn weights_or_unit(&self) -> Vec<Rational> {
        self.weights
            .clone()
            .unwrap_or_else(|| vec![Rational::one(); self.n])
    }

    /// Relabels vertex `v` as `sigma[v]`. Weights travel with their vertex.
    pub fn permute(&self, sigma: &[usize]) -> Result<Graph> {
        check_permutation(sigma, self.n)?;
        let mut g = Graph::new(
            self.n,
            self.edges.iter().map(|&(a, b)| (sigma[a], sigma[b])),
        )?;
        if let Some(w) = &self.weights {
            let mut moved = vec![Rational::one(); self.n];
            for (v, x) in w.iter().enumerate() {
                moved[sigma[v]] = x.clone();
            }
            g.weights = Some(moved);
        }
        Ok(g)
    }

    /// Canonical text form (see [`parse_edge_list`]).
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.n).unwrap();
        for &(a, b) in &self.edges {
            writeln!(s, "{} {}", a + 1, b + 1).unwrap();
        }
        if let Some(w) = &self.weights {
            for (v, x) in w.iter().enumerate() {
                writeln!(s, "w {} {}", v + 1, render_rational(x)).unwrap();
            }
        }
        s
    }
}

pub(crate) fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::NotBijection(format!(
            "permutation has length {}, expected {n}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::NotBijection(format!("image {} repeated or out of range", s + 1)));
        }
        seen[s] = true;
    }
    Ok(())
}

/// Parses the edge-list text format.
///
/// ```text
/// # comment
/// 4          <- optional vertex count, first non-comment line
/// 1 2
/// 2 3
/// w 1 3/2    <- optional vertex weight (rational or integer)
/// ```
///
/// Without a count line, `n` is the largest endpoint.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut weights: Vec<(usize, usize, Rational)> = Vec::new();
    let mut first = true;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let label = |t: &str| -> Result<usize> {
            let v: usize = t
                .parse()
                .map_err(|_| err(format!("'{t}' is not a vertex label")))?;
            if v == 0 {
                return Err(err("vertex labels start at 1".into()));
            }
            Ok(v)
        };
        match tokens.as_slice() {
            [count] if first => {
                let n: usize = count
                    .parse()
                    .map_err(|_| err(format!("'{count}' is not a vertex count")))?;
                if n == 0 {
                    return Err(err("vertex count must be positive".into()));
                }
                declared = Some(n);
            }
            ["w", v, value] => {
                let v = label(v)?;
                let x = parse_rational(value).map_err(|e| err(e.to_string()))?;
                weights.push((line_no, v, x));
            }
            [a, b] => {
                let (a, b) = (label(a)?, label(b)?);
                if a == b {
                    return Err(err(format!("self-loop at vertex {a}")));
                }
                edges.push((line_no, a, b));
            }
            _ => return Err(err(format!("cannot parse '{line}'"))),
        }
        first = false;
    }

    let max_label = edges
        .iter()
        .flat_map(|&(_, a, b)| [a, b])
        .chain(weights.iter().map(|&(_, v, _)| v))
        .max()
        .unwrap_or(0);
    let n = match declared {
        Some(n) => n,
        None if max_label > 0 => max_label,
        None => {
            return Err(Error::Parse {
                line: 0,
                message: "empty graph description".into(),
            })
        }
    };

    let mut seen = BTreeSet::new();
    for &(line, a, b) in &edges {
        if a > n || b > n {
            return Err(Error::Parse {
                line,
                message: format!("endpoint out of range 1..={n}"),
            });
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate edge ({}, {})", a.min(b), a.max(b)),
            });
        }
    }
    let g = Graph::new(n, edges.iter().map(|&(_, a, b)| (a - 1, b - 1)))?;
    if weights.is_empty() {
        return Ok(g);
    }
    let mut w = vec![Rational::one(); n];
    let mut assigned = vec![false; n];
    for (line, v, x) in weights {
        if v > n {
            return Err(Error::Parse {
                line,
                message: format!("weight for vertex {v} outside 1..={n}"),
            });
        }
        if assigned[v - 1] {
            return Err(Error::Parse {
                line,
                message: format!("second weight for vertex {v}"),
            });
        }
        assigned[v - 1] = true;
        w[v - 1] = x;
    }
    g.with_weights(w)
}

/// Weight file: lines `i value` or `w i value`, `#` comments.
pub fn parse_weights(text: &str, n: usize) -> Result<Vec<Rational>> {
    let mut w = vec![Rational::one(); n];
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: idx + 1,
            message,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (v, value) = match tokens.as_slice() {
            ["w", v, value] | [v, value] => (*v, *value),
            _ => return Err(err(format!("cannot parse '{line}'"))),
        };
        let v: usize = v
            .parse()
            .map_err(|_| err(format!("'{v}' is not a vertex label")))?;
        if v == 0 || v > n {
            return Err(err(format!("vertex {v} outside 1..={n}")));
        }
        w[v - 1] = parse_rational(value).map_err(|e| err(e.to_string()))?;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    #[test]
    fn parses_triangle() {
        let g = parse_edge_list("3\n1 2\n2 3\n1 3").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert!(g.weights().is_none());
    }

    #[test]
    fn count_only_gives_edgeless_graph() {
        let g = parse_edge_list("2\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 0));
    }

    #[test]
    fn undeclared_count_uses_max_endpoint() {
        let g = parse_edge_list("# path\n1 2\n2 5\n").unwrap();
        assert_eq!(g.n(), 5);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("3\n1 1", 2, "self-loop"),
            ("3\n1 2\n\n2 1", 4, "duplicate"),
            ("3\n1 4", 2, "out of range"),
            ("3\n1 2 3 4", 2, "cannot parse"),
            ("3\n1 x", 2, "not a vertex label"),
            ("3\nw 1 1/0", 2, "invalid number"),
        ];
        for (text, line, needle) in cases {
            match parse_edge_list(text) {
                Err(Error::Parse { line: l, message }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert!(message.contains(needle), "{message}");
                }
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn weights_round_trip() {
        let g = parse_edge_list("3\n1 2\nw 2 -3/4\nw 3 5").unwrap();
        let w = g.weights().unwrap();
        assert_eq!(render_rational(&w[0]), "1");
        assert_eq!(render_rational(&w[1]), "-3/4");
        assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn permute_moves_edges_and_weights() {
        let g = Graph::from_labels(3, &[(1, 2), (2, 3)])
            .unwrap()
            .with_weights(vec![int(1), int(2), int(3)])
            .unwrap();
        let h = g.permute(&[2, 0, 1]).unwrap();
        assert_eq!(h.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(h.weights().unwrap()[2], int(1));
        assert!(g.permute(&[0, 0, 1]).is_err());
    }

    #[test]
    fn weight_file() {
        let w = parse_weights("# w\n1 2\nw 3 1/2\n", 3).unwrap();
        assert_eq!(w, vec![int(2), int(1), rat(1, 2)]);
        assert!(parse_weights("4 1", 3).is_err());
    }
}
