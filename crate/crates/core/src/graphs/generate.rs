use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Graph families accepted by [`generate`], written `kn:N`, `path:N`,
/// `cycle:N` and `gnp:N:P` on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Complete(usize),
    Path(usize),
    Cycle(usize),
    Gnp(usize, f64),
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = |why: &str| Error::InvalidFamily(format!("{s}: {why}"));
        let size = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| bad("vertex count must be a positive integer"))
        };
        match parts.as_slice() {
            ["kn", n] => Ok(Family::Complete(size(n)?)),
            ["path", n] => Ok(Family::Path(size(n)?)),
            ["cycle", n] => {
                let n = size(n)?;
                if n < 3 {
                    return Err(bad("a cycle needs at least 3 vertices"));
                }
                Ok(Family::Cycle(n))
            }
            ["gnp", n, p] => {
                let p: f64 = p.parse().map_err(|_| bad("edge probability is not a number"))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(bad("edge probability outside [0, 1]"));
                }
                Ok(Family::Gnp(size(n)?, p))
            }
            _ => Err(bad("expected kn:N, path:N, cycle:N or gnp:N:P")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "kn:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Gnp(n, p) => write!(f, "gnp:{n}:{p}"),
        }
    }
}

/// Deterministic graph for a family. Only `Gnp` consumes randomness:
/// Xoshiro256++ seeded with `seed`, one uniform draw per pair `i < j` in
/// lexicographic order.
pub fn generate(family: &Family, seed: u64) -> Result<Graph> {
    match *family {
        Family::Complete(n) => {
            Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        }
        Family::Path(n) => Graph::new(n, (1..n).map(|i| (i - 1, i))),
        Family::Cycle(n) => {
            if n < 3 {
                return Err(Error::InvalidFamily(format!("cycle:{n}")));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Gnp(n, p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidFamily(format!("gnp:{n}:{p}")));
            }
            let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random::<f64>() < p {
                        edges.push((i, j));
                    }
                }
            }
            Graph::new(n, edges)
        }
    }
}
