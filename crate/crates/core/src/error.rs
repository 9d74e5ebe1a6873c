use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid generator family: {0}")]
    InvalidFamily(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid number: {0}")]
    InvalidNumber(String),

    #[error("clique size must be at least 3, got {0}")]
    CliqueSize(usize),

    #[error("size guard exceeded: n = {n} > {limit}")]
    SizeGuard { n: usize, limit: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric within tolerance {tol}")]
    NotSymmetric { tol: f64 },

    #[error("metric is not positive definite")]
    NotPositiveDefinite,

    #[error("weights: {0}")]
    Weights(String),

    #[error("formula requires characteristic != 2; use the direct oracle")]
    CharacteristicTwo,

    #[error("formula hypothesis fails: {0}")]
    Hypothesis(String),

    #[error("not a bijection: {0}")]
    NotBijection(String),

    #[error("element is not in ker(A)")]
    NotInKernel,

    #[error("operation needs an exact metric")]
    InexactMetric,

    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
