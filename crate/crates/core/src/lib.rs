pub mod algebra;
pub mod error;
pub mod field;
pub mod graphs;
pub mod linalg;
pub mod metric;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, Fp, OrderedField, PrimeModulus, Rational};

pub type QAlgebra = algebra::GraphLieAlgebra<Rational>;
pub type FpAlgebra = algebra::GraphLieAlgebra<Fp>;
pub type QMatrix = linalg::Matrix<Rational>;
pub type RealMatrix = linalg::Matrix<f64>;
pub type QSubspace = linalg::Subspace<Rational>;
pub type QMetric = metric::MetricTensor<Rational>;
pub type QMetricAlgebra = metric::MetricAlgebra<Rational>;
pub type RealMetricAlgebra = metric::MetricAlgebra<f64>;
