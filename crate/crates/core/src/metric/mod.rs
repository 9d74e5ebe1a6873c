mod algebra;
mod curvature;
mod iwasawa;
mod soliton;
mod tensor;

pub use algebra::MetricAlgebra;
pub use curvature::{
    curvature_operator_spectrum, generalized_eigenvalues, lambda2_gram, lambda2_pairs, levi_civita, sectional_formula, CurvatureData,
    OperatorSpectrum, NONPOSITIVE_TOL,
};
pub use iwasawa::{clique_sum_candidate, g1_subalgebra, restrict_to_g1, split_g1_g2, IwasawaReport, Splitting};
pub use soliton::{
    random_diagonal_metric, soliton_search_diagonal, stably_ricci_diagonal_test, SearchConfig, SearchResult,
    SolitonCertificate, SolitonOutcome, StablyDiagonalReport,
};
pub use tensor::MetricTensor;
