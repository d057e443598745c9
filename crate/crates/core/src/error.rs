use thiserror::Error;

/// Errors shared across the crate.
///
/// Predicates that can answer "no" return verdict types instead; an `Error`
/// means the inputs were not well-formed for the requested operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("structure tensor is not antisymmetric at pair ({i}, {j})")]
    AntisymmetryViolation { i: usize, j: usize },

    #[error("cannot parse scalar {input:?} over {field}")]
    ParseScalar { input: String, field: &'static str },

    #[error("subspace is not maximal isotropic")]
    NotMaximalIsotropic,

    #[error("real index is {index}, expected 0")]
    NonzeroRealIndex { index: usize },

    #[error("endomorphism has a nonzero imaginary part; input was not conjugate-paired real data")]
    NonRealOutput,

    #[error("subspace is not a subalgebra: bracket of basis rows {i} and {j} escapes")]
    NotSubalgebra { i: usize, j: usize },

    #[error("p is not contained in E")]
    PNotInE,

    #[error("curvature model's p differs from the nonnegative part of the grading")]
    PMismatch,

    #[error("no grading element exists: the eigenvalue system is inconsistent")]
    NoGradingElement,

    #[error("2-form is not antisymmetric at entry ({i}, {j})")]
    FormNotAntisymmetric { i: usize, j: usize },

    #[error("curvature tensor is not horizontal: kappa does not vanish on p (basis row {row})")]
    KappaNotHorizontal { row: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
