use thiserror::Error;

/// Errors surfaced by the homology engine.
///
/// Everything here is a contract violation by the caller (dimension mismatches,
/// malformed parameters) or a structural check failing (a composite that should
/// vanish does not). Internal computations are exact and cannot "drift".
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("matrix dimension mismatch: {0}")]
    ShapeMismatch(String),

    #[error("composite is nonzero: d_out * d_in != 0 (first nonzero entry at row {row}, col {col})")]
    CompositeNonzero { row: usize, col: usize },

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("boundary of a degree-0 form is undefined")]
    DegreeZeroBoundary,

    #[error("bracket table entries must be homogeneous quadratic")]
    NonHomogeneousStructure,

    #[error("expected a homogeneous polynomial of degree {expected}, found degree {found:?}")]
    NotHomogeneous { expected: usize, found: Option<usize> },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("listed generator #{index} is not a cycle")]
    NotACycle { index: usize },

    #[error("element does not lie in the expected subspace: {0}")]
    NotInSubspace(String),

    #[error("table not populated up to weight {requested} (have {available})")]
    TableDepth { requested: usize, available: usize },

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}
