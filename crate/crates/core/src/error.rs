use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("shape mismatch in {op}: {detail}")]
    ShapeMismatch { op: &'static str, detail: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("column {column} of the right-hand side is not in the image of the matrix")]
    NotLiftable { column: usize },
    #[error("lifting failed in degree {degree}: column {column} is not in the image of the target differential")]
    LiftFailed { degree: usize, column: usize },
    #[error("not a complex: phi_{k} * phi_{kp1} is nonzero", kp1 = .k + 1)]
    NotAComplex { k: usize },
    #[error("not locally minimalizable over the polynomial ring: entry ({row}, {col}) of phi_{k} has a nonzero constant term but positive degree")]
    NotMinimalizable { k: usize, row: usize, col: usize },
    #[error("resolution did not terminate within {max_length} steps")]
    ResolutionTooLong { max_length: usize },
    #[error("ideal is not proper")]
    UnitIdeal,
    #[error("tuple is not a complete intersection: codimension {codim} but {len} elements")]
    NotCompleteIntersection { codim: String, len: usize },
    #[error("element {index} of the tuple is not a member of the target ideal")]
    NotMember { index: usize },
    #[error("target ideal is not Cohen-Macaulay of codimension {expected}: resolution length {length}, codimension {codim}")]
    NotCohenMacaulay {
        expected: usize,
        length: usize,
        codim: String,
    },
    #[error("chain maps have different degree-0 components")]
    DifferentBaseMaps,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

pub(crate) fn shape(op: &'static str, detail: impl Into<String>) -> AlgebraError {
    AlgebraError::ShapeMismatch {
        op,
        detail: detail.into(),
    }
}
