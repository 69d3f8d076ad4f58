use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("division by the zero polynomial")]
    ZeroPolynomialDivisor,

    #[error("reversal degree {degree} is below the polynomial degree {actual}")]
    ReverseDegree { degree: usize, actual: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid Toeplitz matrix: {0}")]
    InvalidMatrix(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("constant term of the matrix series is not invertible")]
    SingularConstantTerm,

    #[error("leading coefficient matrix of the divisor is not invertible")]
    SingularLeadingMatrix,

    #[error("dividend degree {dividend:?} is below divisor degree {divisor}")]
    DegreePrecondition { dividend: Option<usize>, divisor: usize },

    #[error("dividend needs inverse order {needed}, only {available} precomputed")]
    InsufficientOrder { needed: usize, available: usize },

    /// The Euclidean remainder sequence jumped past the degree it had to hit.
    #[error("degenerate remainder degree sequence: expected degree {expected}, found {found:?}")]
    DegenerateDegreeSequence { expected: i64, found: Option<usize> },

    #[error("recovered triple is not a syzygy: {0}")]
    InconsistentSyzygy(String),

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("invalid literal {literal:?}: {reason}")]
    Literal { literal: String, reason: &'static str },

    #[error("invalid instance: {0}")]
    Instance(String),
}

impl Error {
    /// True for every failure caused by a non-invertible matrix.
    pub fn is_singular(&self) -> bool {
        matches!(
            self,
            Error::Singular(_) | Error::SingularConstantTerm | Error::SingularLeadingMatrix
        )
    }
}
