use thiserror::Error;

/// Errors reported by the relation and circuit layers.
///
/// `Parse` covers malformed input text; everything else is a validation
/// failure on structurally well-formed data. The CLI maps the two classes
/// to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
    #[error("sequence is not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("operation requires a linear relation, got an affine one")]
    AffineInput,
    #[error("relation is not Lagrangian")]
    NotLagrangian,
    #[error("relation is not Kirchhoff")]
    NotKirchhoff,
    #[error("relation is not deterministic")]
    NotDeterministic,
    #[error("relation is not a graph state")]
    NotGraphState,
    #[error("admittance matrix must be symmetric with zero row sums")]
    InvalidAdmittance,
    #[error("divider weight must avoid 0 and 1")]
    InvalidDividerWeight,
    #[error("element is not a member of the relation")]
    NotAMember,
    #[error("netlist is malformed: {0}")]
    Netlist(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn dims(context: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
        }
    }

    /// True for errors raised while reading input text.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
