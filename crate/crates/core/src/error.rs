use thiserror::Error;

/// Errors raised by field construction, polynomial and matrix algebra, and
/// the exhaustive scans built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field or state space too large: {0}")]
    SizeExceeded(String),
    #[error("polynomial is not irreducible over the base field")]
    NotIrreducible,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different contexts")]
    ContextMismatch,
    #[error("element is zero")]
    ZeroElement,
    #[error("integer {value} cannot be factored within trial-division bound {bound}")]
    FactorBoundExceeded { value: u64, bound: u64 },
    #[error("both arguments are zero")]
    BothZero,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("bound order violated: N1 = {n1} < N2 = {n2}")]
    BoundOrder { n1: u32, n2: u32 },
    #[error("scan of {needed} candidates exceeds bound {bound}")]
    ScanBoundExceeded { needed: String, bound: u64 },
    #[error("iteration bound {0} exceeded")]
    IterationBoundExceeded(u64),
    #[error("bad arguments: {0}")]
    BadArgs(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element does not generate the extension")]
    NotGenerator,
    #[error("base point is zero")]
    ZeroBasePoint,
    #[error("Moebius matrix is singular")]
    SingularMoebius,
    #[error("Moebius denominator vanishes")]
    ZeroDenominator,
    #[error("factor search exceeded: {0}")]
    FactorSearchExceeded(String),
    #[error("unknown statement {0:?}")]
    UnknownStatement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
