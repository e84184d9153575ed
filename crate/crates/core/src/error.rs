use thiserror::Error;

/// Errors produced by the algebra, the solvers, and the file formats.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot invert the zero element")]
    InversionOfZero,

    #[error("infimum of the empty set does not exist")]
    EmptyInf,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("vector is not Archimedean: entry {0} is bottom")]
    NotArchimedean(usize),

    #[error("residuation unbounded at coordinate {0}: column has no finite entry")]
    UnboundedCoordinate(usize),

    #[error("Kleene star diverges: max cycle mean {0} exceeds the multiplicative identity")]
    DivergentStar(f64),

    #[error("matrix has no cycles")]
    NoCycles,

    #[error("problem size {size} exceeds the cap {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("solution failed verification")]
    VerificationFailed,

    #[error("not a topology: {0}")]
    NotATopology(String),

    #[error("function is not a member of the subspace")]
    NotMember,

    #[error("subspace needs at least one generator")]
    NoGenerators,

    #[error("invalid scalar for {semifield}: {reason}")]
    InvalidScalar {
        semifield: &'static str,
        reason: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}
