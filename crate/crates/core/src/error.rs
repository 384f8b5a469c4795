use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    InvalidPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("quiver is not connected")]
    NotConnected,
    #[error("ideal is not admissible within length cap {cap}: {detail}")]
    NotAdmissible { cap: usize, detail: String },
    #[error("quiver has an oriented cycle")]
    NotTriangular,
    #[error("representation violates relation #{0}")]
    RelationViolated(usize),
    #[error("operation requires a nonzero module")]
    ZeroModule,
    #[error("complex does not fit the window [0, {0}]")]
    WindowOverflow(usize),
    #[error("complex is invalid at degree {degree}: {detail}")]
    InvalidComplex { degree: usize, detail: String },
    #[error("acyclic complex has cohomological range 0")]
    ZeroRange,
    #[error("algebra is not gentle: {0}")]
    NotGentle(String),
    #[error("algebra is not a one-cycle gentle algebra")]
    NotOneCycleGentle,
    #[error("invalid band: {0}")]
    InvalidBand(String),
    #[error("band parameter must be nonzero")]
    ZeroParameter,
    #[error("duplicate parameter {0}")]
    DuplicateParameter(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
