use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no value supplied for variable `{0}`")]
    MissingVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate interpolation node in variable `{0}`")]
    DuplicateNode(String),
    #[error("inconsistent interpolation grid: {0}")]
    InconsistentGrid(String),
    #[error("invalid arch specification: {0}")]
    InvalidSpec(String),
    #[error("no little arch starting at position {0}")]
    NoLittleArch(usize),
    #[error("plaquette weight denominator vanishes at site {0}")]
    SingularWeight(usize),
    #[error("eigenvalue-1 eigenspace has dimension {0}, expected 1")]
    DegenerateKernel(usize),
    #[error("normalizing component vanishes at the requested point")]
    Normalization,
    #[error("coincident alpha parameters")]
    CoincidentAlpha,
    #[error("pole collision between alpha and beta parameters")]
    PoleCollision,
    #[error("coincident gamma parameters")]
    CoincidentGamma,
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed FPL grid: {0}")]
    MalformedGrid(String),
    #[error("inconsistent region sizes: {0}")]
    InconsistentSize(String),
    #[error("time budget of {0} s exceeded")]
    Budget(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
