use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points affinely span the whole space; no hyperplane contains them")]
    RankTooHigh,
    #[error("BadTarget: target dimension {target} exceeds ambient dimension {dimension}")]
    BadTarget { target: usize, dimension: usize },
    #[error("set {0} is empty")]
    EmptySet(usize),
    #[error("too few points: need at least {needed}, got {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("flat misses the hull of set {0}")]
    FlatMissesSet(usize),
    #[error("malformed instance: {0}")]
    MalformedInstance(String),
    #[error("set {0} has more than two points")]
    SetTooLarge(usize),
    #[error("NoOriginSet: family has no set equal to {{0}}")]
    NoOriginSet,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("BadK: clique size {k} must satisfy 2 <= k <= n = {n}")]
    BadK { k: usize, n: usize },
    #[error("brute-force budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
