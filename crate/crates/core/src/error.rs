use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which family of maps a non-degeneracy diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Sigma,
    Tau,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Sigma => f.write_str("x"),
            Side::Tau => f.write_str("y"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("group order exceeds the limit of {limit}")]
    GroupTooLarge { limit: usize },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("group of order {order} is not a {p}-group")]
    NotPrimePower { order: usize, p: usize },

    #[error("non-degenerate fails at {side}={index}")]
    Degenerate { side: Side, index: usize },
    #[error("r is not bijective: r({x},{y}) = r({x2},{y2})")]
    NotBijective { x: usize, y: usize, x2: usize, y2: usize },
    #[error("braid relation fails at ({x},{y},{z})")]
    Braid { x: usize, y: usize, z: usize },
    #[error("{0} requires an involutive solution")]
    NotInvolutive(&'static str),
    #[error("the map is not a group automorphism")]
    NotAutomorphism,

    #[error("(A,{op}) not a group: {reason}")]
    BraceNotGroup { op: &'static str, reason: String },
    #[error("identities differ: {add} for + and {mul} for ∘")]
    IdentityMismatch { add: usize, mul: usize },
    #[error("compatibility fails at ({a},{b},{c})")]
    Compatibility { a: usize, b: usize, c: usize },
    #[error("subgroups do not form an exact factorization: {0}")]
    NotExactFactorization(String),
    #[error("not a radical ring: {0}")]
    NotRadical(String),
    #[error("not a ring: {0}")]
    NotRing(String),
    #[error("brace is not two-sided")]
    NotTwoSided,
    #[error("additive group is not abelian")]
    NotAbelianType,
    #[error("star operation is not associative")]
    NotStarAssociative,
    #[error("subset is not an ideal")]
    NotIdeal,
    #[error("operation requires more than one element")]
    TooSmall,

    #[error("size {n} exceeds the configured cap {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("invalid enumeration task: {0}")]
    InvalidTask(String),
    #[error("time budget exhausted after {completed} of {total} subtrees; partial results checkpointed")]
    TimeBudget { completed: usize, total: usize },
    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
