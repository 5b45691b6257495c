use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed quiver document: {0}")]
    Parse(String),
    #[error("unknown {kind} `{name}`")]
    Dangling { kind: &'static str, name: String },
    #[error("non-composable relation [{beta}, {alpha}]: source of `{beta}` is not the target of `{alpha}`")]
    NonComposableRelation { beta: String, alpha: String },
    #[error("duplicate {0}")]
    Duplicate(String),
    #[error("gentle axiom ({axiom}) violated at {location}: {detail}")]
    Axiom {
        axiom: u8,
        location: String,
        detail: String,
    },
    #[error("excluded shape: the quiver is {0}; loops on a single vertex and the Kronecker quiver are excluded")]
    ExcludedShape(&'static str),
    #[error("quiver is disconnected ({0} components); split it into connected blocks and run each separately")]
    Disconnected(usize),
    #[error("word is not composable: {0}")]
    NonComposable(String),
    #[error("word is not closed")]
    NotClosed,
    #[error("infeasible bounds: {0}")]
    Bounds(String),
    #[error("bidegree ({n}, {d}) is infinite-dimensional; supply a length cap")]
    NeedsCap { n: usize, d: i64 },
    #[error("cocycle is not in the span of the basis modulo coboundaries at bidegree ({n}, {d})")]
    Inconsistent { n: usize, d: i64 },
    #[error("input is not a cocycle")]
    NotCocycle,
    #[error("input is not atomic ({0} atoms)")]
    NotAtomic(usize),
    #[error("invalid class `{class}`: {reason}")]
    InvalidClass { class: String, reason: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Usage errors exit with 2, domain errors with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            _ => 1,
        }
    }
}
