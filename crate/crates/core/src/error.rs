use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different groups")]
    MismatchedGroups,

    #[error("crossed-product elements have different contexts (group or action)")]
    ContextMismatch,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ball exceeds the element budget: needs about {estimate} elements, budget is {budget}")]
    BudgetExceeded { estimate: u128, budget: usize },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("parse error in {what} at position {pos}: {msg}")]
    Parse {
        what: &'static str,
        pos: usize,
        msg: String,
    },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("matrix is not Hermitian positive semidefinite (deviation {deviation:.3e})")]
    NotPositive { deviation: f64 },

    #[error("radius {radius} too small, need at least {needed}")]
    RadiusTooSmall { radius: usize, needed: usize },

    #[error("dense oracle limited to dimension {limit}, requested {dim}")]
    SizeExceeded { dim: usize, limit: usize },

    #[error("multiplier constant is infinite: {0}")]
    InfiniteMultiplier(String),

    #[error("growth fit: {0}")]
    NotPolynomial(String),

    #[error("norm estimate {value} exceeds the triangle bound {bound}")]
    TriangleBound { value: f64, bound: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(what: &'static str, pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            what,
            pos,
            msg: msg.into(),
        }
    }
}
