use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("ambiguous evaluation at breakpoint {0} of a discontinuous function")]
    AmbiguousBreakpoint(String),

    #[error("outside domain: {0}")]
    Domain(String),

    #[error("point is not representable at this level: {0}")]
    NotRepresentable(String),

    #[error("orbit size exceeded cap of {cap} states; raise the cap")]
    OrbitCap { cap: usize },

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("staircase complement has infinite volume")]
    InfiniteVolume,

    #[error("element is a unit (nonzero constant term)")]
    UnitElement,

    #[error("internal invariant violation: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for the CLI: 1 for user errors, 2 for broken invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 2,
            _ => 1,
        }
    }
}
