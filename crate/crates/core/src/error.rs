use thiserror::Error;

/// Errors raised by the exact-arithmetic layer, the solvers and the criteria.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    #[error("invalid q = {0}: q must be rational with |q| != 1 (this also excludes 0 and all roots of unity)")]
    InvalidQ(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("twist a = {0} is not in standard form; normalize it with multiplicative_standard_form first")]
    NonStandardTwist(String),

    #[error("matrix is singular over Q(x)")]
    SingularMatrix,

    #[error("degree bound {needed} exceeds the configured cap {cap}")]
    BoundExceeded { needed: usize, cap: usize },

    #[error("sigma power {0} overflows the supported range")]
    PowerOverflow(i64),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
