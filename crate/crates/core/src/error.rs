use thiserror::Error;

/// Errors raised anywhere in the approximation pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arguments that violate an operation's preconditions.
    #[error("usage error: {0}")]
    Usage(String),

    /// Argument outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed to converge or produced non-finite output.
    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("moment table is missing entry {0}")]
    IncompleteTable(String),

    #[error("moments of order {0} are not supported (maximum is {max})", max = crate::moments::MAX_ORDER)]
    UnsupportedOrder(u32),

    /// The statistic has no usable leading variance term.
    #[error("degenerate statistic: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
