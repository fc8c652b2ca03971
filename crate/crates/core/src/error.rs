use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A mathematical precondition of a construction does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An enumeration would exceed the configured budget.
    #[error("budget exceeded: {what} needs {needed} items, limit is {limit}")]
    Budget {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    /// A checked invariant did not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) | Error::Internal(_) => 1,
            Error::Budget { .. } => 3,
            _ => 2,
        }
    }
}

/// Default cap on the number of items any single exhaustive enumeration visits.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

pub(crate) fn check_budget(what: &str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::Budget {
            what: what.to_string(),
            needed,
            limit,
        })
    } else {
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn sat_pow(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
