use thiserror::Error;

/// Errors shared across the toolkit.
///
/// The CLI maps these onto process exit codes: parse/usage problems exit 2,
/// exhausted budgets exit 3, everything else is an ordinary failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set size {0} exceeds the supported maximum of {max}", max = crate::set::MAX_GROUND)]
    GroundTooLarge(usize),

    #[error("element {element} out of range for ground set of size {ground}")]
    ElementOutOfRange { element: usize, ground: usize },

    #[error("family contains an empty member; no finite cover exists")]
    Uncoverable,

    #[error("lambda must be a positive rational, got {0}")]
    NonPositiveLambda(String),

    #[error("node budget of {limit} exhausted after {nodes} branch nodes ({covers_found} covers found so far)")]
    BudgetExceeded {
        limit: u64,
        nodes: u64,
        covers_found: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("family is not uniform and no explicit size cap was supplied")]
    CapRequired,

    #[error(
        "kernel relation is not transitive: members {a} and {b} overlap in {ab} elements, \
         {b} and {c} in {bc}, but {a} and {c} only in {ac}"
    )]
    TransitivityViolated {
        a: usize,
        b: usize,
        c: usize,
        ab: usize,
        bc: usize,
        ac: usize,
    },

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("inequality check could not be decided within the log enclosure: {0}")]
    Inconclusive(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("ledger record is not valid JSON at line {line}: {message}")]
    LedgerFormat { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for precondition failures; keeps call sites one-liners.
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
