use thiserror::Error;

/// Errors raised by the library. Every fallible public operation returns this.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("vertex {vertex} is not in a graph on {order} vertices")]
    InvalidVertex { vertex: usize, order: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Floating-point clustering disagreed with exact multiplicities at every
    /// precision up to the escalation ceiling.
    #[error("precision error: {0}")]
    Precision(String),

    #[error("indeterminate numeric verdict: {0}")]
    Indeterminate(String),

    #[error("extended arithmetic undefined: {0}")]
    UndefinedArithmetic(String),

    #[error("projector entry diverges: {0}")]
    InfiniteEntry(String),

    /// A property that holds for every graph failed on a concrete instance.
    #[error("property violated: {0}")]
    Violation(String),

    /// Pairwise strong cospectrality failed to be transitive. Carries a dump.
    #[error("strong cospectrality not transitive: {0}")]
    Transitivity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
