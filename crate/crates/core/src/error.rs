use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported query: {0}")]
    Unsupported(String),

    /// The leading Hankel minor of order `order` vanishes, so the series is
    /// not normal at the requested Pade index.
    #[error("series is not normal: Hankel minor of order {order} vanishes")]
    NotNormal { order: usize },

    #[error("malformed approximant: {0}")]
    MalformedApproximant(String),

    /// `Q_{k,m}(1/b) = 0`; the lift needs a larger `m`.
    #[error("degenerate evaluation: Q_{{{k},{m}}}(1/{b}) = 0")]
    DegenerateEvaluation { k: usize, m: u32, b: u64 },

    #[error("reference interval too wide: {0}")]
    InsufficientPrecision(String),

    #[error("not enough usable convergents for k = {k}: found {found}, need {needed}")]
    InsufficientRecords { k: usize, found: usize, needed: usize },
}
