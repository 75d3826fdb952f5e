use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be positive and finite, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("evaluation point must be finite and non-negative, got {0}")]
    InvalidPoint(f64),

    #[error("probability must lie strictly inside (0, 1), got {0}")]
    InvalidProbability(f64),

    /// The survival (or distribution) function underflowed to zero even in
    /// log space, so the requested rate is undefined at this point.
    #[error("support exhausted at t = {0}")]
    SupportExhausted(f64),

    #[error("record index {0} outside 1..=170")]
    InvalidIndex(usize),

    #[error("index m = {m} must be at least n = {n}")]
    IndexOrder { m: usize, n: usize },

    #[error("psi ratio is degenerate for n = {n}, m = {m} (psi_1 vanishes identically)")]
    DegenerateRatio { n: usize, m: usize },

    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),

    #[error("{0} limit is not positive and finite")]
    NonFiniteLimit(&'static str),

    #[error("sequence does not settle: accelerated residual grows")]
    Oscillating,

    #[error("need at least {needed} iterates, got {got}")]
    TooFewIterates { needed: usize, got: usize },

    #[error("adaptive quadrature did not converge (estimate {estimate}, error {error})")]
    NonConvergence { estimate: f64, error: f64 },

    #[error("invalid bracket: middle point must be interior and dominate both ends")]
    InvalidBracket,

    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),

    #[error("curve value {value} at t = {t} is negative")]
    NonPositiveValue { t: f64, value: f64 },

    #[error("kernel value {value} at row {row}, column {col} is negative")]
    NegativeKernel { row: usize, col: usize, value: f64 },

    #[error("sample {sample} needed more than {cap} draws")]
    DrawCapExceeded { sample: usize, cap: u64 },

    #[error("sequential scan supports record index up to {max}, got {n}")]
    ScanIndexTooLarge { n: usize, max: usize },
}
