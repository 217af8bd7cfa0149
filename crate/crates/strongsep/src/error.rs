use alloc::string::String;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("order unknown: series vanishes up to its truncation order")]
    UnknownOrder,
    #[error("indeterminate comparison: series agree up to truncation")]
    Indeterminate,
    #[error("exponent groups do not match")]
    ExponentGroupMismatch,
    #[error("coefficient leaves the supported scalar fields")]
    DegreeTooHigh,
    #[error("exponent denominator {denom} exceeds bound {bound}")]
    DenominatorBound { denom: i64, bound: i64 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("segment is not an edge of the polygon")]
    NotAnEdge,
    #[error("polygon has no edges")]
    NoEdges,
    #[error("recentering did not converge within {steps} steps")]
    NonConvergence { steps: usize },
    #[error("no real root found where one is guaranteed")]
    NoRealRoot,
    #[error("claim chain broken at step {step}: {reason}")]
    ChainBroken { step: usize, reason: String },
    #[error("empty domain")]
    EmptyDomain,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;
