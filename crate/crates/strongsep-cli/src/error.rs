use std::path::PathBuf;

use strongsep::separation::Verdict;

use crate::expr::ParseError;

/// Exit status of a successful `separate` run, by verdict.
pub fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::SameComponent => 0,
        Verdict::HypothesisViolated => 10,
        Verdict::NotGoodPosition => 11,
        Verdict::Undecided => 12,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{err}")]
    Parse { path: String, err: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {err}")]
    Io { path: PathBuf, err: std::io::Error },
    #[error("replay failed: {0} check(s) do not hold")]
    ReplayMismatch(usize),
    #[error("replay failed: {0}")]
    ReplayData(String),
    #[error("{0} propert(y/ies) failed")]
    PropsFailed(usize),
    #[error(transparent)]
    Core(#[from] strongsep::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use strongsep::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::ReplayMismatch(_) | CliError::ReplayData(_) => 4,
            CliError::PropsFailed(_) => 5,
            CliError::Core(e) => match e {
                E::UnknownOrder => 20,
                E::Indeterminate => 21,
                E::ExponentGroupMismatch => 22,
                E::DegreeTooHigh => 23,
                E::DenominatorBound { .. } => 24,
                E::ZeroPolynomial => 25,
                E::NotMonic => 26,
                E::NotAnEdge => 27,
                E::NoEdges => 28,
                E::NonConvergence { .. } => 29,
                E::NoRealRoot => 30,
                E::ChainBroken { .. } => 31,
                E::EmptyDomain => 32,
                E::InvalidInput(_) => 33,
            },
        }
    }
}
