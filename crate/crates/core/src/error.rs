/// Every failure a solver can report. The variant name is the stable
/// identifier surfaced by the command-line front end.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("NoSignChange: f({lo}) = {f_lo} and f({hi}) = {f_hi} do not bracket a root")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("MaxIterations: not converged after {0} iterations")]
    MaxIterations(usize),
    #[error("NonFinite: solution left the finite range at r = {0}")]
    NonFinite(f64),
    #[error("DomainError: {0}")]
    DomainError(String),
    #[error("InvalidMode: {0}")]
    InvalidMode(String),
    #[error("NotPropagating: {0}")]
    NotPropagating(String),
    #[error("NoModes: {0}")]
    NoModes(String),
    #[error("InvalidProfile: {0}")]
    InvalidProfile(String),
    #[error("NonConverged: {0}")]
    NonConverged(String),
    #[error("NoResonances: {0}")]
    NoResonances(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::NoSignChange { .. } => "NoSignChange",
            Error::MaxIterations(_) => "MaxIterations",
            Error::NonFinite(_) => "NonFinite",
            Error::DomainError(_) => "DomainError",
            Error::InvalidMode(_) => "InvalidMode",
            Error::NotPropagating(_) => "NotPropagating",
            Error::NoModes(_) => "NoModes",
            Error::InvalidProfile(_) => "InvalidProfile",
            Error::NonConverged(_) => "NonConverged",
            Error::NoResonances(_) => "NoResonances",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::DomainError(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
