use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("chart singularity: {0}")]
    ChartSingularity(String),

    #[error("manifold and drive do not match: {manifold} cannot be driven by a {drive} drive")]
    FamilyMismatch {
        manifold: &'static str,
        drive: &'static str,
    },

    #[error("degenerate drive: {0}")]
    DegenerateDrive(String),

    #[error("no resonance: {0}")]
    NoResonance(String),

    #[error("negative branch: {0}")]
    NegativeBranch(String),

    #[error("divergent response: {0}")]
    DivergentResponse(String),

    #[error("root not found: {0}")]
    RootNotFound(String),

    #[error("integration failed at t = {t}: {reason}")]
    IntegrationFailure { t: f64, reason: String },

    #[error("trajectory is not cyclic: closure error {closure_error:e} exceeds {tolerance:e}")]
    NotCyclic { closure_error: f64, tolerance: f64 },

    #[error("time {t} lies outside the trajectory span [{start}, {end}]")]
    OutOfSpan { t: f64, start: f64, end: f64 },

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("propagation failed: {0}")]
    Propagation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short kebab-case tag, used as a status value in sweep output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::ChartSingularity(_) => "chart-singularity",
            Error::FamilyMismatch { .. } => "family-mismatch",
            Error::DegenerateDrive(_) => "degenerate-drive",
            Error::NoResonance(_) => "no-resonance",
            Error::NegativeBranch(_) => "negative-branch",
            Error::DivergentResponse(_) => "divergent-response",
            Error::RootNotFound(_) => "root-not-found",
            Error::IntegrationFailure { .. } => "integration-failure",
            Error::NotCyclic { .. } => "not-cyclic",
            Error::OutOfSpan { .. } => "out-of-span",
            Error::Truncation(_) => "truncation",
            Error::Propagation(_) => "propagation",
        }
    }

    /// True for errors caused by the inputs rather than by a numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::FamilyMismatch { .. }
                | Error::DegenerateDrive(_)
                | Error::NoResonance(_)
                | Error::NegativeBranch(_)
                | Error::DivergentResponse(_)
        )
    }
}
