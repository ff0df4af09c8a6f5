use anyon_specfun::SpecFunError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoreError {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("momentum {re} + {im}i is off the physical sheet")]
    Sheet { re: f64, im: f64 },
    #[error("forward direction: the angle must not be a multiple of pi")]
    Forward,
    #[error("{what} did not converge (estimate {estimate:e})")]
    NonConvergence { what: &'static str, estimate: f64 },
    #[error("integrator step size underflow at r = {r}")]
    StepFailure { r: f64 },
    #[error("matching window is empty")]
    MatchingEmpty,
    #[error("phase unwrapping is ambiguous near k = {k}")]
    UnwrapAmbiguity { k: f64 },
    #[error("resonance test inconclusive: |F(k_min)|/|F(k_ref)| = {ratio:e}")]
    InconclusiveResonance { ratio: f64 },
    #[error("lost root while tracing at mu = {mu}")]
    LostRoot { mu: f64 },
    #[error("channel sum truncated with tail {tail:e} above tolerance {tol:e}")]
    Truncation { tail: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(CoreError::Domain(msg.into()))
}
