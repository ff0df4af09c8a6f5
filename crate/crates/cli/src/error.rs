use anyon_core::CoreError;
use anyon_specfun::SpecFunError;

/// Failure of a command, classified by exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Exit code 2.
    Invalid(String),
    /// Exit code 3.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<String> for CliError {
    fn from(m: String) -> Self {
        CliError::Invalid(m)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let invalid = match &e {
            CoreError::Domain(_) | CoreError::Sheet { .. } | CoreError::Forward => true,
            CoreError::SpecFun(s) => !matches!(s, SpecFunError::Overflow { .. } | SpecFunError::NoConvergence(_)),
            _ => false,
        };
        if invalid {
            CliError::Invalid(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
