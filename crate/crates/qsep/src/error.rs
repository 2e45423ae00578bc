use std::fmt;

/// A command failure, classified by the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Internal numeric failure (exit 1).
    Numeric(String),
    /// Unreadable input, malformed JSON or schema violation (exit 2).
    Parse(String),
    /// Well-formed input that breaks a physical or structural invariant (exit 3).
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Numeric(m) | CliError::Parse(m) | CliError::Invariant(m) => m,
        }
    }

    pub(crate) fn parse(field: &str, detail: impl fmt::Display) -> Self {
        CliError::Parse(format!("{field}: {detail}"))
    }

    pub(crate) fn invariant(field: &str, detail: impl fmt::Display) -> Self {
        CliError::Invariant(format!("{field}: {detail}"))
    }

    /// Attributes a core error to an input field.
    pub(crate) fn from_core(field: &str, err: qsep_core::Error) -> Self {
        match err {
            e if e.is_contract_violation() => CliError::invariant(field, e),
            e @ qsep_core::Error::Dimension { .. } => CliError::parse(field, e),
            e @ qsep_core::Error::NonFinite { .. } => CliError::parse(field, e),
            e => CliError::Numeric(format!("{field}: {e}")),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

impl std::error::Error for CliError {}
