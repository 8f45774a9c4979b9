//! Library surface of the `symmax` command-line tool, split out of the
//! binary so the integration tests can exercise problem-file parsing,
//! operator expressions, and report construction directly.

pub mod expr;
pub mod report;
pub mod schema;

/// User-facing errors, split by exit code: malformed input (exit 1) versus a
/// problem that is provably infeasible before any solver runs (exit 3).
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Infeasible(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Infeasible(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Infeasible(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<symmax_core::Error> for CliError {
    fn from(e: symmax_core::Error) -> Self {
        match e {
            symmax_core::Error::Infeasible(_) => CliError::Infeasible(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    // serde_json's Display carries line and column, which is the diagnostic
    // users need for a malformed problem file.
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
