use thiserror::Error;

/// Failures of a command, each tied to a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed JSON, unknown schema, or bad command-line usage.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input that does not describe a valid problem.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("solver failed: {0}")]
    Solver(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub const EXIT_SOLVER: i32 = 2;
    pub const EXIT_INPUT: i32 = 3;
    pub const EXIT_VERIFY: i32 = 4;

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => Self::EXIT_INPUT,
            CliError::Solver(_) => Self::EXIT_SOLVER,
            CliError::Verification(_) => Self::EXIT_VERIFY,
        }
    }

    pub fn from_core(e: indef_core::Error) -> Self {
        use indef_core::Error as E;
        match e {
            E::SolverDiverged(_) | E::RetriesExhausted(_) | E::SingularFamily(_) => {
                CliError::Solver(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }

    pub fn io(context: &str, e: std::io::Error) -> Self {
        CliError::Input(format!("{context}: {e}"))
    }
}
