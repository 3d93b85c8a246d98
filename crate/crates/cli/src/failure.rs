use std::fmt;

use specblock::Error;

/// A command failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Cap(String),
    Oracle(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Oracle(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) => write!(f, "error: {m}"),
            Failure::Cap(m) => write!(
                f,
                "error: {m}; raise --cap or the \"cap\" field to allow a larger search"
            ),
            Failure::Oracle(m) => write!(f, "oracle disagreement: {m}"),
            Failure::Internal(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::SolverFailure(_) => Failure::Internal(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}
