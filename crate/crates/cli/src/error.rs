use std::fmt;

use adjx_core::Error;

/// Everything that ends a run with a nonzero status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input.
    Usage(String),
    /// A `check` comparison failed.
    Mismatch(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 3,
            CliError::Core(e) => match e {
                Error::DegenerateProjection { .. } | Error::RetriesExhausted { .. } => 2,
                Error::SingularInput => 4,
                Error::SetupInvariantViolation(_) => 5,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Mismatch(m) => write!(f, "mismatch: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let degenerate = Error::DegenerateProjection { degree: 1, n: 5 };
        let exhausted = Error::RetriesExhausted {
            attempts: 8,
            last_degree: 1,
            n: 5,
        };
        assert_eq!(CliError::from(degenerate).exit_code(), 2);
        assert_eq!(CliError::from(exhausted).exit_code(), 2);
        assert_eq!(CliError::Usage(String::new()).exit_code(), 3);
        assert_eq!(CliError::from(Error::SingularInput).exit_code(), 4);
        assert_eq!(CliError::from(Error::SetupInvariantViolation(String::new())).exit_code(), 5);
        assert_eq!(CliError::Mismatch(String::new()).exit_code(), 1);
    }
}
