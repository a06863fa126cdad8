use std::fmt;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Input = 2,
    Solver = 3,
    Verification = 4,
    Capacity = 5,
    Io = 6,
}

#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn new(exit: Exit, message: impl Into<String>) -> Self {
        Self {
            exit,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(Exit::Input, message)
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::new(Exit::Io, message)
    }

    pub fn code(&self) -> i32 {
        self.exit as i32
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<hyperc_core::Error> for CliError {
    fn from(e: hyperc_core::Error) -> Self {
        use hyperc_core::Error as E;
        let exit = match e {
            E::Domain { .. } | E::InvalidPair { .. } => Exit::Input,
            E::Singular(_) | E::Bracket { .. } | E::Residual { .. } => Exit::Solver,
            E::Verification(_) => Exit::Verification,
        };
        Self::new(exit, e.to_string())
    }
}

impl From<hyperc_exact::Error> for CliError {
    fn from(e: hyperc_exact::Error) -> Self {
        use hyperc_exact::Error as E;
        let exit = match e {
            E::Input(_) => Exit::Input,
            E::Capacity { .. } => Exit::Capacity,
            E::Divisibility(_) | E::Degenerate(_) | E::Certification { .. } => Exit::Verification,
        };
        Self::new(exit, e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
