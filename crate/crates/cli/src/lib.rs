//! Command-line front end: evaluation, table reproduction, sum inspection,
//! conjecture screening, fixture fitting and self checks.

pub mod commands;
pub mod record;
pub mod selftest;

use std::fmt;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok,
    Failure,
    InvalidSpec,
    VerificationFailed,
}

impl Exit {
    pub fn code(self) -> i32 {
        match self {
            Exit::Ok => 0,
            Exit::Failure => 1,
            Exit::InvalidSpec => 2,
            Exit::VerificationFailed => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn new(exit: Exit, message: impl Into<String>) -> Self {
        CliError { exit, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub type CmdResult = Result<Exit, CliError>;
