//! Command implementations behind the `branchix` binary.

pub mod args;
pub mod cache;
mod commands;
pub mod output;

pub use commands::run;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Verification ran and found a mismatch or a failed check.
    pub const MISMATCH: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const GUARD: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: exit::USAGE,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> CliError {
        CliError {
            code: exit::INTERNAL,
            message: message.into(),
        }
    }
}

impl From<branchix::Error> for CliError {
    fn from(e: branchix::Error) -> CliError {
        use branchix::Error as E;
        let code = match &e {
            E::NonPrimeModulus(_) | E::EvenCharacteristic | E::TooSmall(_) | E::ModulusTooLarge(_) => {
                return CliError::usage(format!("q must be an odd prime ({e})"));
            }
            E::UnsupportedDimension(_)
            | E::UnsupportedGroup(_)
            | E::UnsupportedK(_)
            | E::PolyParse { .. }
            | E::InsufficientPoints { .. }
            | E::CodeOutOfRange(_) => exit::USAGE,
            E::ResourceGuardExceeded { .. } | E::SizeGuardExceeded { .. } | E::DepthCapExceeded(_) => exit::GUARD,
            E::NonIntegralCoefficients { .. } | E::DimensionIncompatible { .. } => exit::MISMATCH,
            _ => exit::INTERNAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::internal(format!("i/o error: {e}"))
    }
}
