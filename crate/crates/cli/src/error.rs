use std::fmt;

use wearsim_core::Error as CoreError;

pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_IO: u8 = 74;

#[derive(Debug)]
pub enum CliError {
    /// Missing or contradictory flags.
    Usage(String),
    /// Malformed input file or a scenario that fails validation.
    Data(String),
    /// A model evaluated outside its domain.
    Domain(String),
    /// Failure writing an output file.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Domain(m) | CliError::Io(m) => {
                f.write_str(m)
            }
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        if e.is_input_error() {
            CliError::Data(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}
