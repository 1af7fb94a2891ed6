use std::fmt;

use serde::Serialize;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A model input lies outside the domain on which the equation is defined.
    #[error("domain error: {quantity} must be {requirement} (got {value})")]
    Domain {
        quantity: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("{operation} is not defined for the {variant} oxide model")]
    Variant {
        operation: &'static str,
        variant: &'static str,
    },

    #[error("invalid waveform: {0}")]
    Waveform(String),

    #[error("parameter `{name}`: {attempts} consecutive draws fell at or below the floor {floor}")]
    TruncationExhausted {
        name: String,
        floor: f64,
        attempts: usize,
    },

    #[error("model input `{input}` cannot drive the {mechanism} lifetime model")]
    IncompatibleBinding { input: String, mechanism: String },

    #[error("lifetime map is not monotone in `{0}` over the distribution support")]
    NonMonotone(String),

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("invalid sample at index {index}: {value} (samples must be finite and > 0)")]
    InvalidSample { index: usize, value: f64 },

    #[error("no convergence after {0} iterations")]
    NonConvergence(usize),

    #[error("invalid scenario:\n{}", format_diagnostics(.0))]
    InvalidScenario(Vec<Diagnostic>),
}

impl Error {
    pub(crate) fn domain(quantity: &'static str, requirement: &'static str, value: f64) -> Self {
        Error::Domain {
            quantity,
            requirement,
            value,
        }
    }

    /// True for errors caused by the supplied input data or configuration
    /// rather than by evaluating a model outside its domain.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidScenario(_)
                | Error::InsufficientData { .. }
                | Error::InvalidSample { .. }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

/// One finding from validating parameters or a scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message: message.into(),
        }
    }

    pub fn warning(message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| format!("  {d}"))
        .collect::<Vec<_>>()
        .join("\n")
}
