use std::fmt;

use heis_core::{ClassifyError, FieldError, FormsError, HeisError, OrbitsError, QuatError};

/// Failure with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub const TABLE_MISMATCH: u8 = 1;
pub const PARSE: u8 = 2;
pub const DIMENSION: u8 = 3;
pub const DEGENERATE: u8 = 4;
pub const INFINITE: u8 = 5;
pub const SPLIT: u8 = 6;
pub const UNDECIDED: u8 = 7;

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(PARSE, message)
    }

    pub fn dimension(message: impl Into<String>) -> Self {
        Self::new(DIMENSION, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::parse(e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        let code = match e {
            ClassifyError::Dimension(_) => DIMENSION,
            ClassifyError::Infinite => INFINITE,
            _ => UNDECIDED,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<HeisError> for CliError {
    fn from(e: HeisError) -> Self {
        let code = match &e {
            HeisError::NotReduced(_) => DEGENERATE,
            HeisError::Classify(c) => return c.clone().into(),
            HeisError::VDim(_) | HeisError::KernelAmbient { .. } | HeisError::TauShape { .. } => DIMENSION,
            _ => UNDECIDED,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<OrbitsError> for CliError {
    fn from(e: OrbitsError) -> Self {
        let code = match &e {
            OrbitsError::Infinite => INFINITE,
            OrbitsError::Unsupported(_) => PARSE,
            OrbitsError::Budget(_) => UNDECIDED,
            OrbitsError::Heis(h) => return h.clone().into(),
        };
        CliError::new(code, e.to_string())
    }
}

impl From<QuatError> for CliError {
    fn from(e: QuatError) -> Self {
        let code = match e {
            QuatError::Split => SPLIT,
            QuatError::ZeroParameter | QuatError::BadTrace(_) | QuatError::NotAssociative => PARSE,
            _ => UNDECIDED,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<FormsError> for CliError {
    fn from(e: FormsError) -> Self {
        let code = match e {
            FormsError::WrongDimension { .. } => DIMENSION,
            FormsError::Undecided(_) => UNDECIDED,
            _ => PARSE,
        };
        CliError::new(code, e.to_string())
    }
}
