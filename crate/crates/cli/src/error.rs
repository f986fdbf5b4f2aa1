use hardylab_core::HardyError;
use thiserror::Error;

/// Process exit codes. Verdicts never change the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    /// Anything not covered below, e.g. an output file that cannot be written.
    Other = 1,
    Parse = 2,
    Data = 3,
    Estimation = 4,
    GaugeUnavailable = 5,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
#[error("{message}")]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
    /// Report assembled before the failure, if any.
    pub partial: Option<String>,
}

impl CliError {
    pub fn new(kind: ExitKind, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
            partial: None,
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(ExitKind::Parse, message)
    }

    pub fn data(message: impl Into<String>) -> Self {
        Self::new(ExitKind::Data, message)
    }
}

pub fn exit_kind(e: &HardyError) -> ExitKind {
    match e {
        HardyError::InvalidArgument(_) => ExitKind::Parse,
        HardyError::NonIntegrable { .. } => ExitKind::Data,
        HardyError::GaugeUnavailable(_) | HardyError::BoundUnavailable(_) => {
            ExitKind::GaugeUnavailable
        }
        HardyError::Underflow { .. }
        | HardyError::OutsideDisk { .. }
        | HardyError::BoundaryEstimationFailed { .. }
        | HardyError::FactorizationUnavailable(_) => ExitKind::Estimation,
    }
}

impl From<HardyError> for CliError {
    fn from(e: HardyError) -> Self {
        Self::new(exit_kind(&e), e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
