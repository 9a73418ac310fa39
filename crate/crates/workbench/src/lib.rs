//! Command-line workbench: literal parsing, one verb per computation, JSON
//! and text reports, a content-addressed result cache and the acceptance
//! suite.

pub mod cache;
pub mod cli;
pub mod parse;
pub mod report;
pub mod suite;

use cut_dga::DgaError;
use cycle_engine::CycleError;
use exact_kernel::KernelError;
use hodge_ledger::LedgerError;
use path_comodule::ComoduleError;
use period_lab::PeriodError;

/// Everything that stops a verb from producing a report.
#[derive(Debug, thiserror::Error)]
pub enum WorkbenchError {
    #[error("{0}")]
    Usage(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Failed(String),
    #[error("cache: {0}")]
    Cache(#[from] std::io::Error),
}

impl WorkbenchError {
    /// 2 for usage and parse errors, 3 for inputs outside a theory or
    /// needing regularization, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            WorkbenchError::Usage(_) => 2,
            WorkbenchError::Unsupported(_) => 3,
            WorkbenchError::Failed(_) | WorkbenchError::Cache(_) => 1,
        }
    }
}

impl From<KernelError> for WorkbenchError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Parse { .. } => WorkbenchError::Usage(e.to_string()),
            other => WorkbenchError::Failed(other.to_string()),
        }
    }
}

impl From<DgaError> for WorkbenchError {
    fn from(e: DgaError) -> Self {
        WorkbenchError::Usage(e.to_string())
    }
}

impl From<CycleError> for WorkbenchError {
    fn from(e: CycleError) -> Self {
        match e {
            CycleError::NotAdmitted { .. } | CycleError::UnsupportedShape(_) | CycleError::ReservedName(_) => {
                WorkbenchError::Unsupported(e.to_string())
            }
            other => WorkbenchError::Failed(other.to_string()),
        }
    }
}

impl From<PeriodError> for WorkbenchError {
    fn from(e: PeriodError) -> Self {
        match e {
            PeriodError::DivergentSeries(_) | PeriodError::SingularEndpoint(_) => {
                WorkbenchError::Unsupported(e.to_string())
            }
            PeriodError::InvalidPath(_) | PeriodError::PathHitsPuncture(_) | PeriodError::Config(_) => {
                WorkbenchError::Usage(e.to_string())
            }
            other => WorkbenchError::Failed(other.to_string()),
        }
    }
}

impl From<ComoduleError> for WorkbenchError {
    fn from(e: ComoduleError) -> Self {
        match e {
            ComoduleError::Parse { .. } | ComoduleError::Alphabet(_) => WorkbenchError::Usage(e.to_string()),
            ComoduleError::Dga(d) => d.into(),
            ComoduleError::Cycle(c) => c.into(),
            other => WorkbenchError::Failed(other.to_string()),
        }
    }
}

impl From<LedgerError> for WorkbenchError {
    fn from(e: LedgerError) -> Self {
        match e {
            LedgerError::NotAdmitted { .. } | LedgerError::NeedsRegularization(_) => {
                WorkbenchError::Unsupported(e.to_string())
            }
            LedgerError::MissingValue(_) | LedgerError::PathMismatch { .. } => WorkbenchError::Usage(e.to_string()),
            LedgerError::Period(p) => p.into(),
        }
    }
}
