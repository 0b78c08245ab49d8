use orbifill_core::chen_ruan::ChenRuanError;
use orbifill_core::constraints::ConstraintError;
use orbifill_core::floer::FloerError;
use orbifill_core::group::GroupError;
use orbifill_core::reeb::ReebError;
use orbifill_core::span::SpanError;

/// Failures that abort a command before a report is produced.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn from_group(e: GroupError) -> Self {
        match e {
            GroupError::InternalInconsistency(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        Self::from_group(e)
    }
}

impl From<ChenRuanError> for CliError {
    fn from(e: ChenRuanError) -> Self {
        match e {
            ChenRuanError::Group(g) => g.into(),
            ChenRuanError::InternalInconsistency(m) => CliError::Internal(m),
            nonisolated => CliError::Input(nonisolated.to_string()),
        }
    }
}

impl From<ReebError> for CliError {
    fn from(e: ReebError) -> Self {
        match e {
            ReebError::InternalInconsistency(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<FloerError> for CliError {
    fn from(e: FloerError) -> Self {
        match e {
            FloerError::Reeb(r) => r.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SpanError> for CliError {
    fn from(e: SpanError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ConstraintError> for CliError {
    fn from(e: ConstraintError) -> Self {
        CliError::Input(e.to_string())
    }
}
