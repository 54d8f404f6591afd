use crate::model::ValidationReport;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid spec:\n{0}")]
    InvalidSpec(ValidationReport),
    #[error("invalid surviving sequence: {0}")]
    InvalidSequence(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unbounded flow: every source-sink cut contains an unbounded edge")]
    UnboundedFlow,
    #[error("failed to build thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
