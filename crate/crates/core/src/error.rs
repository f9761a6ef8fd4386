//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point does not lie on {space}: {reason}")]
    PointMismatch { space: String, reason: String },

    #[error("unsupported space variant for {op}: {space}")]
    UnsupportedVariant { op: &'static str, space: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("mesh rejected: {0}")]
    Mesh(String),

    #[error("graph is not connected: {0}")]
    Disconnected(String),

    #[error("invalid vertex id {id} for manifold with {count} vertices")]
    InvalidVertex { id: usize, count: usize },

    #[error("missing point annotations on manifold '{0}'")]
    MissingPoints(String),

    #[error("missing embedding/faces on manifold '{0}'")]
    MissingEmbedding(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
