use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] wallnorm_core::Error),
    #[error("line {line}: {msg}")]
    MalformedInput { line: usize, msg: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{count} classes disagree with the max formula")]
    Discrepancy { count: usize },
}

impl AppError {
    pub fn name(&self) -> &'static str {
        match self {
            AppError::Core(e) => e.name(),
            AppError::MalformedInput { .. } => "MalformedInput",
            AppError::Io { .. } => "Io",
            AppError::Usage(_) => "Usage",
            AppError::Discrepancy { .. } => "Discrepancy",
        }
    }

    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io { path: path.into(), source }
    }
}
