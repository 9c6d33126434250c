use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes:
/// config errors exit 2, data errors exit 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("self-loop on node {0} is not allowed")]
    SelfLoop(u32),

    #[error("node {0} is not in the graph")]
    MissingNode(u32),

    #[error("target {0} is not assigned to any community")]
    IneligibleTarget(u32),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("episode is already finished")]
    EpisodeDone,

    #[error("no valid action available")]
    Exhausted,

    #[error("config error: {0}")]
    Config(String),

    #[error("sampling error: {0}")]
    Sampling(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for configuration problems,
    /// 3 for data problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::IneligibleTarget(_) => 2,
            Error::Parse { .. } | Error::EmptyInput(_) | Error::Io(_) | Error::Serde(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
