use thiserror::Error;

/// Errors produced by the test engines, the simulation harness and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Validation(String),

    #[error("target ratio must differ from 1")]
    DegenerateTarget,

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("improper posterior: {0}")]
    ImproperPosterior(String),

    #[error("bayes factor undefined: {0}")]
    UndefinedBayesFactor(String),

    #[error("prior mass undefined: {0}")]
    UndefinedPriorMass(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Short machine-readable tag used in CLI error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Validation(_) => "validation",
            Error::DegenerateTarget => "degenerate_target",
            Error::DegenerateData(_) => "degenerate_data",
            Error::ImproperPosterior(_) => "improper_posterior",
            Error::UndefinedBayesFactor(_) => "undefined_bayes_factor",
            Error::UndefinedPriorMass(_) => "undefined_prior_mass",
            Error::ResourceGuard(_) => "resource_guard",
            Error::Numerical(_) => "numerical",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }

    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
