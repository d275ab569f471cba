use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },

    #[error("malformed spec {origin}: {reason}")]
    Parse { origin: String, reason: String },

    #[error("invalid field `{field}`: {reason}")]
    Spec { field: String, reason: String },

    #[error("missing flag --{0}")]
    MissingFlag(&'static str),

    #[error(transparent)]
    Core(#[from] lorentz::Error),
}
