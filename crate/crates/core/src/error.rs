use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid UTF-8 input: {0}")]
    Encoding(#[from] std::str::Utf8Error),

    #[error("root must not be empty")]
    EmptyRoot,

    #[error("no joiner rule for suffix `{suffix}` after root `{root}` (ending {ending})")]
    Unjoinable {
        root: String,
        suffix: String,
        ending: String,
    },

    #[error("cannot classify noun `{root}`: {reason}")]
    Unclassifiable { root: String, reason: String },

    #[error("verb feature bundle {0} is not in the paradigm table")]
    UnsupportedFeatures(String),

    #[error("token `{token}` has {found} factors, more than width {width}")]
    Width {
        token: String,
        found: usize,
        width: usize,
    },

    #[error("{origin}:{line}: {message}")]
    Parse {
        origin: String,
        line: usize,
        message: String,
    },

    #[error("token `{token}` needs at least {needed} factors")]
    IncompleteToken { token: String, needed: usize },

    #[error("invalid dependency graph: {0}")]
    Graph(String),

    #[error("sentence has no verb")]
    NoVerb,

    #[error("reports were computed over different test sets")]
    TestSetMismatch,

    #[error("invalid rule pattern: {0}")]
    Pattern(#[from] regex::Error),

    #[error("unknown language profile `{0}`")]
    UnknownProfile(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(origin: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            origin: origin.to_owned(),
            line,
            message: message.into(),
        }
    }
}
