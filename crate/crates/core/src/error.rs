use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates an operation's precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// A channel document could not be read; `path` points into the document.
    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("not an additive channel: {0}")]
    NotAdditive(String),

    #[error("{what} exceeds the oracle size cap ({size} > {cap})")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by the caller's data rather than the library.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}
