use thiserror::Error;

/// Errors raised by the simulator, encoders, analysis and image I/O.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("register of {requested} qubits exceeds the cap of {cap}")]
    Capacity { requested: usize, cap: usize },

    #[error("{0}")]
    Validation(String),

    #[error("selected pattern has zero probability")]
    ZeroProbability,

    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
