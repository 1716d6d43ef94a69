use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("{func} is undefined at {arg}")]
    Domain { func: &'static str, arg: f64 },

    #[error("evaluation produced a non-finite value at u = {u}")]
    NonFinite { u: f64 },

    #[error("u = {u} lies outside the meridian domain [{lo}, {hi}]")]
    OutOfDomain { u: f64, lo: f64, hi: f64 },

    #[error("u = {u} is not a valid point of the surface")]
    InvalidPoint { u: f64 },

    #[error("frame Gram matrix deviates by {deviation:e} at u = {u}")]
    DegenerateFrame { u: f64, deviation: f64 },

    #[error("singular ODE right-hand side: {factor} vanishes at u = {u}")]
    Singular { factor: &'static str, u: f64 },

    #[error("empty valid domain: {0}")]
    EmptyDomain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("malformed meridian CSV: {0}")]
    Csv(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}
