use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point or parameter lies outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The evaluation point sits too close to a curve for the winding number to be trusted.
    #[error("ill-conditioned: point within {distance:e} of the curve (tolerance {tolerance:e})")]
    IllConditioned { distance: f64, tolerance: f64 },

    #[error("no path joins the endpoints inside the domain")]
    Unreachable,

    /// The interpolation setup itself is broken (e.g. a boundary curve winds the wrong number of times).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("pole at {0}")]
    Pole(String),

    #[error("config error at line {line}: key `{key}`: {message}")]
    Config { line: usize, key: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{module}: {source}")]
    Context {
        module: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn in_module(self, module: &'static str) -> Self {
        Error::Context {
            module,
            source: Box::new(self),
        }
    }
}
