use thiserror::Error;

/// Errors raised by the numerical engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: String,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integrand is not a number near x = {x}")]
    NotANumber { x: f64 },

    #[error("Luxemburg bracket expansion exceeded {doublings} doublings")]
    BracketExpansion { doublings: u32 },

    #[error("empty index range for n = {n} on [{a}, {b}]")]
    EmptyRange { n: usize, a: f64, b: f64 },

    #[error("kernel sum {value:e} below the floor {floor:e} at x = {x}")]
    DenominatorFloor { x: f64, value: f64, floor: f64 },

    #[error("{0} has no derivative")]
    MissingDerivative(String),

    #[error("potentially infinite: {0}")]
    PotentiallyInfinite(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("every tested lambda gives an infinite weak modulus")]
    NotInWeakClass,

    #[error("rate fit needs at least 4 usable points, got {0}")]
    TooFewPoints(usize),

    #[error("cannot write output: {0}")]
    Output(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Output(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
