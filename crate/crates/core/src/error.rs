use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("argument {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("abscissa {s} lies outside segment {segment} [{lo}, {hi})")]
    SegmentMismatch {
        segment: usize,
        s: f64,
        lo: f64,
        hi: f64,
    },

    #[error("quadrature did not converge: estimate {value}, error {abs_error} after {evaluations} evaluations")]
    Quadrature {
        value: f64,
        abs_error: f64,
        evaluations: usize,
    },

    #[error("invalid table request: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
