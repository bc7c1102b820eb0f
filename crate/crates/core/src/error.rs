use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeilError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("|Im z| = {im} exceeds the growth guard {guard}")]
    GrowthGuard { im: f64, guard: f64 },
    #[error("aliasing guard violated: frequency step {step} times |x|max {x_max} exceeds pi/4")]
    Aliasing { step: f64, x_max: f64 },
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },
    #[error("E vanishes at z = {0}; move the node off the real zero")]
    ZeroOfE(String),
    #[error("{0}")]
    Domain(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("ordinate {0} is not in the zero catalog")]
    NotInCatalog(f64),
    #[error("length mismatch: {left} vs {right}")]
    Misaligned { left: usize, right: usize },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for WeilError {
    fn from(e: std::io::Error) -> Self {
        WeilError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, WeilError>;
