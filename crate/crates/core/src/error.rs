use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polygon must have at least {min} vertices, got {got}")]
    PolygonTooSmall { got: usize, min: usize },
    #[error("vertex {vertex} out of range for a {polygon}-gon")]
    VertexOutOfRange { vertex: usize, polygon: usize },
    #[error("degenerate diagonal {a}-{b}: endpoints are equal or adjacent")]
    DegenerateDiagonal { a: usize, b: usize },
    #[error("duplicate diagonal {0}")]
    DuplicateDiagonal(String),
    #[error("diagonals {0} and {1} cross")]
    CrossingDiagonals(String, String),
    #[error("cannot parse {0:?}")]
    Syntax(String),
    #[error("diagonals {0} and {1} do not cross")]
    NotCrossing(String, String),
    #[error("diagonal {0} is not in the dissection")]
    NotInDissection(String),
    #[error("unsupported field size {0}")]
    UnsupportedField(u32),
    #[error("need {needed} sample fields, only {available} supported")]
    InsufficientSamples { needed: usize, available: usize },
    #[error("finite-field point counts are not polynomial: value {0} at q = 1")]
    NonPolynomialCount(String),
    #[error("mesh difference {difference} at {diagonal} is not 0 or 1")]
    FriezeViolation { diagonal: String, difference: i128 },
    #[error("malformed fixture: {0}")]
    MalformedFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
