use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad classes used by front ends to choose exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input data itself is unusable (bad file, invalid curve).
    InvalidInput,
    /// Valid input on which the requested quantity is singular or undefined.
    Numerical,
    /// Inconsistent request parameters.
    Config,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("curve needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("edge {0} has zero length")]
    DegenerateEdge(usize),

    #[error("vertices {0} and {1} coincide")]
    SelfIntersection(usize, usize),

    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),

    #[error("vertex {index} lies within {guard:e} of the inversion center")]
    InversionSingularity { index: usize, guard: f64 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: expected {expected} columns, found {found}")]
    ColumnMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("sample {index} has norm {norm}, expected a unit vector")]
    NotUnit { index: usize, norm: f64 },

    #[error("sample counts differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("test function is not tangential at sample {index} (u.phi = {dot:e})")]
    NonTangential { index: usize, dot: f64 },

    #[error("energy is infinite: pair ({0}, {1}) has vanishing chord")]
    InfiniteEnergy(usize, usize),

    #[error("argument outside the domain of {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag, printed by the CLI as `error=<kind>`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TooFewVertices(_)
            | Error::DegenerateEdge(_)
            | Error::NonFinite(_)
            | Error::Parse { .. }
            | Error::ColumnMismatch { .. } => "invalid-curve",
            Error::SelfIntersection(..) => "self-intersection",
            Error::InversionSingularity { .. } => "inversion-singularity",
            Error::NotUnit { .. } => "not-unit",
            Error::LengthMismatch(..) => "length-mismatch",
            Error::NonTangential { .. } => "nontangential-test-function",
            Error::InfiniteEnergy(..) => "infinite-energy",
            Error::Domain { .. } => "domain",
            Error::InvalidParams(_) => "invalid-params",
            Error::SingularInput(_) => "singular-input",
            Error::Io(_) => "io",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::TooFewVertices(_)
            | Error::DegenerateEdge(_)
            | Error::NonFinite(_)
            | Error::SelfIntersection(..)
            | Error::Parse { .. }
            | Error::ColumnMismatch { .. }
            | Error::NotUnit { .. }
            | Error::LengthMismatch(..)
            | Error::NonTangential { .. }
            | Error::Io(_) => ErrorClass::InvalidInput,
            Error::InversionSingularity { .. }
            | Error::InfiniteEnergy(..)
            | Error::Domain { .. }
            | Error::SingularInput(_) => ErrorClass::Numerical,
            Error::InvalidParams(_) => ErrorClass::Config,
        }
    }
}
