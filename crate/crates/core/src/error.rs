use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("points coincide")]
    PointsCoincide,
    #[error("lines not skew; reduce to a planar problem")]
    NotSkew,
    #[error("cannot eliminate: {0}")]
    CannotEliminate(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("ramification undefined for singular curve (class {0})")]
    Singular(u8),
    #[error("requires extension of degree > 2: {0}")]
    ExtensionRequired(String),
    #[error("excluded parameters: {0} = 0")]
    Excluded(String),
    #[error("not a sphere envelope: {0}")]
    NotInImage(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("infinite family; use classify_configuration")]
    InfiniteFamily,
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for violated geometric preconditions (as opposed to malformed input
    /// or broken internal invariants).
    pub fn is_geometric(&self) -> bool {
        !matches!(self, Error::InvalidInput(_) | Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
