use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matroid ground set must be non-empty")]
    EmptyGroundSet,
    #[error("ground set of size {n} exceeds the supported maximum of {max}")]
    TooManyElements { n: usize, max: usize },
    #[error("matroid must have at least one basis")]
    NoBases,
    #[error("bases have different sizes ({first} and {other})")]
    BasisSizeMismatch { first: usize, other: usize },
    #[error("element {element} is outside the ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("basis exchange fails for {from} and {to} at element {element}")]
    BasisExchange { from: String, to: String, element: usize },
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { got: usize, expected: usize },
    #[error("{0} is not a flat of this matroid")]
    NotAFlat(String),
    #[error("flats {0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("exact division left a nonzero remainder")]
    InexactDivision,
    #[error("series expansion requires a denominator with nonzero constant term in T")]
    NotExpandable,
    #[error("rational function has a pole at s = 0")]
    PoleAtZero,
    #[error("{what} exceeds the size guard ({limit})")]
    TooLarge { what: String, limit: usize },
    #[error("not a building set: {0}")]
    NotBuildingSet(String),
    #[error("not a nested set: {0}")]
    NotNested(String),
    #[error("matroid has a loop")]
    HasLoop,
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
