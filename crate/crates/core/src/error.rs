use thiserror::Error;

/// Errors raised by point-set construction, validators, constructions and oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("points {first} and {second} coincide at ({x}, {y})")]
    DuplicatePoint {
        first: usize,
        second: usize,
        x: i64,
        y: i64,
    },
    #[error("point {index} coordinate ({x}, {y}) exceeds the bound |c| <= {bound}")]
    CoordinateOutOfRange {
        index: usize,
        x: i64,
        y: i64,
        bound: i64,
    },
    #[error("arithmetic overflow in exact predicate")]
    Overflow,
    #[error("index {index} out of range for {n} points")]
    InvalidIndex { index: usize, n: usize },
    #[error("index {0} appears more than once")]
    RepeatedIndex(usize),
    #[error("point sequence is not a non-crossing path: {0}")]
    NotNoncrossing(String),
    #[error("polygon is not simple: {0}")]
    NotSimple(String),
    #[error("point {0} is not a convex hull vertex")]
    NotHullVertex(usize),
    #[error("query point lies inside or on the hull of the subset")]
    PointInsideHull,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("point set is not one-sided with respect to the given line: {0}")]
    NotOneSided(String),
    #[error("input of {n} points exceeds the oracle limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
