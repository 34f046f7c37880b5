use thiserror::Error;

use crate::element::Family;

/// Errors shared by the arithmetic, polynomial and lifting operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: expected {expected} element, found {found}")]
    CarrierMismatch { expected: Family, found: Family },

    #[error("family mismatch between value sets: {left} vs {right}")]
    FamilyMismatch { left: Family, right: Family },

    #[error("dimension mismatch: polynomial has {expected} variables, point has {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("hypersum of an empty list is undefined")]
    EmptyHypersum,

    #[error("multiplicative inverse of the zero element")]
    ZeroInverse,

    #[error("zero coefficient in polynomial term {0:?}")]
    ZeroCoefficient(Vec<u32>),

    #[error("duplicate exponent vector {0:?}")]
    DuplicateTerm(Vec<u32>),

    #[error("polynomial must have at least one term")]
    EmptyPolynomial,

    #[error("direction vector collides on support: D·{i:?} = D·{j:?}")]
    DotProductCollision { i: Vec<u32>, j: Vec<u32> },

    #[error("{0} is not a root: {1}")]
    NotARoot(String, String),

    #[error("degenerate polynomial: {0}")]
    DegeneratePolynomial(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
