use crate::poly::Family;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("variable family mismatch: {0} against {1}")]
    Ring(Family, Family),
    #[error("series has zero constant term and is not a unit")]
    NonUnit,
    #[error("matrix has rank {rank}, expected {expected}")]
    Rank { rank: usize, expected: usize },
    #[error("columns are not in the integer kernel of A")]
    NotInKernel,
    #[error("columns span a sublattice of index {0}")]
    Sublattice(String),
    #[error("matrix A is not homogeneous")]
    NotHomogeneous,
    #[error("weight is not generic: {element} has tied leading terms {terms:?}")]
    WeightNotGeneric { element: String, terms: Vec<String> },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("operator space is not closed under the star action")]
    NotClosed,
    #[error("operator {operator} is not annihilated by generator {generator}")]
    NotInPerp { operator: String, generator: String },
    #[error("internal consistency violation: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
