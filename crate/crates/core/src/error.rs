use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no points")]
    NoPoints,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("generators have mixed degrees ({0} and {1})")]
    MixedDegrees(usize, usize),

    #[error("group too large: order {order} exceeds bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("facet description requires n >= 3")]
    FacetDescriptionNeedsThree,

    #[error("not a facet symmetry: {0}")]
    NotAFacetSymmetry(String),

    #[error("inconsistent: {0}")]
    Inconsistent(String),

    #[error("not a polytope incidence: {0}")]
    NotAPolytopeIncidence(String),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("group not finite at this bound ({0} elements)")]
    NotFinite(usize),

    #[error("unfaithful representation: {0}")]
    Unfaithful(String),

    #[error("parse error: {0}")]
    Parse(String),
}
