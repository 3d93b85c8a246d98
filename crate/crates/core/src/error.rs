use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("cap exceeded: limit {cap}")]
    CapExceeded { cap: usize },

    #[error("partition is not invariant under the group")]
    NotInvariant,

    #[error("group is not transitive")]
    NotTransitive,

    #[error("group is not primitive")]
    NotPrimitive,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("group is not semiregular")]
    NotSemiregular,

    #[error("bad base choice: {0}")]
    BadBaseChoice(String),

    #[error("digraph is not invariant under the semiregular subgroup")]
    NotInvariantUnderH,

    #[error("element set is not a subgroup")]
    NotASubgroup,

    #[error("base vector does not match the frame orbits")]
    BaseVectorMismatch,

    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(String),

    #[error("eigenvalue solver failed: {0}")]
    SolverFailure(String),

    #[error("expected 2 orbits of the semiregular subgroup, found {0}")]
    WrongOrbitCount(usize),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
