use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..={n}: {entries:?}")]
    InvalidPermutation { n: usize, entries: Vec<usize> },

    #[error("size mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{0:?} is not a displacement vector of the permutation")]
    InvalidDisplacementVector(Vec<i64>),

    #[error("crossing number of an element with itself is undefined (element {0})")]
    DiagonalCrossing(usize),

    #[error("element {element} out of range 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("bar column {column} out of range for {n} lines")]
    InvalidColumn { column: usize, n: usize },

    #[error("some pair of routes crosses more than once")]
    NotAtMostOnce,

    #[error("triple {0:?} is not tangled")]
    NotTangled([usize; 3]),

    #[error("triple {0:?} is not minimal")]
    NotMinimal([usize; 3]),

    #[error("routes of {0} and {1} do not cross")]
    RoutesDoNotCross(usize, usize),

    #[error("construction stuck: no productive column before reaching the target")]
    Stuck,

    #[error("objects belong to different reconfiguration classes")]
    ClassMismatch,

    #[error("the object is the root of its family tree and has no parent")]
    IsRoot,

    #[error("displacement vector {0:?} is not optimal")]
    NotOptimal(Vec<i64>),

    #[error("search budget of {0} exceeded")]
    BudgetExceeded(u64),

    #[error("target not reachable")]
    Unreachable,

    #[error("internal consistency violation: {0}")]
    Internal(String),
}
