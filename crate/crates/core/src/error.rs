use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground-set size {n} out of range (allowed {min}..={max})")]
    GroundSetOutOfRange { n: usize, min: usize, max: usize },
    #[error("ground sets differ: {left} vs {right}")]
    MismatchedGroundSet { left: usize, right: usize },
    #[error("element {element} is not in the ground set [1..={n}]")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("function is modular")]
    ModularInput,
    #[error("function is not supermodular: s{{{meet:?}+{a},{meet:?}+{b}}} < 0")]
    NotSupermodular { meet: Vec<usize>, a: usize, b: usize },
    #[error("function is not nondecreasing")]
    NotNondecreasing,
    #[error("input is not sorted in nondecreasing order")]
    UnsortedInput,
    #[error("sequence is not a permutation of [1..={n}]")]
    NotAPermutation { n: usize },
    #[error("vector is not in the image of T: {0}")]
    NotInImage(String),
    #[error("cone is not pointed")]
    NotPointed,
    #[error("row of length {found} in a cone of dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no conic combination of the given rays matches the input")]
    Infeasible,
    #[error("zero vector")]
    ZeroVector,
    #[error("vector is not balanced")]
    Unbalanced,
    #[error("support has no invertible completion")]
    SingularSystem,
    #[error("antichain is empty")]
    EmptyAntichain,
    #[error("family is not an antichain")]
    NotAnAntichain,
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("subset is inadmissible: {0}")]
    InadmissibleSubset(String),
    #[error("matroid has a loop at element {0}")]
    HasLoop(usize),
    #[error("function is not simple")]
    NotSimple,
    #[error("vertex {0:?} is not a 0/1 vector")]
    NotZeroOne(Vec<String>),
    #[error("bases violate the exchange axiom")]
    NotAMatroid,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
