use thiserror::Error;

/// Errors raised by the cochain library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} is outside the ground set 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("subset {0:?} is not strictly increasing")]
    UnsortedSubset(Vec<usize>),

    #[error("subset has {got} elements, expected {expected}")]
    SubsetSize { got: usize, expected: usize },

    #[error("rank {rank} out of range: C({n}, {r}) = {count}")]
    RankOutOfRange { rank: u64, n: usize, r: usize, count: u64 },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("ground set mismatch: n = {left} vs n = {right}")]
    GroundMismatch { left: usize, right: usize },

    #[error("arity {arity} is out of range for n = {n}")]
    ArityOutOfRange { arity: usize, n: usize },

    #[error("C({n}, {r}) exceeds the supported limit of 2^33 subsets")]
    TooLarge { n: usize, r: usize },

    #[error("the coboundary of an arity-0 cochain is not defined (non-reduced convention)")]
    ArityZeroCoboundary,

    #[error("cochain is not a coboundary")]
    NotACoboundary,

    #[error("coset rank {rank} exceeds the exact enumeration limit {limit}")]
    CosetTooLarge { rank: usize, limit: usize },

    #[error("{name}: alpha = {alpha} is outside the domain [{lo}, {hi}]")]
    OutOfDomain { name: String, alpha: f64, lo: f64, hi: f64 },

    #[error("no bracketing sign change on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("general position violated: {0}")]
    GeneralPosition(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
