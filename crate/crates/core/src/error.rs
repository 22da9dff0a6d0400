use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("infinite Coxeter group: {0}")]
    InfiniteGroup(String),
    #[error("rank {rank} exceeds the configured cap of {cap}")]
    RankCapExceeded { rank: usize, cap: usize },
    #[error("unsupported type `{0}`")]
    UnsupportedType(String),
    #[error("subset {subset:#b} is not contained in a generating set of rank {rank}")]
    InvalidSubset { subset: u32, rank: usize },
    #[error("operands belong to different descent algebras ({0} vs {1})")]
    SystemMismatch(String, String),
    #[error("group-algebra product is not constant on descent classes: {0}")]
    NotInDescentAlgebra(String),
    #[error("element is not positive in the x-basis")]
    NotPositive,
    #[error("expected a system of type {expected}, got {got}")]
    WrongType { expected: String, got: String },
    #[error("rank {0} is too small for this construction")]
    RankTooSmall(usize),
    #[error("subset {0} is not self-opposed")]
    NotSelfOpposed(String),
    #[error("automorphism does not belong to this system: {0}")]
    AutomorphismMismatch(String),
    #[error("no diagram automorphism of order {order} for {label}")]
    UnavailableAutomorphism { label: String, order: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
