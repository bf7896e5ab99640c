use thiserror::Error;

use crate::coxeter::Family;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank {rank} is invalid for family {family}")]
    InvalidRank { family: Family, rank: usize },

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("component {vertices:?} is not of finite type")]
    NotFiniteType { vertices: Vec<usize> },

    #[error("rank {rank} exceeds the subset-enumeration cap {cap}")]
    RankTooLarge { rank: usize, cap: usize },

    #[error("reflection closure exceeded the cap of {cap} vectors (not finite type?)")]
    ClosureExceededCap { cap: usize },

    #[error("numerically ambiguous root coordinates: {0}")]
    NumericalAmbiguity(String),

    #[error("series inversion requires constant term 1, found {0}")]
    NonUnitConstantTerm(String),

    #[error("work estimate {estimated} exceeds the budget of {budget}")]
    BudgetExceeded { estimated: u128, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
