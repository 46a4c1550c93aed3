use thiserror::Error;

use crate::horo::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {index} is not strictly positive and finite: {value}")]
    NotPositive { index: usize, value: f64 },

    #[error("point is not interior to the cone: row {row} gives {value}")]
    NotInterior { row: usize, value: f64 },

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("invalid descriptor: {}", join_violations(.0))]
    InvalidDescriptor(Vec<Violation>),

    #[error("incompatible reverse-Funk/Funk pair at index {0}")]
    Incompatible(usize),

    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("empty grid")]
    EmptyGrid,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
