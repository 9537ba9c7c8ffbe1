use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to the requested level: {0}")]
    Level(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("element is not in the sum of the R and S spaces")]
    NotInRS,
    #[error("residues are not constant")]
    NonConstantResidue,
    #[error("incomplete shift specification: {0}")]
    SpecIncomplete(String),
    #[error("shift specification does not commute with the derivation: {0}")]
    ShiftIncompatible(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
