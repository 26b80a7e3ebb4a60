use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    /// Row `x_row` of H_X and row `z_row` of H_Z have odd overlap.
    #[error("H_X row {x_row} anticommutes with H_Z row {z_row}")]
    CommutationViolation { x_row: usize, z_row: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The cluster covers every reachable node and is still invalid, so the
    /// syndrome is not in the column space of H_Z.
    #[error("syndrome is not realizable by any error (gave up after {rounds} growth rounds)")]
    InfeasibleSyndrome { rounds: usize },

    #[error("exhaustive search needs {required} candidates, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("residual has nonzero syndrome and is not a logical operator")]
    NonzeroSyndrome,

    #[error("per-logical rate is undefined for a code with k = 0")]
    UndefinedRate,

    #[error("alist parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
