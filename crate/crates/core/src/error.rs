use thiserror::Error;

/// Errors produced by the solvers, generators and file readers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("an instance needs at least one job")]
    EmptyInstance,

    #[error("too many jobs: {n} (at most {max} supported)")]
    TooManyJobs { n: usize, max: usize },

    #[error("duration {value} exceeds the maximum of {max}")]
    DurationOutOfRange { value: u64, max: u64 },

    #[error("job {job} out of range for an instance with {n} jobs")]
    JobOutOfRange { job: usize, n: usize },

    #[error("job {job} listed more than once")]
    DuplicateJob { job: usize },

    #[error("not a permutation of 1..={n}")]
    NotAPermutation { n: usize },

    #[error("delta {delta} out of range 0..={n}")]
    DeltaOutOfRange { delta: usize, n: usize },

    #[error("search space of {required} subsets exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("oracle enumeration limited to n <= {max}, got n = {n}")]
    OracleTooLarge { n: usize, max: usize },

    #[error("input sequence is not sorted in non-decreasing order")]
    NotSorted,

    #[error("{0}")]
    Domain(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
