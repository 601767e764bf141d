use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} has been deleted")]
    DeadVertex(usize),

    #[error("deletion set of size {size} exceeds budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },

    #[error("budget {budget} exceeds candidate set size {available}")]
    NotEnoughCandidates { budget: usize, available: usize },

    #[error(
        "{size} candidates exceed the brute-force cap of {cap}; use a heuristic (hdr/ahdr) instead"
    )]
    CandidateCapExceeded { size: usize, cap: usize },

    #[error("forest solver needs degeneracy <= 1, got degeneracy {0} > 1")]
    NotAForest(u32),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("input has zero variance")]
    ZeroVariance,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for refusals that are a property of the instance size rather
    /// than bad input.
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::CandidateCapExceeded { .. })
    }
}
