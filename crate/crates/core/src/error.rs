use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot 0-subdivide a multigraph with a parallel edge {u}-{v} (multiplicity {multiplicity})")]
    ParallelEdgeAtZero { u: usize, v: usize, multiplicity: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration budget of {budget} exceeded at length {length}")]
    PathBudgetExceeded { length: usize, budget: u64 },

    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },

    #[error("vertex count {n} exceeds the exhaustive cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
