use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("class {class} is empty, no independent transversal exists")]
    EmptyClass { class: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("certificate violation: {}", .0.join("; "))]
    CertificateViolation(Vec<String>),

    #[error("clique core structure violated: {0}")]
    CoreStructureViolation(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
