use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("source and sink are disconnected (λ = 0)")]
    Disconnected,

    #[error("invalid closure: {0}")]
    InvalidClosure(String),

    #[error("not a minimum s-t cut: {0}")]
    NotAMinCut(String),

    #[error("bad collection size k = {k}: {reason}")]
    BadK { k: usize, reason: &'static str },

    #[error("collection is not in left-right order at positions {first} and {second}")]
    NotLeftRightOrdered { first: usize, second: usize },

    #[error("collections have mismatched shapes ({left} vs {right} cuts)")]
    ShapeMismatch { left: usize, right: usize },

    #[error("poset has {size} elements, exhaustive backend is capped at {cap}")]
    PosetTooLarge { size: usize, cap: usize },

    #[error("minimum-norm-point did not certify optimality within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },

    #[error("more than {cap} ideals")]
    TooManyIdeals { cap: usize },

    #[error("search space of {size} candidates exceeds cap {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },

    #[error("bad instance: {0}")]
    BadInstance(String),

    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),

    #[error("order relation contains a cycle through element {0}")]
    CyclicOrder(usize),
}

impl Error {
    /// Stable machine-readable tag, used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Disconnected => "disconnected",
            Error::InvalidClosure(_) => "invalid_closure",
            Error::NotAMinCut(_) => "not_a_mincut",
            Error::BadK { .. } => "bad_k",
            Error::NotLeftRightOrdered { .. } => "not_left_right_ordered",
            Error::ShapeMismatch { .. } => "shape_mismatch",
            Error::PosetTooLarge { .. } => "poset_too_large",
            Error::ConvergenceFailure { .. } => "convergence_failure",
            Error::TooManyIdeals { .. } => "too_many_ideals",
            Error::SearchSpaceTooLarge { .. } => "search_space_too_large",
            Error::BadInstance(_) => "bad_instance",
            Error::InfeasibleParams(_) => "infeasible_params",
            Error::CyclicOrder(_) => "cyclic_order",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
