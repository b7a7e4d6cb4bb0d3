use thiserror::Error;

/// Malformed input to a combinatorial operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("expected a set of size {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("elements are not strictly increasing: {0:?}")]
    NotStrictlyIncreasing(Vec<u32>),
    #[error("coloring has {found} entries but C({m},{n}) = {expected}")]
    ColoringLength {
        m: u32,
        n: usize,
        expected: u64,
        found: usize,
    },
    #[error("color {color} at position {position} is not below c = {c}")]
    ColorOutOfRange { position: usize, color: u32, c: u32 },
    #[error("incompatible parameters: {0}")]
    Incompatible(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

/// The search space of a request exceeds the configured budget.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("search space of C(m,n) = {subsets} subsets ({bits:.1} bits) exceeds the budget of {budget} bits")]
pub struct Infeasible {
    pub subsets: u128,
    pub bits: f64,
    pub budget: f64,
}

/// Errors from the arrow search and the counterexample tree.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Infeasible(#[from] Infeasible),
}
