use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system: {0}")]
    UnsupportedRootSystem(String),
    #[error("malformed weight: {0}")]
    MalformedWeight(String),
    #[error("enumeration budget exceeded: 2^{exponent} subsets, budget {budget}")]
    BudgetExceeded { exponent: usize, budget: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnsupportedRootSystem(_) => "unsupported_root_system",
            Error::MalformedWeight(_) => "malformed_weight",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::Precondition(_) => "precondition_violated",
            Error::Unsupported(_) => "unsupported_configuration",
            Error::Internal(_) => "internal_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
