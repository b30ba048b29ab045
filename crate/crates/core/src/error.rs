use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    Inexact,
    #[error("unknown variable: {0}")]
    UnknownVariable(String),
    #[error("main variables differ")]
    VariableMismatch,
    #[error("resultant undefined: both inputs are constant in the main variable")]
    BothConstant,
    #[error("input is not squarefree")]
    NotSquarefree,
    #[error("non-isolated singularities: the partial derivatives share a common factor")]
    NonIsolated,
    #[error("no admissible shear found within the slope budget")]
    ShearBudget,
    #[error("root isolation did not converge within the iteration budget")]
    IsolationBudget,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for errors caused by the input rather than by the toolkit itself.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::Inconsistency(_) | Error::ShearBudget | Error::IsolationBudget
        )
    }
}
