use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    Antisymmetry(usize, usize),

    #[error("Jacobi identity fails for basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),

    #[error("matrices are not closed under bracket: [{0}, {1}] leaves the span")]
    NotClosed(usize, usize),

    #[error("vectors are linearly dependent")]
    Dependent,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("sampling failed after {trials} trials (best rank {best}, wanted {wanted}); raise the bound")]
    Sampling {
        trials: usize,
        best: usize,
        wanted: usize,
    },

    #[error("operation needs a matrix realization")]
    MissingRealization,

    #[error("unsupported form: {0}")]
    UnsupportedForm(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
