use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is not unitary (||AA^† - I||_F = {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("matrix is not Hermitian: {0}")]
    NotHermitian(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("numerical tolerance violated: {0}")]
    Numerical(String),
}
