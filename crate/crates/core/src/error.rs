use alloc::string::String;

use crate::scalar::Field;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Input(String),
    /// The category violates an assumption the operation relies on
    /// (for instance an endomorphism ring of dimension > 1).
    #[error("unsupported category: {0}")]
    Unsupported(String),
    /// An oracle that needs extra structure (an invertible Hom-dimension
    /// matrix, suspension data) cannot run on this input.
    #[error("oracle unavailable: {0}")]
    OracleUnavailable(String),
    /// A criterion's hypothesis failed, so the question cannot be decided by it.
    #[error("criterion inapplicable: {0}")]
    CriterionInapplicable(String),
    #[error("kernel not found: {0}")]
    KernelNotFound(String),
    /// Internal consistency failure; indicates a bug or a corrupted presentation.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
