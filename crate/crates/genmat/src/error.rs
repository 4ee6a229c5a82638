use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Returned when two generalized matrices (or cochains) that must share
    /// rank and dimension do not.
    #[error("shape mismatch: expected rank {expected_rank} dim {expected_dim}, got rank {rank} dim {dim}")]
    ShapeMismatch {
        expected_rank: usize,
        expected_dim: usize,
        rank: usize,
        dim: usize,
    },

    /// Index tuple has the wrong length or an entry outside 1..=dim.
    #[error("index {index:?} out of range for rank {rank}, dim {dim}")]
    IndexOutOfRange {
        index: Vec<usize>,
        rank: usize,
        dim: usize,
    },

    /// An n-ary operation received the wrong number of arguments.
    #[error("arity mismatch: operation on rank {rank} needs {expected} arguments, got {got}")]
    ArityMismatch {
        rank: usize,
        expected: usize,
        got: usize,
    },

    /// A parameter violates a precondition (rank < 2, n < 3 for the
    /// multiplicity constants, omega <= 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data failed validation (non-antisymmetric pair table, malformed
    /// input file, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A trajectory left the configured norm bound before reaching t1.
    /// The partial trajectory up to the blow-up is preserved by the caller.
    #[error("trajectory diverged at t = {t}: |x| = {norm}")]
    Divergence { t: f64, norm: f64 },

    /// A scalar function returned NaN or infinity during bracket evaluation.
    #[error("non-finite function value at {at:?}")]
    NonFinite { at: Vec<f64> },
}

pub type Result<T> = std::result::Result<T, Error>;
