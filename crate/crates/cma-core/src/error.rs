use thiserror::Error;

/// Errors raised by the algebra kernel.
///
/// `Parse`/`Homogeneity`/`Reference` come out of job parsing, the math
/// preconditions (`NotCohenMacaulay`, ...) out of the approximation layer,
/// and `Internal` marks a violated invariant that should never be reachable
/// from valid inputs.
#[derive(Debug, Error)]
pub enum CaError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("inhomogeneous input: {0}")]
    Homogeneity(String),

    #[error("unknown reference: {0}")]
    Reference(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("the ring is not Cohen-Macaulay: {0}")]
    NotCohenMacaulay(String),

    #[error("the ring is not Gorenstein: {0}")]
    NotGorenstein(String),

    #[error("module is not Cohen-Macaulay of pure codepth {expected}: Ext^{offending} into the canonical module is nonzero")]
    NotCodepthPure { expected: usize, offending: usize },

    #[error("module has no finite canonical-module resolution certificate: {0}")]
    NotFid(String),

    #[error("ring dimension {0} is too small (need dim >= 2)")]
    DimensionTooSmall(usize),

    #[error("Ext group is not one-dimensional: dim = {0}")]
    NonOneDimensionalExt(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CaError {
    pub fn internal(msg: impl Into<String>) -> Self {
        CaError::Internal(msg.into())
    }

    /// Process exit code class: 1 parse, 2 math precondition, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CaError::Parse { .. } | CaError::Homogeneity(_) | CaError::Reference(_) => 1,
            CaError::Internal(_) => 3,
            _ => 2,
        }
    }
}
