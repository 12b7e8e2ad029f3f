use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("columns are linearly dependent over the rationals")]
    DependentColumns,
    #[error("complex structure violation: {0}")]
    ComplexStructure(String),
    #[error("not a torus homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("form is not alternating: {0}")]
    NotAlternating(String),
    #[error("form incompatible with complex structure: E(J e{i}, J e{j}) != E(e{i}, e{j})")]
    Incompatible { i: usize, j: usize },
    #[error("inconsistent hermitian presentation: {0}")]
    InconsistentHermitian(String),
    #[error("objects live on different tori")]
    TorusMismatch,
    #[error("invalid angle: {0}")]
    InvalidAngle(String),
    #[error("incoherent family at edge {index} ({src} -> {dst}): {reason}")]
    IncoherentFamily {
        index: usize,
        src: String,
        dst: String,
        reason: String,
    },
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid base map: {0}")]
    InvalidBaseMap(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
