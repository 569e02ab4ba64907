use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index {index} out of range [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrices over different fields")]
    FieldMismatch,
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not in Omega: arrow {arrow}, k={k}")]
    NotInOmega { arrow: String, k: usize },
    #[error("omega sampling failed after {0} rejections")]
    OmegaSamplingFailed(usize),
    #[error("group element is not unitriangular at vertex `{0}`")]
    NotUnitriangular(String),
}
