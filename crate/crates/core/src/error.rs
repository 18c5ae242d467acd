use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown basis vector {0:?}")]
    UnknownBasis(String),
    #[error("invalid formula: {0}")]
    InvalidSpec(String),
    #[error("element is not weight-homogeneous")]
    Inhomogeneous,
    #[error("formula has no weights (ungraded)")]
    Ungraded,
    #[error("sweep bound {bound} insufficient: boundary row has nonzero defects")]
    BoundInsufficient { bound: u32 },
    #[error("structure constants leave S: {0}")]
    ConstantsLeaveS(String),
    #[error("bilinear form is not symmetric")]
    FormNotSymmetric,
    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("no central vector designated")]
    NoCentral,
    #[error("verdict not injective ({0}); run `vertexlie check` for the defect report")]
    NotInjective(String),
    #[error("weight {weight} exceeds cutoff {cutoff}; raise --cutoff")]
    CutoffExceeded { weight: String, cutoff: String },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
