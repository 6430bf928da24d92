use thiserror::Error;

use crate::affine::CoverVector;

#[derive(Debug, Error)]
pub enum Error {
    #[error("boundary index must be 1, 2 or 3 (got {0})")]
    InvalidBoundaryIndex(usize),
    #[error("the origin has no lift to the cover")]
    OriginNotLiftable,
    #[error("direction {0} is not primitive")]
    NonPrimitive(CoverVector),
    #[error("degree cutoff must be at least {min} (got {got})")]
    InvalidCutoff { got: u32, min: u32 },
    #[error("cutoff mismatch: {left} vs {right}")]
    CutoffMismatch { left: u32, right: u32 },
    #[error("series is not a unit modulo the maximal ideal")]
    NonUnit,
    #[error("monomial with exponent {exponent} crosses boundary ray {ray} against its direction")]
    NegativeKinkExponent { ray: CoverVector, exponent: CoverVector },
    #[error("path crosses boundary ray {0}; path-ordered products stay inside one cone")]
    BoundaryRayInPath(CoverVector),
    #[error("path rays do not lie in a single cone")]
    MixedConesInPath,
    #[error("endpoint is not generic: {0}")]
    Genericity(String),
    #[error("no generic endpoint found after {0} attempts")]
    GenericityExhausted(usize),
    #[error("structure constant for {point} has a non-integral coefficient {coeff}")]
    NonIntegral { point: String, coeff: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
