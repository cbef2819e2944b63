//! Crate-wide error type.

use thiserror::Error;

use crate::jet::JetError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("normal direction degenerates at the point (|w| = {0:.3e})")]
    DegenerateNormal(f64),
    #[error("components of df disagree on the null direction along v = 0 (residual {0:.3e})")]
    InconsistentNullDirection(f64),
    #[error("surface is not in adapted position: {0}")]
    NotAdapted(String),
    #[error("degenerate singular point (d lambda = 0); frame maps are unavailable")]
    DegeneratePoint,
    #[error("principal curvatures coincide at the point (discriminant {0:.3e})")]
    UmbilicDegeneracy(f64),
    #[error("map is not a front at the point (margin {0:.3e})")]
    NotAFront(f64),
    #[error("principal frame degenerates: {0}")]
    DegenerateFrame(&'static str),
    #[error("limit along the singular curve needs more than the available jet order")]
    IndeterminateLimit,
    #[error("point lies on the singular set")]
    EvaluationOnSingularSet,
    #[error("the singular curve of the focal surface is not regular at the point")]
    DegenerateContact,
    #[error("the focal surface has a degenerate singular point")]
    DegenerateFocalSingularity,
    #[error("bounded principal curvature vanishes (|kappa| = {0:.3e})")]
    VanishingBoundedCurvature(f64),
    #[error("operation needs {0}")]
    Precondition(&'static str),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("rational literal or coefficient out of range at line {line}")]
    RationalOverflow { line: usize },
    #[error("every mesh sample was dropped")]
    EmptyMesh,
    #[error("curve tracing lost the curve after {steps} steps (residual {residual:.3e})")]
    LostCurve { steps: usize, residual: f64 },
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
