//! Singularities, principal curvatures and focal surfaces of wave fronts
//! given by polynomial maps, computed with truncated Taylor jets.
//!
//! The pipeline is [`surface::FrontModel`] (normal, signed area density,
//! null direction and fundamentals at a point), [`curvature`] (bounded and
//! unbounded principal curvatures, principal vectors), [`classify`] (type
//! of the front) and [`focal`] (type of the focal surface).

pub mod checks;
pub mod classify;
pub mod curvature;
pub mod error;
pub mod fixtures;
pub mod focal;
pub mod format;
pub mod jet;
pub mod mesh;
pub mod poly;
pub mod report;
pub mod surface;
pub mod tol;
pub mod trace;

pub use classify::{classify_point, SingularKind, SingularityClass, SingularityReport};
pub use curvature::{curvature_data, CurvatureData, Principal};
pub use error::{Error, Result};
pub use focal::{classify_focal, FocalClass, FocalReport};
pub use format::{parse_surface_spec, print_surface_spec, SurfaceFile};
pub use jet::{Axis, Jet1, Jet2, JetError, JetVec3, VanishingOrder};
pub use mesh::{export_mesh, Mesh, Region, Which};
pub use poly::{Polynomial, Rational};
pub use report::{run_report, AnalysisRequest, Output, ReportDocument};
pub use surface::{FrameFamily, FrontFrame, FrontModel, PointKind, SurfaceSpec};
pub use tol::{Tolerances, Verdict, EPS_DIV, EPS_EXPORT, EPS_ZERO};
pub use trace::{trace_singular_curve, Trace, TraceOptions};
