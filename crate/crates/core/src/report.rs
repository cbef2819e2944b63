//! Analysis requests and the machine-readable report document.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{classify_point, SingularityClass, SingularityReport};
use crate::curvature::{
    curvature_data, gauss_mean_regular, limiting_normal_curvature, normalized_cuspidal_curvature, sub_parabolic_ridge,
    CurvatureData, SubParabolic,
};
use crate::error::{Error, Result};
use crate::focal::{classify_focal, congruence_density, FocalClass, FocalReport};
use crate::format::SurfaceFile;
use crate::jet::{VanishingOrder, DEFAULT_ORDER, MAX_ORDER, MIN_ORDER};
use crate::poly::{ratio_to_f64, Rational};
use crate::surface::{check_adapted, AdaptedStatus, FrameFamily, FrontFrame, FrontModel, PointKind, SurfaceSpec};
use crate::tol::{Tolerances, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Output {
    Report,
    Mesh,
    SingularCurve,
    CongruenceCheck,
}

#[derive(Debug, Clone)]
pub struct AnalysisRequest {
    pub surface: SurfaceSpec,
    pub point: (Rational, Rational),
    pub jet_order: usize,
    pub tolerances: Tolerances,
    pub outputs: Vec<Output>,
}

impl AnalysisRequest {
    pub fn new(surface: SurfaceSpec, point: (Rational, Rational)) -> Self {
        AnalysisRequest {
            surface,
            point,
            jet_order: DEFAULT_ORDER,
            tolerances: Tolerances::default(),
            outputs: vec![Output::Report],
        }
    }

    /// A request for a parsed file; `point` overrides the file's marked point.
    pub fn from_file(file: &SurfaceFile, point: Option<(Rational, Rational)>) -> Result<Self> {
        let p = point
            .or(file.point)
            .ok_or_else(|| Error::InvalidRequest("no point given and none marked in the file".into()))?;
        Ok(AnalysisRequest::new(file.spec.clone(), p))
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&self.jet_order) {
            return Err(Error::InvalidRequest(format!(
                "jet order {} outside [{MIN_ORDER}, {MAX_ORDER}]",
                self.jet_order
            )));
        }
        let t = self.tolerances;
        if !(t.zero > 0.0 && t.div > 0.0) {
            return Err(Error::InvalidRequest("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn point_f64(&self) -> (f64, f64) {
        (ratio_to_f64(self.point.0), ratio_to_f64(self.point.1))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceRecord {
    pub x: String,
    pub y: String,
    pub z: String,
    pub point: [String; 2],
    pub jet_order: usize,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConventionRecord {
    /// Sign applied to the unit normal relative to `f_u x f_v / v`.
    pub orientation: f64,
    pub lambda_v: Option<f64>,
    pub frame_family: Option<FrameFamily>,
    pub point_kind: Option<PointKind>,
    pub adapted: AdaptedStatus,
    pub null_function_order: Option<VanishingOrder>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureRecord {
    pub kappa: f64,
    pub kappa_hat: Verdict,
    pub rho_hat: Option<f64>,
    pub v: (f64, f64),
    pub v_tilde: (f64, f64),
    /// `|det(V, V~)|` at the point.
    pub independence: Verdict,
    pub x_norm: f64,
    pub y_norm: f64,
    pub limiting_normal_curvature: Option<f64>,
    pub normalized_cuspidal_curvature: Option<f64>,
    pub gauss_mean: Option<(f64, f64)>,
    pub sub_parabolic: SubParabolic,
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceCheck {
    pub samples: usize,
    pub max_scaled_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageNote {
    pub stage: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub surface: SurfaceRecord,
    pub conventions: ConventionRecord,
    pub singularity: SingularityReport,
    pub curvature: Option<CurvatureRecord>,
    pub focal: Option<FocalReport>,
    pub congruence: Option<CongruenceCheck>,
    pub notes: Vec<StageNote>,
    pub unresolved: bool,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `0` clean, `2` when an Unresolved verdict is present.
    pub fn exit_code(&self) -> i32 {
        if self.unresolved {
            2
        } else {
            0
        }
    }
}

fn curvature_record(frame: &FrontFrame, data: &CurvatureData, model: &FrontModel, tol: Tolerances) -> CurvatureRecord {
    let p = &data.principal;
    let (v, vt) = (data.v.value(), data.v_tilde.value());
    let kappa_nu = match frame.kind {
        PointKind::SecondKind => limiting_normal_curvature(frame, tol).ok(),
        PointKind::FirstKind | PointKind::Regular => {
            let fu = frame.fu.value();
            let den = fu[0] * fu[0] + fu[1] * fu[1] + fu[2] * fu[2];
            (den > tol.zero).then(|| frame.fu.du().dot(&frame.nu).value() / den)
        }
        PointKind::Degenerate => None,
    };
    CurvatureRecord {
        kappa: p.kappa.value(),
        kappa_hat: Verdict::of(p.kappa_hat.value(), tol.zero),
        rho_hat: p.rho_hat.as_ref().map(|r| r.value()),
        v,
        v_tilde: vt,
        independence: Verdict::of((v.0 * vt.1 - v.1 * vt.0).abs(), tol.zero),
        x_norm: crate::surface::norm3(data.xy.x.value()),
        y_norm: crate::surface::norm3(data.xy.y.value()),
        limiting_normal_curvature: kappa_nu,
        normalized_cuspidal_curvature: normalized_cuspidal_curvature(frame).ok(),
        gauss_mean: gauss_mean_regular(model, frame.base()).ok(),
        sub_parabolic: sub_parabolic_ridge(frame, data, tol),
    }
}

/// The congruence factorization at `samples` seeded points `(q, w)` with `q`
/// within `radius` of `center`.
pub fn congruence_check(model: &FrontModel, center: (f64, f64), radius: f64, samples: usize, seed: u64) -> Result<CongruenceCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let q = (center.0 + rng.gen_range(-radius..radius), center.1 + rng.gen_range(-radius..radius));
        let w = rng.gen_range(-1.0..1.0);
        let (lhs, rhs) = congruence_density(model, q, w)?;
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
    }
    Ok(CongruenceCheck { samples, max_scaled_residual: worst, passed: worst < 1e-8 })
}

pub fn run_report(req: &AnalysisRequest) -> Result<ReportDocument> {
    req.validate()?;
    let tol = req.tolerances;
    let p = req.point_f64();
    let spec = &req.surface;
    let singularity = classify_point(spec, p, req.jet_order, tol)?;
    let mut notes = Vec::new();
    let mut curvature = None;
    let mut focal = None;
    let mut congruence = None;
    let mut conventions = ConventionRecord {
        orientation: 1.0,
        lambda_v: None,
        frame_family: None,
        point_kind: None,
        adapted: check_adapted(spec, p),
        null_function_order: singularity.admissible_order,
    };
    match FrontModel::new(spec, p, tol) {
        Err(e) => notes.push(StageNote { stage: "surface_model", message: e.to_string() }),
        Ok(model) => {
            conventions.orientation = model.orientation();
            conventions.point_kind = Some(model.kind());
            conventions.frame_family = Some(model.family());
            match model.frame_at(p, req.jet_order) {
                Err(e) => notes.push(StageNote { stage: "surface_model", message: e.to_string() }),
                Ok(frame) => {
                    conventions.lambda_v = model.has_singular_axis().then(|| frame.lambda.coeff(0, 1));
                    match curvature_data(&frame, tol) {
                        Err(e) => notes.push(StageNote { stage: "curvature_engine", message: e.to_string() }),
                        Ok(data) => {
                            curvature = Some(curvature_record(&frame, &data, &model, tol));
                            if matches!(frame.kind, PointKind::FirstKind | PointKind::SecondKind) {
                                match classify_focal(&frame, &data, tol) {
                                    Ok(r) => focal = Some(r),
                                    Err(e) => notes.push(StageNote { stage: "focal_analysis", message: e.to_string() }),
                                }
                            }
                        }
                    }
                }
            }
            if req.outputs.contains(&Output::CongruenceCheck) {
                match congruence_check(&model, p, 0.25, 100, 0x5eed) {
                    Ok(c) => congruence = Some(c),
                    Err(e) => notes.push(StageNote { stage: "focal_analysis", message: e.to_string() }),
                }
            }
        }
    }
    let unresolved = singularity.class == SingularityClass::Unresolved
        || focal.as_ref().is_some_and(|f| f.focal_class == FocalClass::Unresolved);
    let [x, y, z] = &spec.components;
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        surface: SurfaceRecord {
            x: x.to_string(),
            y: y.to_string(),
            z: z.to_string(),
            point: [req.point.0.to_string(), req.point.1.to_string()],
            jet_order: req.jet_order,
            tolerances: tol,
        },
        conventions,
        singularity,
        curvature,
        focal,
        congruence,
        notes,
        unresolved,
    })
}
