//! The focal surface `C^ = f + rho^ nu` of the unbounded principal
//! curvature: normal, area density, singularity type, contact of singular
//! curves and boundedness of its Gaussian curvature.

use serde::Serialize;

use crate::curvature::{principal_values, CurvatureData};
use crate::error::{Error, Result};
use crate::jet::{Jet1, Jet2, JetVec3, VanishingOrder};
use crate::surface::{norm3, FrameFamily, FrontFrame, FrontModel, PointKind};
use crate::tol::{Tolerances, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FocalClass {
    RegularPoint,
    CuspidalEdge,
    Swallowtail,
    CuspidalLips,
    CuspidalBeaks,
    DegenerateOther,
    Unresolved,
}

pub fn focal_surface(frame: &FrontFrame, data: &CurvatureData) -> Result<JetVec3> {
    let rho = data.principal.rho_hat()?;
    Ok(frame.f.add(&frame.nu.scale(rho)))
}

/// `V~ rho^` as a jet.
pub fn vt_rho(data: &CurvatureData) -> Result<Jet2> {
    Ok(data.v_tilde.apply(data.principal.rho_hat()?))
}

/// Unit normal `e2 = y / |y|` of the focal surface and its area density.
#[derive(Debug, Clone)]
pub struct FocalDensity {
    pub e2: JetVec3,
    /// `det(C^_u, C^_v, e2)`.
    pub lambda_c: Jet2,
    /// `(V~ rho^) |y| / (V~_1 kappa^ lambda^)`, for null-tangent frames.
    pub lambda_c_formula: Option<Jet2>,
}

pub fn focal_normal_and_density(frame: &FrontFrame, data: &CurvatureData) -> Result<FocalDensity> {
    let c = focal_surface(frame, data)?;
    let e2 = data.xy.e2.clone();
    let lambda_c = JetVec3::det(&c.du(), &c.dv(), &e2);
    let lambda_c_formula = if frame.family == FrameFamily::NullTangent {
        let num = &vt_rho(data)? * &data.xy.y.norm()?;
        let den = &(&data.v_tilde.0 * &data.principal.kappa_hat) * &frame.lambda_hat;
        Some(num.div(&den)?)
    } else {
        None
    };
    Ok(FocalDensity { e2, lambda_c, lambda_c_formula })
}

/// Named scalars at the point that the focal verdicts are read from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FocalScalars {
    pub vt_rho: f64,
    pub vt_rho_u: f64,
    pub vt_rho_v: f64,
    pub v_vt_rho: f64,
    pub vt_vt_rho: f64,
    pub vt_vt_vt_rho: f64,
    /// `((V~rho^)_uu, (V~rho^)_uv, (V~rho^)_vv)`.
    pub hessian: [f64; 3],
    pub hessian_det: f64,
    pub det_y: f64,
    pub vt_kappa: f64,
}

pub fn focal_scalars(data: &CurvatureData) -> Result<FocalScalars> {
    let g = vt_rho(data)?;
    let vt = &data.v_tilde;
    let vt_g = vt.apply(&g);
    let vt_vt_g = vt.apply(&vt_g);
    let y = &data.xy.y;
    let hessian = [2.0 * g.coeff(2, 0), g.coeff(1, 1), 2.0 * g.coeff(0, 2)];
    Ok(FocalScalars {
        vt_rho: g.value(),
        vt_rho_u: g.coeff(1, 0),
        vt_rho_v: g.coeff(0, 1),
        v_vt_rho: data.v.apply(&g).value(),
        vt_vt_rho: vt_g.value(),
        vt_vt_vt_rho: vt_vt_g.value(),
        hessian,
        hessian_det: hessian[0] * hessian[2] - hessian[1] * hessian[1],
        det_y: JetVec3::det(&y.du(), &y.dv(), y).value(),
        vt_kappa: vt.apply(&data.principal.kappa).value(),
    })
}

/// Decision table for the focal surface at a singular point of the front.
///
/// The non-degeneracy `d(V~rho^) != 0` splits the table; `V(V~rho^)` is
/// reported but not used as the gate (it vanishes on flat fronts even when
/// the focal singular point is non-degenerate).
pub fn decide_focal(kind: PointKind, s: &FocalScalars, eps: f64) -> (FocalClass, f64) {
    use FocalClass::*;
    if kind == PointKind::FirstKind {
        return (RegularPoint, 0.0);
    }
    let nz = |x: f64| x.abs() > eps;
    let grad = s.vt_rho_u.hypot(s.vt_rho_v);
    if nz(grad) {
        if nz(s.vt_vt_rho) {
            (CuspidalEdge, grad.min(s.vt_vt_rho.abs()))
        } else if nz(s.vt_vt_vt_rho) {
            (Swallowtail, grad.min(s.vt_vt_vt_rho.abs()))
        } else {
            (Unresolved, 0.0)
        }
    } else if s.hessian_det > eps {
        (CuspidalLips, s.hessian_det)
    } else if s.hessian_det < -eps && nz(s.vt_vt_vt_rho) {
        (CuspidalBeaks, s.hessian_det.abs().min(s.vt_vt_vt_rho.abs()))
    } else if nz(s.hessian_det) {
        (DegenerateOther, s.hessian_det.abs())
    } else {
        (Unresolved, 0.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FocalReport {
    pub focal_class: FocalClass,
    pub scalars: FocalScalars,
    pub named: Vec<(String, Verdict)>,
    /// `|d(V~ rho^)|` at the point.
    pub nondegenerate: Verdict,
    /// `|(e2)_u|` at the point.
    pub is_front: Verdict,
    pub rank: usize,
    pub contact_order: Option<VanishingOrder>,
    pub focal_k_rationally_bounded: Option<bool>,
    pub sub_parabolic: bool,
    pub margin: f64,
}

fn rank2(a: [f64; 3], b: [f64; 3], eps: f64) -> usize {
    let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let scale = norm3(a).max(norm3(b)).max(1.0);
    if norm3(c) > eps * scale * scale {
        2
    } else if norm3(a).max(norm3(b)) > eps * scale {
        1
    } else {
        0
    }
}

/// Rank of `dC^` at the frame's base point.
pub fn focal_rank(frame: &FrontFrame, data: &CurvatureData, tol: Tolerances) -> Result<usize> {
    let c = focal_surface(frame, data)?;
    Ok(rank2(c.du().value(), c.dv().value(), tol.zero))
}

pub fn classify_focal(frame: &FrontFrame, data: &CurvatureData, tol: Tolerances) -> Result<FocalReport> {
    if !matches!(frame.kind, PointKind::FirstKind | PointKind::SecondKind) {
        return Err(Error::Precondition("a non-degenerate singular point of the front"));
    }
    let s = focal_scalars(data)?;
    let (focal_class, margin) = decide_focal(frame.kind, &s, tol.zero);
    let v = |x: f64| Verdict::of(x, tol.zero);
    let named = vec![
        ("vt_rho".to_string(), v(s.vt_rho)),
        ("vt_rho_u".to_string(), v(s.vt_rho_u)),
        ("vt_rho_v".to_string(), v(s.vt_rho_v)),
        ("v_vt_rho".to_string(), v(s.v_vt_rho)),
        ("vt_vt_rho".to_string(), v(s.vt_vt_rho)),
        ("vt_vt_vt_rho".to_string(), v(s.vt_vt_vt_rho)),
        ("vt_rho_uu".to_string(), v(s.hessian[0])),
        ("vt_rho_uv".to_string(), v(s.hessian[1])),
        ("vt_rho_vv".to_string(), v(s.hessian[2])),
        ("det_hessian_vt_rho".to_string(), v(s.hessian_det)),
        ("det_y_u_y_v_y".to_string(), v(s.det_y)),
        ("vt_kappa".to_string(), v(s.vt_kappa)),
    ];
    let e2u = data.xy.e2.du().value();
    let contact_order = contact_order(frame, data, tol).ok();
    let focal_k_rationally_bounded = focal_k_rational_bounded(frame, data, tol).ok().map(|r| r.verdict);
    Ok(FocalReport {
        focal_class,
        scalars: s,
        named,
        nondegenerate: v(s.vt_rho_u.hypot(s.vt_rho_v)),
        is_front: v(norm3(e2u)),
        rank: focal_rank(frame, data, tol)?,
        contact_order,
        focal_k_rationally_bounded,
        sub_parabolic: !v(s.vt_kappa).nonzero,
        margin,
    })
}

/// The contact function `c(u) = e(u) V~_1(u,0) rho^_v(u,0)` and the
/// restriction of `V~ rho^` to the axis, which it must equal.
pub fn contact_functions(frame: &FrontFrame, data: &CurvatureData) -> Result<(Jet1, Jet1)> {
    let e = frame.e_series().ok_or(Error::Precondition("a null-tangent frame on the singular axis"))?;
    let rho_v = data.principal.rho_hat()?.dv().restrict_to_u_line();
    let product = e.mul(&data.v_tilde.0.restrict_to_u_line()).mul(&rho_v);
    Ok((product, vt_rho(data)?.restrict_to_u_line()))
}

/// Number of contact points between the singular curves of `f` and `C^`.
pub fn contact_order(frame: &FrontFrame, data: &CurvatureData, tol: Tolerances) -> Result<VanishingOrder> {
    if frame.kind != PointKind::SecondKind {
        return Err(Error::Precondition("a second-kind singular point"));
    }
    let g = vt_rho(data)?;
    if g.coeff(1, 0).hypot(g.coeff(0, 1)) <= tol.zero {
        return Err(Error::DegenerateContact);
    }
    let (c, _) = contact_functions(frame, data)?;
    Ok(c.vanishing_order(tol.zero))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RationalBoundedness {
    pub verdict: bool,
    pub det_y: f64,
    pub vt_kappa: f64,
    /// The determinant route and `V~ kappa` agree on zero versus non-zero.
    pub routes_agree: bool,
    /// The limiting normal curvature of `C^` vanishes (follows from the verdict).
    pub focal_limiting_normal_curvature_vanishes: bool,
}

pub fn focal_k_rational_bounded(frame: &FrontFrame, data: &CurvatureData, tol: Tolerances) -> Result<RationalBoundedness> {
    if frame.kind != PointKind::SecondKind {
        return Err(Error::Precondition("a second-kind singular point"));
    }
    let s = focal_scalars(data)?;
    if s.vt_rho_u.hypot(s.vt_rho_v) <= tol.zero {
        return Err(Error::DegenerateFocalSingularity);
    }
    let verdict = s.vt_kappa.abs() <= tol.zero;
    Ok(RationalBoundedness {
        verdict,
        det_y: s.det_y,
        vt_kappa: s.vt_kappa,
        routes_agree: (s.det_y.abs() <= tol.zero) == verdict,
        focal_limiting_normal_curvature_vanishes: verdict,
    })
}

/// Both sides of `det(F_u, F_v, F_w) = (1 - w kappa)(lambda - kappa^ w)` for
/// the normal congruence `F = f + w nu` at `(q, w)`.
pub fn congruence_density(model: &FrontModel, q: (f64, f64), w: f64) -> Result<(f64, f64)> {
    let frame = model.frame_at(q, 2)?;
    let nu = frame.nu.value();
    let nu_u = frame.nu.du().value();
    let nu_v = frame.nu.dv().value();
    let fu = frame.fu.value();
    let fv = frame.fv.value();
    let a = [0, 1, 2].map(|k| fu[k] + w * nu_u[k]);
    let b = [0, 1, 2].map(|k| fv[k] + w * nu_v[k]);
    let lhs = det3(a, b, nu);
    let (kappa, kappa_hat) = principal_values(&frame);
    let rhs = (1.0 - w * kappa) * (frame.lambda.value() - kappa_hat * w);
    Ok((lhs, rhs))
}

pub(crate) fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// The bounded-side focal point `f + nu / kappa` at `q`.
pub fn focal_bounded_surface(model: &FrontModel, q: (f64, f64)) -> Result<[f64; 3]> {
    let frame = model.frame_at(q, 2)?;
    let (kappa, _) = principal_values(&frame);
    if kappa.abs() <= model.tolerances().zero || !kappa.is_finite() {
        return Err(Error::VanishingBoundedCurvature(kappa.abs()));
    }
    let f = frame.f.value();
    let nu = frame.nu.value();
    Ok([0, 1, 2].map(|k| f[k] + nu[k] / kappa))
}

/// `C^(q) = f(q) + rho^(q) nu(q)` and `kappa^(q)`.
pub fn focal_point(model: &FrontModel, q: (f64, f64)) -> Result<([f64; 3], f64)> {
    let frame = model.frame_at(q, 2)?;
    let (_, kappa_hat) = principal_values(&frame);
    let f = frame.f.value();
    let nu = frame.nu.value();
    let rho = frame.lambda.value() / kappa_hat;
    Ok(([0, 1, 2].map(|k| f[k] + rho * nu[k]), kappa_hat))
}
