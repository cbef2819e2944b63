//! Singularity type of the map at a point, read from derivatives of the
//! signed area density along a null vector field.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::{Jet2, JetVec3, VanishingOrder};
use crate::surface::{evaluate_jets, FrameFamily, FrontModel, PointKind, SurfaceSpec};
use crate::tol::{Tolerances, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SingularityClass {
    Regular,
    CuspidalEdge,
    Swallowtail,
    CuspidalButterfly,
    CuspidalLips,
    CuspidalBeaks,
    NonFront,
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SingularKind {
    FirstKind,
    SecondKind,
    NotApplicable,
}

/// How `lambda` and `eta` were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CriteriaRoute {
    /// `eta = d_u + e(u) d_v` or `d_v` from the adapted frame.
    Adapted,
    /// `lambda` from a common factor of `f_u x f_v`, `eta` from the Gram matrix.
    General,
}

/// The scalars of the recognition criteria at the point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Criteria {
    pub corank: usize,
    pub lambda: f64,
    pub lambda_u: f64,
    pub lambda_v: f64,
    pub eta_lambda: f64,
    pub eta2_lambda: f64,
    pub eta3_lambda: f64,
    pub hessian_det: f64,
    /// `|d nu(eta)|` at the point, or the frame's frontness quantity.
    pub front_witness: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularityReport {
    pub class: SingularityClass,
    pub kind: SingularKind,
    pub admissible_order: Option<VanishingOrder>,
    pub route: CriteriaRoute,
    pub criteria: Criteria,
    pub named: Vec<(String, Verdict)>,
    pub is_front: Verdict,
    /// Smallest `|x|` over the scalars the verdict requires to be non-zero.
    pub margin: f64,
}

/// Pure decision table on the criteria.
pub fn decide(c: &Criteria, eps: f64) -> (SingularityClass, SingularKind, f64) {
    use SingularityClass::*;
    let nz = |x: f64| x.abs() > eps;
    let grad = c.lambda_u.hypot(c.lambda_v);
    if nz(c.lambda) {
        return (Regular, SingularKind::NotApplicable, c.lambda.abs());
    }
    if c.corank != 1 {
        return (Unresolved, SingularKind::NotApplicable, 0.0);
    }
    if !nz(c.front_witness) {
        return (NonFront, SingularKind::NotApplicable, 0.0);
    }
    let front = c.front_witness.abs();
    if nz(grad) {
        let kind = if nz(c.eta_lambda) { SingularKind::FirstKind } else { SingularKind::SecondKind };
        let base = grad.min(front);
        return if nz(c.eta_lambda) {
            (CuspidalEdge, kind, base.min(c.eta_lambda.abs()))
        } else if nz(c.eta2_lambda) {
            (Swallowtail, kind, base.min(c.eta2_lambda.abs()))
        } else if nz(c.eta3_lambda) {
            (CuspidalButterfly, kind, base.min(c.eta3_lambda.abs()))
        } else {
            (Unresolved, kind, 0.0)
        };
    }
    if c.hessian_det > eps {
        (CuspidalLips, SingularKind::NotApplicable, front.min(c.hessian_det))
    } else if c.hessian_det < -eps && nz(c.eta2_lambda) {
        (CuspidalBeaks, SingularKind::NotApplicable, front.min(c.hessian_det.abs()).min(c.eta2_lambda.abs()))
    } else {
        (Unresolved, SingularKind::NotApplicable, 0.0)
    }
}

/// `lambda`, unit normal and a null vector field from the general route.
#[derive(Debug, Clone)]
pub struct LambdaGerm {
    pub lambda: Jet2,
    pub nu: JetVec3,
    pub eta: (Jet2, Jet2),
    pub corank: usize,
}

/// Signed area density without assuming adapted coordinates.
///
/// `f_u x f_v = c_k w` where `c_k` is the component of lowest vanishing
/// order; `nu = w / |w|` and `lambda = c_k |w|`.
pub fn general_lambda(spec: &SurfaceSpec, p: (f64, f64), order: usize, tol: Tolerances) -> Result<LambdaGerm> {
    let jets = evaluate_jets(spec, p, order + 1);
    let fu = jets.du();
    let fv = jets.dv();
    let cross = fu.cross(&fv);
    let scale = fu.max_abs().max(fv.max_abs()).max(1.0);
    let [a, b] = [crate::surface::norm3(fu.value()), crate::surface::norm3(fv.value())];
    let corank = if crate::surface::norm3(cross.value()) > tol.zero * scale * scale {
        0
    } else if a.max(b) > tol.zero * scale {
        1
    } else {
        2
    };
    let n = fu.order();
    let (eta_u, eta_v) = {
        let g_uv = fu.dot(&fv);
        if corank == 2 {
            (Jet2::zero(p, n), Jet2::zero(p, n))
        } else if b >= a {
            let inv = fv.dot(&fv).recip()?;
            (Jet2::constant(p, n, 1.0), -(g_uv * inv))
        } else {
            let inv = fu.dot(&fu).recip()?;
            (-(g_uv * inv), Jet2::constant(p, n, 1.0))
        }
    };
    let (lambda, nu) = if corank == 0 {
        let norm = cross.norm()?;
        let nu = cross.scale(&norm.recip()?);
        (norm, nu)
    } else {
        let orders: Vec<VanishingOrder> = cross.0.iter().map(|c| c.vanishing_order(tol.zero)).collect();
        let lowest = |k: usize| match orders[k] {
            VanishingOrder::Exact(m) => (m, -lead_norm(&cross.0[k], m)),
            VanishingOrder::AtLeast(m) => (m, 0.0),
        };
        let k = (0..3)
            .min_by(|&x, &y| lowest(x).partial_cmp(&lowest(y)).expect("finite"))
            .expect("three components");
        if orders[k].exact().is_none() {
            return Err(Error::DegenerateNormal(0.0));
        }
        let ck = &cross.0[k];
        let w = JetVec3([
            cross.0[0].divide_exact(ck, tol.div)?,
            cross.0[1].divide_exact(ck, tol.div)?,
            cross.0[2].divide_exact(ck, tol.div)?,
        ]);
        let norm = w.norm()?;
        let nu = w.scale(&norm.recip()?);
        (ck.truncate(norm.order()) * norm, nu)
    };
    let (lu, lv) = (lambda.coeff(1, 0), lambda.coeff(0, 1));
    let sign = if corank == 0 {
        1.0
    } else if lv.abs() > tol.zero {
        lv.signum()
    } else if lu.abs() > tol.zero {
        lu.signum()
    } else {
        1.0
    };
    Ok(LambdaGerm { lambda: lambda.scale(sign), nu: nu.scale_f64(sign), eta: (eta_u, eta_v), corank })
}

fn lead_norm(j: &Jet2, m: usize) -> f64 {
    (0..=m).map(|k| j.coeff(m - k, k).powi(2)).sum::<f64>().sqrt()
}

fn criteria_from(lambda: &Jet2, eta: &(Jet2, Jet2), nu: &JetVec3, corank: usize) -> Criteria {
    let (a, b) = eta;
    let d1 = lambda.directional(a, b);
    let d2 = d1.directional(a, b);
    let d3 = d2.directional(a, b);
    let hessian_det = {
        let (uu, uv, vv) = (2.0 * lambda.coeff(2, 0), lambda.coeff(1, 1), 2.0 * lambda.coeff(0, 2));
        uu * vv - uv * uv
    };
    let witness = {
        let d = nu.directional(a, b).value();
        crate::surface::norm3(d)
    };
    Criteria {
        corank,
        lambda: lambda.value(),
        lambda_u: lambda.coeff(1, 0),
        lambda_v: lambda.coeff(0, 1),
        eta_lambda: d1.value(),
        eta2_lambda: d2.value(),
        eta3_lambda: d3.value(),
        hessian_det,
        front_witness: witness,
    }
}

fn corank_of(fu: [f64; 3], fv: [f64; 3], eps: f64) -> usize {
    let n = crate::surface::norm3;
    let cross = [fu[1] * fv[2] - fu[2] * fv[1], fu[2] * fv[0] - fu[0] * fv[2], fu[0] * fv[1] - fu[1] * fv[0]];
    let scale = n(fu).max(n(fv)).max(1.0);
    if n(cross) > eps * scale * scale {
        0
    } else if n(fu).max(n(fv)) > eps * scale {
        1
    } else {
        2
    }
}

/// Frontness at `p`: `L^ + e M^` for a second-kind frame, `|d nu(eta)|`
/// otherwise.
pub fn is_front_at(spec: &SurfaceSpec, p: (f64, f64), tol: Tolerances) -> Result<Verdict> {
    if let Ok(model) = FrontModel::new(spec, p, tol) {
        if model.kind() != PointKind::Degenerate {
            let frame = model.frame_at(p, 3)?;
            return Ok(match (frame.kind, frame.family) {
                (PointKind::Regular, _) => Verdict::of(frame.lambda.value(), tol.zero),
                (PointKind::SecondKind, FrameFamily::NullTangent) => {
                    let x = &frame.fund.l + &(&frame.e * &frame.fund.m);
                    Verdict::of(x.value(), tol.zero)
                }
                _ => {
                    let (a, b) = frame.eta();
                    Verdict::of(crate::surface::norm3(frame.nu.directional(&a, &b).value()), tol.zero)
                }
            });
        }
    }
    let germ = general_lambda(spec, p, 3, tol)?;
    let d = germ.nu.directional(&germ.eta.0, &germ.eta.1).value();
    Ok(Verdict::of(crate::surface::norm3(d), tol.zero))
}

/// Vanishing order of `e(u)` at a second-kind point.
pub fn admissibility_order(spec: &SurfaceSpec, p: (f64, f64), order: usize, tol: Tolerances) -> Result<VanishingOrder> {
    let model = FrontModel::new(spec, p, tol)?;
    if model.kind() != PointKind::SecondKind {
        return Err(Error::Precondition("a second-kind singular point"));
    }
    let e = model.null_function(p.0, order)?.ok_or(Error::Precondition("a null-tangent frame"))?;
    Ok(e.vanishing_order(tol.zero))
}

pub fn classify_point(spec: &SurfaceSpec, p: (f64, f64), order: usize, tol: Tolerances) -> Result<SingularityReport> {
    let model = FrontModel::new(spec, p, tol);
    let adapted = match &model {
        Ok(m) if m.kind() != PointKind::Degenerate => Some(m.frame_at(p, order)?),
        _ => None,
    };
    let (criteria, route) = match &adapted {
        Some(frame) => {
            let jets = evaluate_jets(spec, p, 1);
            let corank = corank_of(jets.du().value(), jets.dv().value(), tol.zero);
            let mut c = criteria_from(&frame.lambda, &frame.eta(), &frame.nu, corank);
            if frame.kind == PointKind::SecondKind {
                c.front_witness = (&frame.fund.l + &(&frame.e * &frame.fund.m)).value().abs();
            }
            (c, CriteriaRoute::Adapted)
        }
        None => {
            let germ = general_lambda(spec, p, order, tol)?;
            (criteria_from(&germ.lambda, &germ.eta, &germ.nu, germ.corank), CriteriaRoute::General)
        }
    };
    let (class, kind, margin) = decide(&criteria, tol.zero);
    let admissible_order = match (&model, kind) {
        (Ok(m), SingularKind::SecondKind) => m.null_function(p.0, order)?.map(|e| e.vanishing_order(tol.zero)),
        _ => None,
    };
    let v = |x: f64| Verdict::of(x, tol.zero);
    let named = vec![
        ("lambda".to_string(), v(criteria.lambda)),
        ("lambda_u".to_string(), v(criteria.lambda_u)),
        ("lambda_v".to_string(), v(criteria.lambda_v)),
        ("eta_lambda".to_string(), v(criteria.eta_lambda)),
        ("eta_eta_lambda".to_string(), v(criteria.eta2_lambda)),
        ("eta_eta_eta_lambda".to_string(), v(criteria.eta3_lambda)),
        ("det_hessian_lambda".to_string(), v(criteria.hessian_det)),
    ];
    Ok(SingularityReport {
        class,
        kind,
        admissible_order,
        route,
        criteria,
        named,
        is_front: v(criteria.front_witness),
        margin,
    })
}
