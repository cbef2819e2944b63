//! Residuals of the structural identities between frame, curvature and
//! focal data. Each residual is the largest coefficient of the difference
//! jet divided by `max(1, largest coefficient of the terms)`.

use serde::Serialize;

use crate::curvature::{split_inputs, CurvatureData};
use crate::error::Result;
use crate::focal::{focal_normal_and_density, focal_surface, vt_rho};
use crate::jet::{Jet2, JetVec3};
use crate::surface::{FrameFamily, FrontFrame};

#[derive(Debug, Clone, Serialize)]
pub struct IdentityResidual {
    pub name: &'static str,
    pub residual: f64,
}

fn rel(diff: f64, scale: f64) -> f64 {
    diff / scale.max(1.0)
}

fn rel_vec(lhs: &JetVec3, rhs: &JetVec3) -> f64 {
    rel(lhs.sub(rhs).max_abs(), lhs.max_abs().max(rhs.max_abs()))
}

fn rel_jet(lhs: &Jet2, rhs: &Jet2) -> f64 {
    rel((lhs - rhs).max_abs(), lhs.max_abs().max(rhs.max_abs()))
}

fn combo(a: Jet2, p: &JetVec3, b: Jet2, q: &JetVec3) -> JetVec3 {
    p.scale(&a).add(&q.scale(&b))
}

/// `<nu, f_u>`, `<nu, f_v>` and `|nu|^2 - 1`.
pub fn normal_orthogonality(frame: &FrontFrame) -> f64 {
    let one = Jet2::constant(frame.base(), frame.order(), 1.0);
    [frame.nu.dot(&frame.fu), frame.nu.dot(&frame.fv), &frame.nu.dot(&frame.nu) - &one]
        .iter()
        .map(Jet2::max_abs)
        .fold(0.0, f64::max)
}

/// `lambda = det(f_u, f_v, nu)` and, on an axis, `lambda = t det(h or g, ., nu)`.
pub fn lambda_factorization(frame: &FrontFrame) -> f64 {
    let direct = JetVec3::det(&frame.fu, &frame.fv, &frame.nu);
    let mut r = rel_jet(&frame.lambda, &direct);
    let factored = match frame.family {
        FrameFamily::NullTangent => Some(JetVec3::det(&frame.frame_vector, &frame.fv, &frame.nu)),
        FrameFamily::NullTransverse => Some(JetVec3::det(&frame.fu, &frame.frame_vector, &frame.nu)),
        FrameFamily::Immersion => None,
    };
    if let Some(d) = factored {
        r = r.max(rel_jet(&frame.lambda, &(&frame.t * &d)));
    }
    r
}

/// `t h - e f_v = f_u` or `t g = f_v`.
pub fn reconstruction(frame: &FrontFrame) -> f64 {
    let w = &frame.frame_vector;
    match frame.family {
        FrameFamily::NullTangent => rel_vec(&w.scale(&frame.t).sub(&frame.fv.scale(&frame.e)), &frame.fu),
        FrameFamily::NullTransverse => rel_vec(&w.scale(&frame.t), &frame.fv),
        FrameFamily::Immersion => rel_vec(w, &frame.fu),
    }
}

/// `nu_u` and `nu_v` assembled from the fundamentals.
pub fn weingarten(frame: &FrontFrame) -> Result<f64> {
    let s = &frame.fund;
    let t = &frame.t;
    let dinv = (&(&s.e * &s.g) - &(&s.f * &s.f)).recip()?;
    let (nu_u, nu_v) = match frame.family {
        FrameFamily::NullTransverse => {
            let tm = t * &s.m;
            let u = combo(
                (&(&s.f * &s.m) - &(&s.g * &s.l)) * &dinv,
                &frame.fu,
                (&(&s.f * &s.l) - &(&s.e * &s.m)) * &dinv,
                &frame.frame_vector,
            );
            let v = combo(
                (&(&s.f * &s.n) - &(&s.g * &tm)) * &dinv,
                &frame.fu,
                (&(&s.f * &tm) - &(&s.e * &s.n)) * &dinv,
                &frame.frame_vector,
            );
            (u, v)
        }
        _ => {
            let w = &(t * &s.m) - &(&frame.e * &s.n);
            let u = combo(
                (&(&s.f * &w) - &(&s.g * &s.l)) * &dinv,
                &frame.frame_vector,
                (&(&s.f * &s.l) - &(&s.e * &w)) * &dinv,
                &frame.fv,
            );
            let v = combo(
                (&(&s.f * &s.n) - &(&s.g * &s.m)) * &dinv,
                &frame.frame_vector,
                (&(&s.f * &s.m) - &(&s.e * &s.n)) * &dinv,
                &frame.fv,
            );
            (u, v)
        }
    };
    Ok(rel_vec(&nu_u, &frame.nu.du()).max(rel_vec(&nu_v, &frame.nu.dv())))
}

/// Expansions of `h_u`, `h_v`, `f_vv` in the frame `(h, f_v, nu)` and the
/// scalar identity `A + eB = -t_v E^ + F^_u + e F^_v - t E^_v / 2`.
/// `None` unless the frame is null-tangent.
pub fn derivative_expansions(frame: &FrontFrame) -> Result<Option<(f64, f64)>> {
    if frame.family != FrameFamily::NullTangent {
        return Ok(None);
    }
    let s = &frame.fund;
    let h = &frame.frame_vector;
    let fv = &frame.fv;
    let nu = &frame.nu;
    let (hu, hv, fvv) = (h.du(), h.dv(), fv.dv());
    let a = hu.dot(fv);
    let b = hv.dot(fv);
    let inv2d = (&(&s.e * &s.g) - &(&s.f * &s.f)).scale(2.0).recip()?;
    let (eu, ev, fv_, gv) = (s.e.du(), s.e.dv(), s.f.dv(), s.g.dv());
    let expand = |x: Jet2, y: Jet2, z: &Jet2| -> JetVec3 {
        h.scale(&(&x * &inv2d)).add(&fv.scale(&(&y * &inv2d))).add(&nu.scale(z))
    };
    let hu_rhs = expand(
        &(&eu * &s.g) - &(&s.f * &a).scale(2.0),
        &(&s.e * &a).scale(2.0) - &(&eu * &s.f),
        &s.l,
    );
    let hv_rhs = expand(
        &(&ev * &s.g) - &(&s.f * &b).scale(2.0),
        &(&s.e * &b).scale(2.0) - &(&ev * &s.f),
        &s.m,
    );
    let fvv_rhs = expand(
        &(&s.g * &(&fv_ - &b)).scale(2.0) - &(&s.f * &gv),
        &(&(&s.e * &gv) - &(&s.f * &fv_).scale(2.0)) + &(&s.f * &b).scale(2.0),
        &s.n,
    );
    let expansions = rel_vec(&hu_rhs, &hu).max(rel_vec(&hv_rhs, &hv)).max(rel_vec(&fvv_rhs, &fvv));
    let e = &frame.e;
    let t = &frame.t;
    let lhs = &a + &(e * &b);
    let rhs = &(&(&s.f.du() + &(e * &fv_)) - &(&t.dv() * &s.e)) - &(t * &ev).scale(0.5);
    Ok(Some((expansions, rel_jet(&lhs, &rhs))))
}

/// `<x, y>`.
pub fn perpendicularity(data: &CurvatureData) -> f64 {
    let (x, y) = (&data.xy.x, &data.xy.y);
    rel(x.dot(y).max_abs(), x.max_abs() * y.max_abs())
}

/// `df(V) = x` and `df(V~) = t y`.
pub fn frame_images(frame: &FrontFrame, data: &CurvatureData) -> f64 {
    let dfv = frame.f.directional(&data.v.0, &data.v.1);
    let dfvt = frame.f.directional(&data.v_tilde.0, &data.v_tilde.1);
    rel_vec(&dfv, &data.xy.x).max(rel_vec(&dfvt, &data.xy.y.scale(&frame.t)))
}

/// `dnu(V) + kappa x = 0` and `t y + rho^ dnu(V~) = 0`.
pub fn rodrigues(frame: &FrontFrame, data: &CurvatureData) -> Result<(f64, f64)> {
    let dnu_v = data.v.apply_vec(&frame.nu);
    let dnu_vt = data.v_tilde.apply_vec(&frame.nu);
    let kx = data.xy.x.scale(&data.principal.kappa);
    let first = rel_vec(&dnu_v, &kx.scale_f64(-1.0));
    let ty = data.xy.y.scale(&frame.t);
    let rdn = dnu_vt.scale(data.principal.rho_hat()?);
    let second = rel_vec(&ty, &rdn.scale_f64(-1.0));
    Ok((first, second))
}

/// `dnu(V~) = -(kappa^ / lambda^) y`.
pub fn dnu_tilde(frame: &FrontFrame, data: &CurvatureData) -> Result<f64> {
    let lhs = data.v_tilde.apply_vec(&frame.nu);
    let c = data.principal.kappa_hat.div(&frame.lambda_hat)?;
    Ok(rel_vec(&lhs, &data.xy.y.scale(&c).scale_f64(-1.0)))
}

/// `kappa kappa^ = lambda K` and `lambda kappa + kappa^ = 2 lambda H`, with
/// `lambda K = lambda^ Q / D` and `2 lambda H = lambda^ k1 / D`.
pub fn curvature_relations(frame: &FrontFrame, data: &CurvatureData) -> Result<(f64, f64)> {
    let inp = split_inputs(frame);
    let dinv = inp.d.recip()?;
    let p = &data.principal;
    let lk = &(&frame.lambda_hat * &inp.q) * &dinv;
    let lh2 = &(&frame.lambda_hat * &inp.k1) * &dinv;
    let prod = &p.kappa * &p.kappa_hat;
    let sum = &(&frame.lambda * &p.kappa) + &p.kappa_hat;
    Ok((rel_jet(&prod, &lk), rel_jet(&sum, &lh2)))
}

/// `<y, C^_u>` and `<y, C^_v>`.
pub fn focal_normal(frame: &FrontFrame, data: &CurvatureData) -> Result<f64> {
    let c = focal_surface(frame, data)?;
    let y = &data.xy.y;
    let (cu, cv) = (c.du(), c.dv());
    let scale = y.max_abs() * cu.max_abs().max(cv.max_abs());
    Ok(rel(y.dot(&cu).max_abs().max(y.dot(&cv).max_abs()), scale))
}

/// Direct `det(C^_u, C^_v, e2)` against the closed form; `None` off the
/// null-tangent family.
pub fn focal_density_routes(frame: &FrontFrame, data: &CurvatureData) -> Result<Option<f64>> {
    let d = focal_normal_and_density(frame, data)?;
    Ok(d.lambda_c_formula.map(|f| rel_jet(&d.lambda_c, &f)))
}

/// `dC^(V~) = (V~ rho^) nu`.
pub fn focal_null_field(frame: &FrontFrame, data: &CurvatureData) -> Result<f64> {
    let c = focal_surface(frame, data)?;
    let lhs = data.v_tilde.apply_vec(&c);
    Ok(rel_vec(&lhs, &frame.nu.scale(&vt_rho(data)?)))
}

/// Every applicable identity at the frame's base point.
pub fn identity_suite(frame: &FrontFrame, data: &CurvatureData) -> Result<Vec<IdentityResidual>> {
    let mut out = vec![
        IdentityResidual { name: "normal_orthogonality", residual: normal_orthogonality(frame) },
        IdentityResidual { name: "lambda_factorization", residual: lambda_factorization(frame) },
        IdentityResidual { name: "reconstruction", residual: reconstruction(frame) },
        IdentityResidual { name: "weingarten", residual: weingarten(frame)? },
        IdentityResidual { name: "perpendicularity", residual: perpendicularity(data) },
        IdentityResidual { name: "frame_images", residual: frame_images(frame, data) },
    ];
    if let Some((exp, ab)) = derivative_expansions(frame)? {
        out.push(IdentityResidual { name: "derivative_expansions", residual: exp });
        out.push(IdentityResidual { name: "a_plus_e_b", residual: ab });
    }
    let (r1, r2) = rodrigues(frame, data)?;
    out.push(IdentityResidual { name: "rodrigues_bounded", residual: r1 });
    out.push(IdentityResidual { name: "rodrigues_unbounded", residual: r2 });
    out.push(IdentityResidual { name: "dnu_tilde", residual: dnu_tilde(frame, data)? });
    let (k, h) = curvature_relations(frame, data)?;
    out.push(IdentityResidual { name: "gauss_relation", residual: k });
    out.push(IdentityResidual { name: "mean_relation", residual: h });
    out.push(IdentityResidual { name: "focal_normal", residual: focal_normal(frame, data)? });
    if let Some(r) = focal_density_routes(frame, data)? {
        out.push(IdentityResidual { name: "focal_density_routes", residual: r });
    }
    out.push(IdentityResidual { name: "focal_null_field", residual: focal_null_field(frame, data)? });
    Ok(out)
}
