//! Principal curvatures, principal vectors and the frame maps `x`, `y`.
//!
//! With `t` the axis factor of the frame (`v` on a singular axis, `1` for an
//! immersion) the principal curvatures are the roots of
//! `t D k^2 - k1 k + Q = 0`. The branch `s = k1 + branch * sqrt(k1^2 - 4tDQ)`
//! stays away from zero; it gives `kappa_hat = lambda_hat s / (2D)` and the
//! bounded curvature `kappa = 2Q / s`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::{Axis, Jet2, JetVec3};
use crate::surface::{norm3, FrameFamily, FrontFrame, FrontModel, PointKind};
use crate::tol::{Tolerances, Verdict};

/// `k1`, `D` and `Q` of the quadratic for the principal curvatures.
#[derive(Debug, Clone)]
pub struct SplitInputs {
    pub k1: Jet2,
    pub d: Jet2,
    pub q: Jet2,
}

pub fn split_inputs(frame: &FrontFrame) -> SplitInputs {
    let s = &frame.fund;
    let t = &frame.t;
    match frame.family {
        FrameFamily::NullTransverse => SplitInputs {
            k1: &(&s.e * &s.n) - &(t * &(&s.f * &s.m)).scale(2.0) + t * &(&s.g * &s.l),
            d: &(&s.e * &s.g) - &(&s.f * &s.f),
            q: &(&s.l * &s.n) - &(t * &(&s.m * &s.m)),
        },
        _ => {
            let lem = &s.l + &(&frame.e * &s.m);
            SplitInputs {
                k1: &(&s.g * &lem) - &(t * &(&s.f * &s.m)).scale(2.0) + t * &(&s.e * &s.n),
                d: &(&s.e * &s.g) - &(&s.f * &s.f),
                q: &(&s.n * &lem) - &(t * &(&s.m * &s.m)),
            }
        }
    }
}

/// Bounded and extended unbounded principal curvature data.
#[derive(Debug, Clone)]
pub struct Principal {
    /// Bounded principal curvature (for an immersion: the larger one).
    pub kappa: Jet2,
    /// `lambda * kappa_tilde`, with `kappa_tilde` the other principal curvature.
    pub kappa_hat: Jet2,
    /// `lambda / kappa_hat`; absent when `kappa_hat` vanishes at the base.
    pub rho_hat: Option<Jet2>,
    pub inputs: SplitInputs,
    /// `sqrt(k1^2 - 4 t D Q)`.
    pub k2: Jet2,
    /// `k1 + branch * k2`.
    pub s: Jet2,
}

impl Principal {
    pub fn rho_hat(&self) -> Result<&Jet2> {
        self.rho_hat.as_ref().ok_or(Error::Precondition("kappa_hat non-zero at the base point"))
    }
}

pub fn principal_split(frame: &FrontFrame, tol: Tolerances) -> Result<Principal> {
    let inputs = split_inputs(frame);
    let scale = inputs.k1.max_abs().max(inputs.d.max_abs()).max(1.0);
    if frame.t.value().abs() <= tol.zero && inputs.k1.value().abs() <= tol.zero * scale {
        let lem = match frame.family {
            FrameFamily::NullTransverse => frame.fund.n.value(),
            _ => (&frame.fund.l + &(&frame.e * &frame.fund.m)).value(),
        };
        return Err(Error::NotAFront(lem));
    }
    let disc = &(&inputs.k1 * &inputs.k1) - &(&frame.t * &(&inputs.d * &inputs.q)).scale(4.0);
    if disc.value() <= tol.zero * scale * scale {
        return Err(Error::UmbilicDegeneracy(disc.value()));
    }
    let k2 = disc.sqrt()?;
    let s = &inputs.k1 + &k2.scale(frame.branch);
    let two_d = inputs.d.scale(2.0);
    let (kappa, kappa_hat) = match frame.family {
        FrameFamily::Immersion => {
            let kappa = s.div(&two_d)?;
            let kappa_tilde = inputs.q.scale(2.0).div(&s)?;
            (kappa, &frame.lambda_hat * &kappa_tilde)
        }
        _ => {
            let kappa = inputs.q.scale(2.0).div(&s)?;
            let kappa_hat = (&frame.lambda_hat * &s).div(&two_d)?;
            (kappa, kappa_hat)
        }
    };
    let rho_hat = if kappa_hat.value().abs() > tol.zero {
        Some(frame.lambda.div(&kappa_hat)?)
    } else {
        None
    };
    Ok(Principal { kappa, kappa_hat, rho_hat, inputs, k2, s })
}

/// The bounded curvature by the literal route: the branch `k1 - branch * k2`
/// vanishes on the axis, is divided by `v`, and then by `2D`.
pub fn bounded_curvature_by_division(frame: &FrontFrame, p: &Principal, tol: Tolerances) -> Result<Jet2> {
    let vanishing = &p.inputs.k1 - &p.k2.scale(frame.branch);
    let reduced = vanishing.divide_by_coordinate(Axis::V, tol.div)?;
    Ok(reduced.div(&p.inputs.d.scale(2.0).truncate(reduced.order()))?)
}

/// A tangent vector field `a d_u + b d_v`.
#[derive(Debug, Clone)]
pub struct Field(pub Jet2, pub Jet2);

impl Field {
    pub fn apply(&self, j: &Jet2) -> Jet2 {
        j.directional(&self.0, &self.1)
    }

    pub fn apply_vec(&self, j: &JetVec3) -> JetVec3 {
        j.directional(&self.0, &self.1)
    }

    pub fn value(&self) -> (f64, f64) {
        (self.0.value(), self.1.value())
    }
}

/// Principal vectors `V` (for `kappa`) and `V~` (for `kappa_hat`).
pub fn principal_vectors(frame: &FrontFrame, p: &Principal) -> (Field, Field) {
    let s = &frame.fund;
    let t = &frame.t;
    let lambda = &frame.lambda;
    let k = &p.kappa;
    let kh = &p.kappa_hat;
    match frame.family {
        FrameFamily::NullTransverse => {
            let v = Field(&s.n - &(t * &(k * &s.g)), &(k * &s.f) - &s.m);
            let vt = Field(t * &(&(lambda * &s.m) - &(kh * &s.f)), &(kh * &s.e) - &(lambda * &s.l));
            (v, vt)
        }
        _ => {
            let tev = &(t * &s.e) - &(&frame.e * &s.f);
            let v = Field(&(k * &s.f) - &s.m, &s.l - &(k * &tev));
            let vt1 = &(lambda * &s.n) - &(kh * &s.g);
            let vh2 = &(lambda * &s.m) - &(kh * &s.f);
            let vt2 = &(&frame.e * &vt1) - &(t * &vh2);
            (v, Field(vt1, vt2))
        }
    }
}

/// `x = df(V)` and `y` with `df(V~) = t y`, plus their normalizations.
#[derive(Debug, Clone)]
pub struct FrameXY {
    pub x: JetVec3,
    pub y: JetVec3,
    pub e1: JetVec3,
    pub e2: JetVec3,
}

pub fn frame_xy(frame: &FrontFrame, p: &Principal, tol: Tolerances) -> Result<FrameXY> {
    let s = &frame.fund;
    let t = &frame.t;
    let lambda = &frame.lambda;
    let (k, kh) = (&p.kappa, &p.kappa_hat);
    let (x, y) = match frame.family {
        FrameFamily::NullTransverse => {
            let (v, _) = principal_vectors(frame, p);
            let x = frame.fu.scale(&v.0).add(&frame.fv.scale(&v.1));
            let a = &(lambda * &s.m) - &(kh * &s.f);
            let b = &(kh * &s.e) - &(lambda * &s.l);
            (x, frame.fu.scale(&a).add(&frame.frame_vector.scale(&b)))
        }
        _ => {
            let h = &frame.frame_vector;
            let lem = &s.l + &(&frame.e * &s.m);
            let xa = -(t * &(&s.m - &(k * &s.f)));
            let xb = &lem - &(t * &(k * &s.e));
            let x = h.scale(&xa).add(&frame.fv.scale(&xb));
            let vt1 = &(lambda * &s.n) - &(kh * &s.g);
            let vh2 = &(lambda * &s.m) - &(kh * &s.f);
            (x, h.scale(&vt1).sub(&frame.fv.scale(&vh2)))
        }
    };
    if norm3(x.value()) <= tol.zero {
        return Err(Error::DegenerateFrame("|x| vanishes at the base point"));
    }
    if norm3(y.value()) <= tol.zero {
        return Err(Error::DegenerateFrame("|y| vanishes at the base point"));
    }
    let e1 = x.normalize()?;
    let e2 = y.normalize()?;
    Ok(FrameXY { x, y, e1, e2 })
}

/// Everything the focal stage consumes.
#[derive(Debug, Clone)]
pub struct CurvatureData {
    pub principal: Principal,
    pub v: Field,
    pub v_tilde: Field,
    pub xy: FrameXY,
}

pub fn curvature_data(frame: &FrontFrame, tol: Tolerances) -> Result<CurvatureData> {
    let principal = principal_split(frame, tol)?;
    let (v, v_tilde) = principal_vectors(frame, &principal);
    let xy = frame_xy(frame, &principal, tol)?;
    Ok(CurvatureData { principal, v, v_tilde, xy })
}

/// `lim <f_uu, nu> / |f_u|^2` along the `u`-line through the base point.
pub fn limiting_normal_curvature(frame: &FrontFrame, tol: Tolerances) -> Result<f64> {
    let fuu = frame.fu.du();
    let num = fuu.dot(&frame.nu).restrict_to_u_line();
    let den = frame.fu.dot(&frame.fu).restrict_to_u_line();
    let m = den.vanishing_order(tol.zero).exact().ok_or(Error::IndeterminateLimit)?;
    if m > num.order() {
        return Err(Error::IndeterminateLimit);
    }
    let scale = num.max_abs().max(1.0);
    if (0..m).any(|k| num.coeff(k).abs() > 1e3 * tol.zero * scale) {
        return Err(Error::IndeterminateLimit);
    }
    Ok(num.coeff(m) / den.coeff(m))
}

/// `-<f_uv, nu_u> / |f_uv x f_v|^2` at a second-kind point.
pub fn normalized_cuspidal_curvature(frame: &FrontFrame) -> Result<f64> {
    if frame.kind != PointKind::SecondKind {
        return Err(Error::Precondition("a second-kind singular point"));
    }
    let fuv = frame.fu.dv();
    let num = -fuv.dot(&frame.nu.du()).value();
    let den = fuv.cross(&frame.fv).value();
    Ok(num / (den[0] * den[0] + den[1] * den[1] + den[2] * den[2]))
}

#[derive(Debug, Clone, Serialize)]
pub struct SubParabolic {
    pub is_sub_parabolic: bool,
    /// `eta kappa` at a singular point.
    pub eta_kappa: Option<Verdict>,
    pub is_ridge: bool,
    pub v_kappa: Verdict,
    pub vt_kappa: Verdict,
}

pub fn sub_parabolic_ridge(frame: &FrontFrame, data: &CurvatureData, tol: Tolerances) -> SubParabolic {
    let kappa = &data.principal.kappa;
    let vt_kappa = Verdict::of(data.v_tilde.apply(kappa).value(), tol.zero);
    let v_kappa = Verdict::of(data.v.apply(kappa).value(), tol.zero);
    let eta_kappa = (frame.kind != PointKind::Regular).then(|| {
        let (a, b) = frame.eta();
        Verdict::of(kappa.directional(&a, &b).value(), tol.zero)
    });
    SubParabolic { is_sub_parabolic: !vt_kappa.nonzero, eta_kappa, is_ridge: !v_kappa.nonzero, v_kappa, vt_kappa }
}

/// Gaussian and mean curvature at a regular point `q`.
pub fn gauss_mean_regular(model: &FrontModel, q: (f64, f64)) -> Result<(f64, f64)> {
    let frame = model.frame_at(q, 2)?;
    let t = frame.t.value();
    if t.abs() <= model.tolerances().zero {
        return Err(Error::EvaluationOnSingularSet);
    }
    let inp = split_inputs(&frame);
    let td = t * inp.d.value();
    Ok((inp.q.value() / td, inp.k1.value() / (2.0 * td)))
}

/// `(kappa, kappa_hat)` values at the frame's base, tolerating umbilics.
pub fn principal_values(frame: &FrontFrame) -> (f64, f64) {
    let inp = split_inputs(frame);
    let (k1, d, q, t) = (inp.k1.value(), inp.d.value(), inp.q.value(), frame.t.value());
    let disc = (k1 * k1 - 4.0 * t * d * q).max(0.0);
    let s = k1 + frame.branch * disc.sqrt();
    match frame.family {
        FrameFamily::Immersion => (s / (2.0 * d), frame.lambda_hat.value() * 2.0 * q / s),
        _ => (2.0 * q / s, frame.lambda_hat.value() * s / (2.0 * d)),
    }
}
