//! Surface maps and their per-point frames.
//!
//! A [`FrontModel`] factors the polynomial map once: the unit normal comes
//! from `f_u x f_v` with one power of `v` removed, and along a singular
//! `u`-axis either `f_u + e(u) f_v = v h` or `f_v = v g`. A [`FrontFrame`]
//! is the expansion of that data at one base point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::{Axis, Jet1, Jet2, JetVec3};
use crate::poly::{Overflow, Polynomial};
use crate::tol::Tolerances;

/// A polynomial map `(u, v) -> R^3` with analysis conventions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub components: [Polynomial; 3],
    pub conventions: Conventions,
}

/// Conventions the input claims; they are checked, not trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conventions {
    /// The singular curve lies on `v = 0`.
    pub singular_axis_v0: bool,
    /// The normal is oriented so that `lambda_v > 0` on the singular curve.
    pub lambda_v_positive: bool,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { singular_axis_v0: true, lambda_v_positive: true }
    }
}

impl SurfaceSpec {
    pub fn new(x: Polynomial, y: Polynomial, z: Polynomial) -> Self {
        SurfaceSpec { components: [x, y, z], conventions: Conventions::default() }
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, u: f64, v: f64) -> [f64; 3] {
        [0, 1, 2].map(|k| self.components[k].eval(u, v))
    }

    /// Precomposes with the polynomial change of coordinates `(pu, pv)`.
    pub fn compose(&self, pu: &Polynomial, pv: &Polynomial) -> std::result::Result<SurfaceSpec, Overflow> {
        let [x, y, z] = &self.components;
        Ok(SurfaceSpec {
            components: [x.compose(pu, pv)?, y.compose(pu, pv)?, z.compose(pu, pv)?],
            conventions: self.conventions,
        })
    }

    /// Jets of the components at the origin, exact for `order >= degree`.
    pub fn global_jets(&self, order: usize) -> JetVec3 {
        JetVec3(self.components.clone().map(|p| p.to_jet(order)))
    }
}

/// Nature of a point of the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointKind {
    Regular,
    FirstKind,
    SecondKind,
    Degenerate,
}

/// Which family of frame formulas applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FrameFamily {
    /// No singular curve: `h = f_u`, `e = 0`, the axis factor is `1`.
    Immersion,
    /// `f_u + e(u) f_v = v h` along the singular axis (hatted quantities).
    NullTangent,
    /// `f_v = v g` (tilded quantities).
    NullTransverse,
}

#[derive(Debug, Clone)]
enum Structure {
    Immersion,
    Tangent { p: Jet2, q: Jet2, h_num: JetVec3 },
    Transverse { g: JetVec3 },
}

/// Factored global data of a map, anchored at a marked point.
#[derive(Debug, Clone)]
pub struct FrontModel {
    f: JetVec3,
    fu: JetVec3,
    fv: JetVec3,
    w: JetVec3,
    on_axis: bool,
    structure: Structure,
    point: (f64, f64),
    kind: PointKind,
    orientation: f64,
    branch: f64,
    tol: Tolerances,
}

/// The six fundamental quantities (hatted or tilded, per [`FrameFamily`]).
#[derive(Debug, Clone)]
pub struct Fundamentals {
    pub e: Jet2,
    pub f: Jet2,
    pub g: Jet2,
    pub l: Jet2,
    pub m: Jet2,
    pub n: Jet2,
}

/// All first-order data of the map expanded at one base point.
#[derive(Debug, Clone)]
pub struct FrontFrame {
    pub kind: PointKind,
    pub family: FrameFamily,
    pub f: JetVec3,
    pub fu: JetVec3,
    pub fv: JetVec3,
    pub nu: JetVec3,
    pub lambda: Jet2,
    /// `lambda = t * lambda_hat` with `t = v` on a singular axis, else `1`.
    pub lambda_hat: Jet2,
    pub t: Jet2,
    /// `e(u)` as a function of `(u, v)`; zero unless the family is `NullTangent`.
    pub e: Jet2,
    /// `h` (null-tangent family), `f_u` (immersion) or `g` (null-transverse).
    pub frame_vector: JetVec3,
    pub fund: Fundamentals,
    /// Sign choosing the unbounded branch `k1 + branch * k2`.
    pub branch: f64,
}

fn near_zero(x: f64, scale: f64, eps: f64) -> bool {
    x.abs() <= eps * scale.max(1.0)
}

impl FrontModel {
    pub fn new(spec: &SurfaceSpec, point: (f64, f64), tol: Tolerances) -> Result<Self> {
        let order = (2 * spec.degree() as usize + 2).max(4);
        let f = spec.global_jets(order);
        let fu = f.du();
        let fv = f.dv();
        let cross = fu.cross(&fv);
        let (w, on_axis) = match cross.divide_by_coordinate(Axis::V, tol.div) {
            Ok(w) if cross.max_abs() > 0.0 => (w, true),
            _ => (cross.clone(), false),
        };
        let at_p = |j: &JetVec3| j.recenter(point, 0).value();
        let w_p = norm3(at_p(&w));
        let scale = fu.max_abs().max(fv.max_abs());

        let mut model = FrontModel {
            f,
            fu,
            fv,
            w,
            on_axis,
            structure: Structure::Immersion,
            point,
            kind: PointKind::Regular,
            orientation: 1.0,
            branch: 1.0,
            tol,
        };

        if !on_axis {
            if norm3(at_p(&cross)) <= tol.zero * scale.max(1.0) {
                let general = crate::classify::general_lambda(spec, point, 3, tol)?;
                let grad = (general.lambda.coeff(1, 0), general.lambda.coeff(0, 1));
                return Err(if grad.0.hypot(grad.1) > tol.zero {
                    Error::NotAdapted("the singular curve is not the axis v = 0".into())
                } else {
                    Error::DegeneratePoint
                });
            }
            model.set_branch()?;
            return Ok(model);
        }

        model.structure = model.axis_structure(point.0)?;
        if near_zero(w_p, scale, tol.zero) {
            model.kind = PointKind::Degenerate;
            return Ok(model);
        }
        model.kind = if !near_zero(point.1, 1.0, tol.zero) {
            PointKind::Regular
        } else {
            match &model.structure {
                Structure::Transverse { .. } => PointKind::FirstKind,
                _ if near_zero(norm3(at_p(&model.fu)), scale, tol.zero) => PointKind::SecondKind,
                _ => PointKind::FirstKind,
            }
        };
        model.set_branch()?;
        Ok(model)
    }

    fn axis_structure(&self, u0: f64) -> Result<Structure> {
        let tol = self.tol;
        let scale = self.fv.max_abs().max(1.0);
        let on_axis_residual =
            |j: &Jet2| (0..=j.order()).map(|i| j.coeff(i, 0).abs()).fold(0.0, f64::max);
        let fv_axis = self.fv.0.iter().map(on_axis_residual).fold(0.0, f64::max);
        if fv_axis <= tol.div * scale {
            let g = self.fv.divide_by_coordinate(Axis::V, tol.div)?;
            return Ok(Structure::Transverse { g });
        }
        let fv_at = self.fv.recenter((u0, 0.0), 0).value();
        let comp = (0..3)
            .max_by(|&a, &b| fv_at[a].abs().total_cmp(&fv_at[b].abs()))
            .expect("three components");
        if fv_at[comp].abs() <= tol.zero * scale {
            return Err(Error::DegenerateNormal(0.0));
        }
        let axis_only = |j: &Jet2| Jet2::from_fn(j.base(), j.order(), |i, k| if k == 0 { j.coeff(i, 0) } else { 0.0 });
        let p = axis_only(&self.fu.0[comp]);
        let q = axis_only(&self.fv.0[comp]);
        let num = self.fu.scale(&q).sub(&self.fv.scale(&p));
        let residual = num.0.iter().map(on_axis_residual).fold(0.0, f64::max);
        let num_scale = num.max_abs().max(1.0);
        if residual > tol.div * num_scale {
            return Err(Error::InconsistentNullDirection(residual));
        }
        let h_num = num.divide_by_coordinate(Axis::V, tol.div)?;
        Ok(Structure::Tangent { p, q, h_num })
    }

    fn set_branch(&mut self) -> Result<()> {
        let frame = self.frame_at(self.point, 2)?;
        let k1 = crate::curvature::split_inputs(&frame).k1.value();
        self.branch = if k1 < 0.0 { -1.0 } else { 1.0 };
        Ok(())
    }

    /// Copy with the unit normal negated.
    pub fn flipped(&self) -> FrontModel {
        let mut m = self.clone();
        m.orientation = -self.orientation;
        m.branch = -self.branch;
        m
    }

    pub fn point(&self) -> (f64, f64) {
        self.point
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    pub fn family(&self) -> FrameFamily {
        match self.structure {
            Structure::Immersion => FrameFamily::Immersion,
            Structure::Tangent { .. } => FrameFamily::NullTangent,
            Structure::Transverse { .. } => FrameFamily::NullTransverse,
        }
    }

    pub fn has_singular_axis(&self) -> bool {
        self.on_axis
    }

    /// `e(u)` at `u0` on the axis; `None` unless the family is null-tangent.
    pub fn null_function(&self, u0: f64, order: usize) -> Result<Option<Jet1>> {
        match &self.structure {
            Structure::Tangent { p, q, .. } => {
                let base = (u0, 0.0);
                let e = -p.recenter(base, order).div(&q.recenter(base, order))?;
                Ok(Some(e.restrict_to_u_line()))
            }
            _ => Ok(None),
        }
    }

    /// The map's point `f(q)`.
    pub fn position(&self, q: (f64, f64)) -> [f64; 3] {
        self.f.recenter(q, 0).value()
    }

    /// Expands the model at `q` to the given order.
    pub fn frame_at(&self, q: (f64, f64), order: usize) -> Result<FrontFrame> {
        if self.kind == PointKind::Degenerate {
            return Err(Error::DegeneratePoint);
        }
        let n = order;
        let f = self.f.recenter(q, n);
        let fu = self.fu.recenter(q, n);
        let fv = self.fv.recenter(q, n);
        let w = self.w.recenter(q, n);
        let w_norm = w.norm().map_err(|_| Error::DegenerateNormal(norm3(w.value())))?;
        let lambda_hat = w_norm.scale(self.orientation);
        let nu = w.scale(&w_norm.recip()?).scale_f64(self.orientation);
        let t = if self.on_axis {
            Jet2::coordinate(q, n, Axis::V)
        } else {
            Jet2::constant(q, n, 1.0)
        };
        let lambda = &t * &lambda_hat;
        let (family, e, vec) = match &self.structure {
            Structure::Immersion => (FrameFamily::Immersion, Jet2::zero(q, n), fu.clone()),
            Structure::Tangent { p, q: qq, h_num } => {
                let qq = qq.recenter(q, n);
                let inv = qq.recip()?;
                let e = -(p.recenter(q, n) * &inv);
                let h = h_num.recenter(q, n).scale(&inv);
                (FrameFamily::NullTangent, e, h)
            }
            Structure::Transverse { g } => (FrameFamily::NullTransverse, Jet2::zero(q, n), g.recenter(q, n)),
        };
        let nu_u = nu.du();
        let nu_v = nu.dv();
        let fund = match family {
            FrameFamily::NullTransverse => Fundamentals {
                e: fu.dot(&fu),
                f: fu.dot(&vec),
                g: vec.dot(&vec),
                l: -fu.dot(&nu_u),
                m: -vec.dot(&nu_u),
                n: -vec.dot(&nu_v),
            },
            _ => Fundamentals {
                e: vec.dot(&vec),
                f: vec.dot(&fv),
                g: fv.dot(&fv),
                l: -vec.dot(&nu_u),
                m: -vec.dot(&nu_v),
                n: -fv.dot(&nu_v),
            },
        };
        let kind = if q == self.point { self.kind } else { self.kind_at(q, &fu) };
        Ok(FrontFrame { kind, family, f, fu, fv, nu, lambda, lambda_hat, t, e, frame_vector: vec, fund, branch: self.branch })
    }

    fn kind_at(&self, q: (f64, f64), fu: &JetVec3) -> PointKind {
        if !self.on_axis || !near_zero(q.1, 1.0, self.tol.zero) {
            return PointKind::Regular;
        }
        match self.structure {
            Structure::Transverse { .. } => PointKind::FirstKind,
            _ if near_zero(norm3(fu.value()), 1.0, self.tol.zero) => PointKind::SecondKind,
            _ => PointKind::FirstKind,
        }
    }
}

impl FrontFrame {
    pub fn base(&self) -> (f64, f64) {
        self.f.base()
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }

    /// `h` when the family is null-tangent.
    pub fn h(&self) -> Option<&JetVec3> {
        (self.family == FrameFamily::NullTangent).then_some(&self.frame_vector)
    }

    /// `g` when the family is null-transverse.
    pub fn g(&self) -> Option<&JetVec3> {
        (self.family == FrameFamily::NullTransverse).then_some(&self.frame_vector)
    }

    /// `e(u)` as a univariate series, on the axis of a null-tangent frame.
    pub fn e_series(&self) -> Option<Jet1> {
        (self.family == FrameFamily::NullTangent && self.base().1 == 0.0).then(|| self.e.restrict_to_u_line())
    }

    /// The null vector field `eta` as a pair of coefficient jets.
    pub fn eta(&self) -> (Jet2, Jet2) {
        let (b, n) = (self.base(), self.order());
        match self.family {
            FrameFamily::NullTransverse => (Jet2::zero(b, n), Jet2::constant(b, n, 1.0)),
            _ => (Jet2::constant(b, n, 1.0), self.e.clone()),
        }
    }
}

pub(crate) fn norm3(x: [f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

/// Exact Taylor expansion of the map at `p`.
pub fn evaluate_jets(spec: &SurfaceSpec, p: (f64, f64), order: usize) -> JetVec3 {
    spec.global_jets(order.max(spec.degree() as usize)).recenter(p, order)
}

/// Unit normal jet at `p`.
pub fn compute_normal(spec: &SurfaceSpec, p: (f64, f64), order: usize) -> Result<JetVec3> {
    Ok(FrontModel::new(spec, p, Tolerances::default())?.frame_at(p, order)?.nu)
}

/// `lambda` at `p`, with `lambda_hat = lambda / v` when the axis factors out.
pub fn signed_area_density(spec: &SurfaceSpec, p: (f64, f64), order: usize) -> Result<(Jet2, Option<Jet2>)> {
    let model = FrontModel::new(spec, p, Tolerances::default())?;
    let frame = model.frame_at(p, order)?;
    let hat = model.has_singular_axis().then(|| frame.lambda_hat.clone());
    Ok((frame.lambda, hat))
}

/// `e(u)` with `f_u + e(u) f_v = 0` along `v = 0`, expanded at `p`.
pub fn null_function(spec: &SurfaceSpec, p: (f64, f64), order: usize) -> Result<Jet1> {
    FrontModel::new(spec, p, Tolerances::default())?
        .null_function(p.0, order)?
        .ok_or(Error::NotAdapted("no null relation f_u + e f_v = v h along v = 0".into()))
}

/// The full frame at `p`.
pub fn frame_maps(spec: &SurfaceSpec, p: (f64, f64), order: usize) -> Result<FrontFrame> {
    FrontModel::new(spec, p, Tolerances::default())?.frame_at(p, order)
}

/// Which adaptedness conditions hold at `p`.
#[derive(Debug, Clone, Serialize)]
pub struct AdaptedStatus {
    pub regular: bool,
    pub singular_curve_on_axis: bool,
    pub kind: Option<PointKind>,
    /// `|f_u(p)|`.
    pub fu_norm: f64,
    /// Largest coefficient of `f_v` restricted to `v = 0`.
    pub fv_axis_residual: f64,
    pub unit_speed: bool,
    /// `|f_v(p)| - 1`.
    pub unit_speed_margin: f64,
    pub strongly_adapted: bool,
    /// `<f_uv, f_v>(p)`.
    pub strongly_adapted_margin: f64,
}

impl AdaptedStatus {
    /// Adapted with `f_u(p) = 0` and `|f_v(p)| = 1`.
    pub fn normalized_second_kind(&self) -> bool {
        self.kind == Some(PointKind::SecondKind) && self.singular_curve_on_axis && self.unit_speed
    }
}

pub fn check_adapted(spec: &SurfaceSpec, p: (f64, f64)) -> AdaptedStatus {
    let tol = Tolerances::default();
    let jets = evaluate_jets(spec, p, 2);
    let fu = jets.du();
    let fv = jets.dv();
    let fv_norm = norm3(fv.value());
    let fuv_fv = fu.dv().dot(&fv.truncate(0)).value();
    let order = spec.degree() as usize + 1;
    let fv_axis_residual = spec
        .global_jets(order)
        .dv()
        .0
        .iter()
        .map(|j| (0..=j.order()).map(|i| j.coeff(i, 0).abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    let model = FrontModel::new(spec, p, tol);
    let (regular, on_axis, kind) = match &model {
        Ok(m) => (m.kind == PointKind::Regular, m.has_singular_axis(), Some(m.kind)),
        Err(Error::DegeneratePoint) => (false, false, Some(PointKind::Degenerate)),
        Err(_) => (false, false, None),
    };
    AdaptedStatus {
        regular,
        singular_curve_on_axis: on_axis,
        kind,
        fu_norm: norm3(fu.value()),
        fv_axis_residual,
        unit_speed: (fv_norm - 1.0).abs() <= 1e-9,
        unit_speed_margin: fv_norm - 1.0,
        strongly_adapted: fuv_fv.abs() <= 1e-9,
        strongly_adapted_margin: fuv_fv,
    }
}
