//! Predictor-corrector tracing of the singular curve of `f` (`lambda = 0`)
//! or of the focal surface (`V~ rho^ = 0`).

use std::fmt::Write as _;

use crate::curvature::{principal_split, principal_vectors};
use crate::error::{Error, Result};
use crate::mesh::Which;
use crate::surface::FrontModel;

/// Emitted vertices satisfy `|g| < RESIDUAL_BOUND`.
pub const RESIDUAL_BOUND: f64 = 1e-8;
const NEWTON_TOL: f64 = 1e-12;
const NEWTON_ITERS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceOptions {
    pub step: f64,
    pub steps: usize,
    /// The corrected seed must lie within this distance of the given seed.
    pub seed_radius: f64,
    /// Trace both ways from the seed.
    pub both_directions: bool,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions { step: 0.01, steps: 100, seed_radius: 0.5, both_directions: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub u: f64,
    pub v: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trace {
    pub points: Vec<TracePoint>,
}

impl Trace {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("u,v,residual\n");
        for p in &self.points {
            writeln!(s, "{},{},{:e}", p.u, p.v, p.residual).expect("write to string");
        }
        s
    }
}

/// Value and gradient of the defining function at `q`.
pub fn defining_function(model: &FrontModel, which: Which, q: (f64, f64)) -> Result<(f64, (f64, f64))> {
    let g = match which {
        Which::F => model.frame_at(q, 1)?.lambda,
        Which::Focal => {
            let frame = model.frame_at(q, 3)?;
            let p = principal_split(&frame, model.tolerances())?;
            let (_, vt) = principal_vectors(&frame, &p);
            vt.apply(p.rho_hat()?)
        }
    };
    Ok((g.value(), (g.coeff(1, 0), g.coeff(0, 1))))
}

fn correct(model: &FrontModel, which: Which, mut q: (f64, f64), steps: usize) -> Result<TracePoint> {
    let lost = |residual: f64| Error::LostCurve { steps, residual };
    for _ in 0..NEWTON_ITERS {
        let (g, (gu, gv)) = defining_function(model, which, q).map_err(|_| lost(f64::NAN))?;
        if g.abs() < NEWTON_TOL {
            return Ok(TracePoint { u: q.0, v: q.1, residual: g.abs() });
        }
        let n2 = gu * gu + gv * gv;
        if n2.is_nan() || n2 <= 1e-24 || !g.is_finite() {
            return Err(lost(g.abs()));
        }
        q = (q.0 - g * gu / n2, q.1 - g * gv / n2);
    }
    let (g, _) = defining_function(model, which, q).map_err(|_| lost(f64::NAN))?;
    if g.abs() < RESIDUAL_BOUND {
        Ok(TracePoint { u: q.0, v: q.1, residual: g.abs() })
    } else {
        Err(lost(g.abs()))
    }
}

fn march(model: &FrontModel, which: Which, start: TracePoint, sign: f64, opts: &TraceOptions) -> Result<Vec<TracePoint>> {
    let mut out = Vec::with_capacity(opts.steps);
    let mut cur = start;
    let mut prev_dir: Option<(f64, f64)> = None;
    for k in 0..opts.steps {
        let (_, (gu, gv)) = defining_function(model, which, (cur.u, cur.v))?;
        let n = gu.hypot(gv);
        if n <= 1e-12 {
            return Err(Error::LostCurve { steps: k, residual: cur.residual });
        }
        let mut dir = (-gv / n * sign, gu / n * sign);
        if let Some(p) = prev_dir {
            if dir.0 * p.0 + dir.1 * p.1 < 0.0 {
                dir = (-dir.0, -dir.1);
            }
        }
        let predicted = (cur.u + opts.step * dir.0, cur.v + opts.step * dir.1);
        let next = correct(model, which, predicted, k)?;
        if (next.u - predicted.0).hypot(next.v - predicted.1) > opts.step {
            return Err(Error::LostCurve { steps: k, residual: next.residual });
        }
        prev_dir = Some(dir);
        out.push(next);
        cur = next;
    }
    Ok(out)
}

/// Traces the zero set through the corrected `seed`.
pub fn trace_singular_curve(model: &FrontModel, which: Which, seed: (f64, f64), opts: &TraceOptions) -> Result<Trace> {
    let start = correct(model, which, seed, 0)?;
    if (start.u - seed.0).hypot(start.v - seed.1) > opts.seed_radius {
        return Err(Error::LostCurve { steps: 0, residual: start.residual });
    }
    let forward = march(model, which, start, 1.0, opts)?;
    let mut points = Vec::with_capacity(2 * opts.steps + 1);
    if opts.both_directions {
        let mut backward = march(model, which, start, -1.0, opts)?;
        backward.reverse();
        points.extend(backward);
    }
    points.push(start);
    points.extend(forward);
    Ok(Trace { points })
}
