//! Triangle meshes of `f` or of the focal surface over a parameter rectangle.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::focal::focal_point;
use crate::surface::{FrontModel, SurfaceSpec};
use crate::tol::EPS_EXPORT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Which {
    F,
    Focal,
}

/// `[u0, u1] x [v0, v1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    /// Parameter point of each vertex.
    pub params: Vec<(f64, f64)>,
    /// Zero-based triangle indices.
    pub faces: Vec<[usize; 3]>,
    /// Zero-based vertex chains emitted as line elements.
    pub polylines: Vec<Vec<usize>>,
}

impl Mesh {
    /// Appends a chain of points with their parameters.
    pub fn add_polyline(&mut self, points: &[[f64; 3]], params: &[(f64, f64)]) {
        let start = self.vertices.len();
        self.vertices.extend_from_slice(points);
        self.params.extend_from_slice(params);
        self.polylines.push((start..start + points.len()).collect());
    }

    pub fn to_obj(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            // `+ 0.0` prints negative zero as `0`.
            writeln!(s, "v {} {} {}", v[0] + 0.0, v[1] + 0.0, v[2] + 0.0).expect("write to string");
        }
        for f in &self.faces {
            writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1).expect("write to string");
        }
        for l in &self.polylines {
            let idx: Vec<String> = l.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(s, "l {}", idx.join(" ")).expect("write to string");
        }
        s
    }
}

fn grid(region: Region, res: (usize, usize)) -> Vec<(f64, f64)> {
    let (nu, nv) = res;
    let lerp = |a: f64, b: f64, k: usize, n: usize| a + (b - a) * k as f64 / (n - 1) as f64;
    (0..nv)
        .flat_map(|j| (0..nu).map(move |i| (lerp(region.u0, region.u1, i, nu), lerp(region.v0, region.v1, j, nv))))
        .collect()
}

fn stitch(alive: &[Option<usize>], res: (usize, usize)) -> Vec<[usize; 3]> {
    let (nu, nv) = res;
    let mut faces = Vec::new();
    for j in 0..nv - 1 {
        for i in 0..nu - 1 {
            let corners = [j * nu + i, j * nu + i + 1, (j + 1) * nu + i + 1, (j + 1) * nu + i];
            let live: Vec<usize> = corners.iter().filter_map(|&k| alive[k]).collect();
            match live.len() {
                4 => {
                    faces.push([live[0], live[1], live[2]]);
                    faces.push([live[0], live[2], live[3]]);
                }
                3 => faces.push([live[0], live[1], live[2]]),
                _ => {}
            }
        }
    }
    faces
}

/// Samples `res.0 x res.1` grid points; focal samples with
/// `|kappa_hat| < EPS_EXPORT` (or no focal point) are dropped.
pub fn export_mesh(spec: &SurfaceSpec, model: Option<&FrontModel>, region: Region, res: (usize, usize), which: Which) -> Result<Mesh> {
    if res.0 < 2 || res.1 < 2 {
        return Err(Error::InvalidRequest("mesh resolution must be at least 2x2".into()));
    }
    if !(region.u1 > region.u0 && region.v1 > region.v0) {
        return Err(Error::InvalidRequest("mesh region must have positive extent".into()));
    }
    let params = grid(region, res);
    let samples: Vec<Option<[f64; 3]>> = match which {
        Which::F => params.par_iter().map(|&(u, v)| Some(spec.eval(u, v))).collect(),
        Which::Focal => {
            let model = model.ok_or(Error::Precondition("a front model for the focal surface"))?;
            params
                .par_iter()
                .map(|&q| match focal_point(model, q) {
                    Ok((c, kh)) if kh.abs() >= EPS_EXPORT && c.iter().all(|x| x.is_finite()) => Some(c),
                    _ => None,
                })
                .collect()
        }
    };
    let mut mesh = Mesh::default();
    let mut alive = Vec::with_capacity(samples.len());
    for (k, s) in samples.into_iter().enumerate() {
        alive.push(s.map(|c| {
            mesh.vertices.push(c);
            mesh.params.push(params[k]);
            mesh.vertices.len() - 1
        }));
    }
    if mesh.vertices.is_empty() {
        return Err(Error::EmptyMesh);
    }
    mesh.faces = stitch(&alive, res);
    Ok(mesh)
}
