//! Independent oracles for the integration tests: exact polynomial
//! differentiation and dense shape-operator curvatures, with no jets.

#![allow(dead_code)]

use focal_core::poly::{ratio_to_f64, Polynomial, Rational};
use focal_core::SurfaceSpec;
use rand::Rng;

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|t| (n - t) as i64).product()
}

/// `d^{i+j} p / du^i dv^j` as an exact polynomial.
pub fn dpoly(p: &Polynomial, i: u32, j: u32) -> Polynomial {
    let mut out = Polynomial::zero();
    for (a, b, c) in p.terms() {
        if a >= i && b >= j {
            let k = c * Rational::from_integer(falling(a, i) * falling(b, j));
            out = out.checked_add(&Polynomial::monomial(k, a - i, b - j)).unwrap();
        }
    }
    out
}

pub fn dspec(spec: &SurfaceSpec, i: u32, j: u32, q: (f64, f64)) -> [f64; 3] {
    [0, 1, 2].map(|k| dpoly(&spec.components[k], i, j).eval(q.0, q.1))
}

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// First and second fundamental forms with `nu = f_u x f_v / |f_u x f_v|`.
#[derive(Debug, Clone, Copy)]
pub struct Forms {
    pub nu: [f64; 3],
    pub area: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

pub fn forms(spec: &SurfaceSpec, q: (f64, f64)) -> Forms {
    let fu = dspec(spec, 1, 0, q);
    let fv = dspec(spec, 0, 1, q);
    let c = cross(fu, fv);
    let area = norm(c);
    let nu = c.map(|x| x / area);
    Forms {
        nu,
        area,
        e: dot(fu, fu),
        f: dot(fu, fv),
        g: dot(fv, fv),
        l: dot(dspec(spec, 2, 0, q), nu),
        m: dot(dspec(spec, 1, 1, q), nu),
        n: dot(dspec(spec, 0, 2, q), nu),
    }
}

/// Principal curvatures (eigenvalues of the shape operator), larger
/// magnitude first.
pub fn principal_curvatures(spec: &SurfaceSpec, q: (f64, f64)) -> (f64, f64, Forms) {
    let s = forms(spec, q);
    let det = s.e * s.g - s.f * s.f;
    let k = (s.l * s.n - s.m * s.m) / det;
    let h = (s.e * s.n - 2.0 * s.f * s.m + s.g * s.l) / (2.0 * det);
    let r = (h * h - k).max(0.0).sqrt();
    let (a, b) = (h + r, h - r);
    if a.abs() >= b.abs() {
        (a, b, s)
    } else {
        (b, a, s)
    }
}

/// A multiple of `1/den` in `[-num/den, num/den]`.
fn small_rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-num..=num), den)
}

/// A random immersion `(u + ..., v + ..., a u^2 + b uv + c v^2 + ...)` of degree at most 5.
/// The quadratic part of `z` carries the curvature; higher terms are small perturbations.
pub fn random_surface(rng: &mut impl Rng) -> SurfaceSpec {
    let mut comps = Vec::new();
    for k in 0..3 {
        let mut p = match k {
            0 => Polynomial::u(),
            1 => Polynomial::v(),
            _ => Polynomial::zero(),
        };
        for d in 2..=5u32 {
            for j in 0..=d {
                if rng.gen_bool(0.5) || (k == 2 && d == 2) {
                    let c = match (k, d) {
                        (2, 2) => small_rational(rng, 8, 4),
                        (2, _) => small_rational(rng, 4, 8 * d as i64),
                        _ => small_rational(rng, 4, 16 * d as i64),
                    };
                    p = p.checked_add(&Polynomial::monomial(c, d - j, j)).unwrap();
                }
            }
        }
        comps.push(p);
    }
    let z = comps.pop().unwrap();
    let y = comps.pop().unwrap();
    let x = comps.pop().unwrap();
    SurfaceSpec::new(x, y, z)
}

pub fn max_abs3(a: [f64; 3]) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

pub fn r2f(r: Rational) -> f64 {
    ratio_to_f64(r)
}
