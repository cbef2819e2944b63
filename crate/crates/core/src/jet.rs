//! Truncated Taylor jets in one and two variables.
//!
//! A [`Jet2`] of order `N` at `(u0, v0)` stores the coefficients `c[i][j]`
//! of `(u - u0)^i (v - v0)^j` for `i + j <= N`. Every derivative the rest of
//! the crate needs is read off these coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 6;
/// Smallest and largest supported truncation orders.
pub const MIN_ORDER: usize = 4;
pub const MAX_ORDER: usize = 10;

/// Coordinate axis in the parameter plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    U,
    V,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::U => write!(f, "u"),
            Axis::V => write!(f, "v"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("division by a jet with vanishing constant term ({0:.3e})")]
    DivisionBySingularJet(f64),
    #[error("square root of a jet with non-positive constant term ({0:.3e})")]
    SqrtOfNonpositiveJet(f64),
    #[error("jet is not divisible by {axis} (residual {residual:.3e})")]
    NotDivisible { axis: Axis, residual: f64 },
    #[error("partial derivative of order ({i},{j}) exceeds jet order {order}")]
    OrderExceeded { i: usize, j: usize, order: usize },
}

/// Result of a vanishing-order query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "order", rename_all = "snake_case")]
pub enum VanishingOrder {
    /// The first non-zero coefficient has this index.
    Exact(usize),
    /// Every stored coefficient vanishes; the true order is at least this.
    AtLeast(usize),
}

impl VanishingOrder {
    pub fn exact(self) -> Option<usize> {
        match self {
            VanishingOrder::Exact(k) => Some(k),
            VanishingOrder::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingOrder::Exact(k) => write!(f, "{k}"),
            VanishingOrder::AtLeast(k) => write!(f, ">= {k}"),
        }
    }
}

fn binom(n: usize, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[inline]
fn tri_len(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Largest absolute value in a slice, or zero.
fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

// ---------------------------------------------------------------------------
// Jet1

/// Truncated series in one variable `u` at `u0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet1 {
    base: f64,
    coeffs: Vec<f64>,
}

impl Jet1 {
    pub fn from_coeffs(base: f64, coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least a constant term");
        Jet1 { base, coeffs }
    }

    pub fn constant(base: f64, order: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        Jet1 { base, coeffs }
    }

    /// The coordinate function `u`.
    pub fn variable(base: f64, order: usize) -> Self {
        let mut j = Jet1::constant(base, order, base);
        if order >= 1 {
            j.coeffs[1] = 1.0;
        }
        j
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `k`-th derivative at the base point.
    pub fn derivative_at_base(&self, k: usize) -> Result<f64, JetError> {
        if k > self.order() {
            return Err(JetError::OrderExceeded { i: k, j: 0, order: self.order() });
        }
        Ok(self.coeffs[k] * factorial(k))
    }

    pub fn eval(&self, u: f64) -> f64 {
        let t = u - self.base;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    pub fn deriv(&self) -> Jet1 {
        assert!(self.order() >= 1, "derivative of an order-0 jet");
        let coeffs = (1..self.coeffs.len()).map(|k| k as f64 * self.coeffs[k]).collect();
        Jet1 { base: self.base, coeffs }
    }

    pub fn scale(&self, s: f64) -> Jet1 {
        Jet1 { base: self.base, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn mul(&self, other: &Jet1) -> Jet1 {
        let n = self.order().min(other.order());
        let mut coeffs = vec![0.0; n + 1];
        for (k, out) in coeffs.iter_mut().enumerate() {
            *out = (0..=k).map(|a| self.coeffs[a] * other.coeffs[k - a]).sum();
        }
        Jet1 { base: self.base, coeffs }
    }

    pub fn add(&self, other: &Jet1) -> Jet1 {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect();
        Jet1 { base: self.base, coeffs }
    }

    pub fn sub(&self, other: &Jet1) -> Jet1 {
        self.add(&other.scale(-1.0))
    }

    pub fn recip(&self) -> Result<Jet1, JetError> {
        let b0 = self.coeffs[0];
        if b0.abs() <= crate::tol::EPS_ZERO * self.max_abs().max(1.0) {
            return Err(JetError::DivisionBySingularJet(b0));
        }
        let n = self.order();
        let mut r = vec![0.0; n + 1];
        r[0] = 1.0 / b0;
        for k in 1..=n {
            let s: f64 = (1..=k).map(|a| self.coeffs[a] * r[k - a]).sum();
            r[k] = -s / b0;
        }
        Ok(Jet1 { base: self.base, coeffs: r })
    }

    pub fn div(&self, other: &Jet1) -> Result<Jet1, JetError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Index of the first coefficient above `eps` relative to the largest
    /// coefficient (at least one).
    pub fn vanishing_order(&self, eps: f64) -> VanishingOrder {
        let scale = self.max_abs().max(1.0);
        match self.coeffs.iter().position(|c| c.abs() > eps * scale) {
            Some(k) => VanishingOrder::Exact(k),
            None => VanishingOrder::AtLeast(self.order() + 1),
        }
    }

    /// Divides by `(u - u0)^k`, dropping the `k` lowest coefficients.
    pub fn shift_down(&self, k: usize) -> Jet1 {
        assert!(k <= self.order(), "shift beyond jet order");
        Jet1 { base: self.base, coeffs: self.coeffs[k..].to_vec() }
    }
}

// ---------------------------------------------------------------------------
// Jet2

/// Truncated bivariate Taylor series.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    base: (f64, f64),
    order: usize,
    coeffs: Vec<f64>,
}

impl Jet2 {
    pub fn zero(base: (f64, f64), order: usize) -> Self {
        Jet2 { base, order, coeffs: vec![0.0; tri_len(order)] }
    }

    pub fn constant(base: (f64, f64), order: usize, c: f64) -> Self {
        let mut j = Jet2::zero(base, order);
        j.coeffs[0] = c;
        j
    }

    /// The coordinate function `u` (or `v`) expanded at `base`.
    pub fn coordinate(base: (f64, f64), order: usize, axis: Axis) -> Self {
        let (c, i, j) = match axis {
            Axis::U => (base.0, 1, 0),
            Axis::V => (base.1, 0, 1),
        };
        let mut jet = Jet2::constant(base, order, c);
        if order >= 1 {
            jet.set(i, j, 1.0);
        }
        jet
    }

    pub fn from_fn(base: (f64, f64), order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut j = Jet2::zero(base, order);
        for d in 0..=order {
            for jj in 0..=d {
                j.coeffs[idx(d - jj, jj)] = f(d - jj, jj);
            }
        }
        j
    }

    /// Lifts a series in `u` to a function of `(u, v)` independent of `v`.
    pub fn from_jet1(j1: &Jet1, v0: f64) -> Self {
        Jet2::from_fn((j1.base(), v0), j1.order(), |i, j| if j == 0 { j1.coeff(i) } else { 0.0 })
    }

    pub fn base(&self) -> (f64, f64) {
        self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `(u-u0)^i (v-v0)^j`; zero beyond the order.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > self.order {
            0.0
        } else {
            self.coeffs[idx(i, j)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, c: f64) {
        assert!(i + j <= self.order, "coefficient index beyond jet order");
        self.coeffs[idx(i, j)] = c;
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `d^{i+j} / du^i dv^j` at the base point.
    pub fn partial(&self, i: usize, j: usize) -> Result<f64, JetError> {
        if i + j > self.order {
            return Err(JetError::OrderExceeded { i, j, order: self.order });
        }
        Ok(self.coeffs[idx(i, j)] * factorial(i) * factorial(j))
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    /// Homogeneous part of total degree `d`, ordered by the power of `v`.
    fn homogeneous(&self, d: usize) -> Vec<f64> {
        (0..=d).map(|j| self.coeff(d - j, j)).collect()
    }

    pub fn truncate(&self, order: usize) -> Jet2 {
        let order = order.min(self.order);
        Jet2 { base: self.base, order, coeffs: self.coeffs[..tri_len(order)].to_vec() }
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        let (du, dv) = (u - self.base.0, v - self.base.1);
        let mut total = 0.0;
        for d in 0..=self.order {
            for j in 0..=d {
                total += self.coeffs[idx(d - j, j)] * du.powi((d - j) as i32) * dv.powi(j as i32);
            }
        }
        total
    }

    pub fn scale(&self, s: f64) -> Jet2 {
        Jet2 { base: self.base, order: self.order, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    fn check_base(&self, other: &Jet2) {
        assert!(
            self.base == other.base,
            "jets at different base points: {:?} vs {:?}",
            self.base,
            other.base
        );
    }

    fn zip(&self, other: &Jet2, f: impl Fn(f64, f64) -> f64) -> Jet2 {
        self.check_base(other);
        let order = self.order.min(other.order);
        let coeffs = (0..tri_len(order)).map(|k| f(self.coeffs[k], other.coeffs[k])).collect();
        Jet2 { base: self.base, order, coeffs }
    }

    pub fn mul_jet(&self, other: &Jet2) -> Jet2 {
        self.check_base(other);
        let n = self.order.min(other.order);
        let mut out = Jet2::zero(self.base, n);
        for da in 0..=n {
            for ja in 0..=da {
                let a = self.coeffs[idx(da - ja, ja)];
                if a == 0.0 {
                    continue;
                }
                for db in 0..=(n - da) {
                    for jb in 0..=db {
                        let b = other.coeffs[idx(db - jb, jb)];
                        out.coeffs[idx(da - ja + db - jb, ja + jb)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Series inverse `1 / self`.
    pub fn recip(&self) -> Result<Jet2, JetError> {
        let b0 = self.coeffs[0];
        if b0.abs() <= crate::tol::EPS_ZERO * self.max_abs().max(1.0) {
            return Err(JetError::DivisionBySingularJet(b0));
        }
        let n = self.order;
        let mut r = Jet2::zero(self.base, n);
        r.coeffs[0] = 1.0 / b0;
        for d in 1..=n {
            for j in 0..=d {
                let i = d - j;
                let mut s = 0.0;
                for a in 0..=i {
                    for b in 0..=j {
                        if a == 0 && b == 0 {
                            continue;
                        }
                        s += self.coeffs[idx(a, b)] * r.coeffs[idx(i - a, j - b)];
                    }
                }
                r.coeffs[idx(i, j)] = -s / b0;
            }
        }
        Ok(r)
    }

    pub fn div(&self, other: &Jet2) -> Result<Jet2, JetError> {
        Ok(self.mul_jet(&other.recip()?))
    }

    pub fn sqrt(&self) -> Result<Jet2, JetError> {
        let a0 = self.coeffs[0];
        if a0 <= crate::tol::EPS_ZERO * self.max_abs().max(1.0) {
            return Err(JetError::SqrtOfNonpositiveJet(a0));
        }
        let n = self.order;
        let mut s = Jet2::zero(self.base, n);
        let s0 = a0.sqrt();
        s.coeffs[0] = s0;
        for d in 1..=n {
            for j in 0..=d {
                let i = d - j;
                let mut acc = self.coeffs[idx(i, j)];
                for a in 0..=i {
                    for b in 0..=j {
                        let inner = (a == 0 && b == 0) || (a == i && b == j);
                        if !inner {
                            acc -= s.coeffs[idx(a, b)] * s.coeffs[idx(i - a, j - b)];
                        }
                    }
                }
                s.coeffs[idx(i, j)] = acc / (2.0 * s0);
            }
        }
        Ok(s)
    }

    /// Partial derivative in `u`; the order drops by one.
    pub fn du(&self) -> Jet2 {
        assert!(self.order >= 1, "derivative of an order-0 jet");
        Jet2::from_fn(self.base, self.order - 1, |i, j| (i + 1) as f64 * self.coeffs[idx(i + 1, j)])
    }

    /// Partial derivative in `v`; the order drops by one.
    pub fn dv(&self) -> Jet2 {
        assert!(self.order >= 1, "derivative of an order-0 jet");
        Jet2::from_fn(self.base, self.order - 1, |i, j| (j + 1) as f64 * self.coeffs[idx(i, j + 1)])
    }

    pub fn d(&self, axis: Axis) -> Jet2 {
        match axis {
            Axis::U => self.du(),
            Axis::V => self.dv(),
        }
    }

    /// Directional derivative `a d_u + b d_v`.
    pub fn directional(&self, a: &Jet2, b: &Jet2) -> Jet2 {
        &a.mul_jet(&self.du()) + &b.mul_jet(&self.dv())
    }

    /// Divides by the coordinate function of `axis`.
    ///
    /// When the base point lies on the axis this is a shift of the
    /// coefficients and the order drops by one; the dropped coefficients must
    /// vanish to `eps` relative to the largest coefficient. Off the axis the
    /// coordinate is a unit and ordinary series division is used.
    pub fn divide_by_coordinate(&self, axis: Axis, eps: f64) -> Result<Jet2, JetError> {
        let c0 = match axis {
            Axis::U => self.base.0,
            Axis::V => self.base.1,
        };
        if c0 != 0.0 {
            return self.div(&Jet2::coordinate(self.base, self.order, axis));
        }
        assert!(self.order >= 1, "cannot divide an order-0 jet");
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        let residual = (0..=self.order)
            .map(|k| match axis {
                Axis::U => self.coeff(0, k),
                Axis::V => self.coeff(k, 0),
            })
            .fold(0.0_f64, |m, c| m.max(c.abs()));
        if residual > eps * scale {
            return Err(JetError::NotDivisible { axis, residual });
        }
        Ok(Jet2::from_fn(self.base, self.order - 1, |i, j| match axis {
            Axis::U => self.coeffs[idx(i + 1, j)],
            Axis::V => self.coeffs[idx(i, j + 1)],
        }))
    }

    /// Multiplies by the coordinate function of `axis`.
    pub fn mul_by_coordinate(&self, axis: Axis) -> Jet2 {
        let c0 = match axis {
            Axis::U => self.base.0,
            Axis::V => self.base.1,
        };
        let order = if c0 == 0.0 { self.order + 1 } else { self.order };
        Jet2::from_fn(self.base, order, |i, j| {
            let shifted = match axis {
                Axis::U if i > 0 => self.coeff(i - 1, j),
                Axis::V if j > 0 => self.coeff(i, j - 1),
                _ => 0.0,
            };
            shifted + c0 * self.coeff(i, j)
        })
    }

    /// Lowest total degree with a coefficient above `eps` relative to the
    /// largest one.
    pub fn vanishing_order(&self, eps: f64) -> VanishingOrder {
        let scale = self.max_abs().max(1.0);
        (0..=self.order)
            .find(|&d| self.homogeneous(d).iter().any(|c| c.abs() > eps * scale))
            .map_or(VanishingOrder::AtLeast(self.order + 1), VanishingOrder::Exact)
    }

    /// Exact quotient `self / divisor` where the divisor may vanish at the
    /// base point (to order `m`). The quotient has order
    /// `min(orders) - m`; a non-zero remainder gives [`JetError::NotDivisible`].
    pub fn divide_exact(&self, divisor: &Jet2, eps: f64) -> Result<Jet2, JetError> {
        self.check_base(divisor);
        let m = match divisor.vanishing_order(eps) {
            VanishingOrder::Exact(m) => m,
            VanishingOrder::AtLeast(_) => return Err(JetError::DivisionBySingularJet(0.0)),
        };
        if m == 0 {
            return self.div(divisor);
        }
        let n = self.order.min(divisor.order);
        if n < m {
            return Err(JetError::OrderExceeded { i: m, j: 0, order: n });
        }
        let nq = n - m;
        let scale = self.max_abs().max(divisor.max_abs()).max(1.0);
        let low = (0..m).flat_map(|d| self.homogeneous(d)).fold(0.0_f64, |w, c| w.max(c.abs()));
        if low > 1e3 * eps * scale {
            return Err(JetError::NotDivisible { axis: Axis::V, residual: low });
        }
        let lead = divisor.homogeneous(m);
        let pivot = lead
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(k, _)| k)
            .unwrap_or(0);
        let lo = lead.iter().position(|c| c.abs() > eps * divisor.max_abs().max(1.0)).unwrap_or(pivot);
        let mut q = Jet2::zero(self.base, nq);
        let mut worst = 0.0_f64;
        for d in 0..=nq {
            // residual numerator of degree d + m
            let mut r = self.homogeneous(d + m);
            for k in 1..=d {
                let b = divisor.homogeneous(m + k);
                let qd = q.homogeneous(d - k);
                for (a, ba) in b.iter().enumerate() {
                    for (c, qc) in qd.iter().enumerate() {
                        r[a + c] -= ba * qc;
                    }
                }
            }
            // solve lead * Q_d = r for the homogeneous Q_d of degree d
            let mut qd = vec![0.0; d + 1];
            for b in 0..=d {
                let mut s = r[b + lo];
                for a in (lo + 1)..=m {
                    if a <= b + lo {
                        s -= lead[a] * qd[b + lo - a];
                    }
                }
                qd[b] = s / lead[lo];
            }
            for (j, c) in qd.iter().enumerate() {
                q.coeffs[idx(d - j, j)] = *c;
            }
            for (k, rk) in r.iter().enumerate() {
                let prod: f64 = (0..=m)
                    .filter(|&a| k >= a && k - a <= d)
                    .map(|a| lead[a] * qd[k - a])
                    .sum();
                worst = worst.max((rk - prod).abs());
            }
        }
        if worst > 1e3 * eps * scale {
            return Err(JetError::NotDivisible { axis: Axis::V, residual: worst });
        }
        Ok(q)
    }

    /// Re-expands the represented polynomial at a new base point.
    ///
    /// Exact when the jet's order is at least the degree of the function it
    /// stands for; otherwise this is the Taylor polynomial re-expanded.
    pub fn recenter(&self, base: (f64, f64), order: usize) -> Jet2 {
        let (du, dv) = (base.0 - self.base.0, base.1 - self.base.1);
        let order = order.min(self.order);
        let n = self.order;
        let upow: Vec<f64> = (0..=n).map(|k| du.powi(k as i32)).collect();
        let vpow: Vec<f64> = (0..=n).map(|k| dv.powi(k as i32)).collect();
        Jet2::from_fn(base, order, |i, j| {
            let mut s = 0.0;
            for a in i..=n {
                for b in j..=(n - a) {
                    let c = self.coeffs[idx(a, b)];
                    if c != 0.0 {
                        s += c * binom(a, i) * binom(b, j) * upow[a - i] * vpow[b - j];
                    }
                }
            }
            s
        })
    }

    /// Restriction to the line `v = v0` as a series in `u`.
    pub fn restrict_to_u_line(&self) -> Jet1 {
        Jet1::from_coeffs(self.base.0, (0..=self.order).map(|i| self.coeff(i, 0)).collect())
    }
}

impl Add for &Jet2 {
    type Output = Jet2;
    fn add(self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for &Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: &Jet2) -> Jet2 {
        self.mul_jet(rhs)
    }
}

impl Mul<f64> for &Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        self.scale(rhs)
    }
}

impl Neg for &Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Jet2> for Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: Jet2) -> Jet2 {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet2> for Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: &Jet2) -> Jet2 {
                (&self).$m(rhs)
            }
        }
        impl $tr<Jet2> for &Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: Jet2) -> Jet2 {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        self.scale(rhs)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl AddAssign<&Jet2> for Jet2 {
    fn add_assign(&mut self, rhs: &Jet2) {
        *self = &*self + rhs;
    }
}

// ---------------------------------------------------------------------------
// JetVec3

/// A vector in 3-space whose components are jets at a common base point.
#[derive(Debug, Clone, PartialEq)]
pub struct JetVec3(pub [Jet2; 3]);

impl JetVec3 {
    pub fn new(x: Jet2, y: Jet2, z: Jet2) -> Self {
        x.check_base(&y);
        x.check_base(&z);
        JetVec3([x, y, z])
    }

    pub fn constant(base: (f64, f64), order: usize, c: [f64; 3]) -> Self {
        JetVec3(c.map(|x| Jet2::constant(base, order, x)))
    }

    pub fn base(&self) -> (f64, f64) {
        self.0[0].base()
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(Jet2::order).min().unwrap_or(0)
    }

    pub fn value(&self) -> [f64; 3] {
        [self.0[0].value(), self.0[1].value(), self.0[2].value()]
    }

    pub fn map(&self, f: impl Fn(&Jet2) -> Jet2) -> JetVec3 {
        JetVec3([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }

    pub fn zip(&self, other: &JetVec3, f: impl Fn(&Jet2, &Jet2) -> Jet2) -> JetVec3 {
        JetVec3([f(&self.0[0], &other.0[0]), f(&self.0[1], &other.0[1]), f(&self.0[2], &other.0[2])])
    }

    pub fn add(&self, other: &JetVec3) -> JetVec3 {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &JetVec3) -> JetVec3 {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Jet2) -> JetVec3 {
        self.map(|c| c * s)
    }

    pub fn scale_f64(&self, s: f64) -> JetVec3 {
        self.map(|c| c.scale(s))
    }

    pub fn dot(&self, other: &JetVec3) -> Jet2 {
        &(&self.0[0] * &other.0[0]) + &(&(&self.0[1] * &other.0[1]) + &(&self.0[2] * &other.0[2]))
    }

    pub fn cross(&self, other: &JetVec3) -> JetVec3 {
        let [a1, a2, a3] = &self.0;
        let [b1, b2, b3] = &other.0;
        JetVec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm(&self) -> Result<Jet2, JetError> {
        self.dot(self).sqrt()
    }

    pub fn normalize(&self) -> Result<JetVec3, JetError> {
        let inv = self.norm()?.recip()?;
        Ok(self.scale(&inv))
    }

    pub fn du(&self) -> JetVec3 {
        self.map(Jet2::du)
    }

    pub fn dv(&self) -> JetVec3 {
        self.map(Jet2::dv)
    }

    pub fn d(&self, axis: Axis) -> JetVec3 {
        self.map(|c| c.d(axis))
    }

    pub fn directional(&self, a: &Jet2, b: &Jet2) -> JetVec3 {
        self.map(|c| c.directional(a, b))
    }

    pub fn divide_by_coordinate(&self, axis: Axis, eps: f64) -> Result<JetVec3, JetError> {
        // divisibility is judged against the scale of the whole vector
        let scale = self.max_abs();
        let mut out = Vec::with_capacity(3);
        for c in &self.0 {
            let eps_c = if c.max_abs() > 0.0 { eps * scale / c.max_abs() } else { eps };
            out.push(c.divide_by_coordinate(axis, eps_c)?);
        }
        let [x, y, z]: [Jet2; 3] = out.try_into().expect("three components");
        Ok(JetVec3([x, y, z]))
    }

    pub fn recenter(&self, base: (f64, f64), order: usize) -> JetVec3 {
        self.map(|c| c.recenter(base, order))
    }

    pub fn truncate(&self, order: usize) -> JetVec3 {
        self.map(|c| c.truncate(order))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(Jet2::max_abs).fold(0.0, f64::max)
    }

    /// `det(a, b, c) = <a, b x c>`.
    pub fn det(a: &JetVec3, b: &JetVec3, c: &JetVec3) -> Jet2 {
        a.dot(&b.cross(c))
    }
}
