//! Numeric thresholds shared by every stage.

use serde::Serialize;

/// Zero test for decisive scalars and series coefficients.
pub const EPS_ZERO: f64 = 1e-9;
/// Divisibility test for coordinate and common-factor division.
pub const EPS_DIV: f64 = 1e-9;
/// Focal mesh vertices with smaller |kappa_hat| are dropped.
pub const EPS_EXPORT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub zero: f64,
    pub div: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { zero: EPS_ZERO, div: EPS_DIV }
    }
}

/// A decision paired with the number it was read from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verdict {
    pub value: f64,
    pub nonzero: bool,
    pub margin: f64,
}

impl Verdict {
    /// `margin` is the distance of `|value|` from the tolerance band.
    pub fn of(value: f64, eps: f64) -> Self {
        Verdict { value, nonzero: value.abs() > eps, margin: value.abs() - eps }
    }
}
