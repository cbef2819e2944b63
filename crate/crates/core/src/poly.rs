//! Bivariate polynomials in `(u, v)` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, One, Signed, ToPrimitive, Zero};

use crate::jet::Jet2;

pub type Rational = Ratio<i64>;

/// Arithmetic left the range of 64-bit numerators/denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// `sum c_{ij} u^i v^j`, storing only non-zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Polynomial::zero();
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn u() -> Self {
        Polynomial::monomial(Rational::one(), 1, 0)
    }

    pub fn v() -> Self {
        Polynomial::monomial(Rational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).copied(),
            _ => None,
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).copied().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Rational)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    fn insert_add(&mut self, key: (u32, u32), c: Rational) -> Result<(), Overflow> {
        let sum = self.coeff(key.0, key.1).checked_add(&c).ok_or(Overflow)?;
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, Overflow> {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.insert_add((i, j), c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, Overflow> {
        self.checked_add(&other.checked_scale(-Rational::one())?)
    }

    pub fn checked_scale(&self, s: Rational) -> Result<Polynomial, Overflow> {
        let mut out = Polynomial::zero();
        for (i, j, c) in self.terms() {
            out.insert_add((i, j), c.checked_mul(&s).ok_or(Overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, Overflow> {
        let mut out = Polynomial::zero();
        for (i, j, a) in self.terms() {
            for (k, l, b) in other.terms() {
                let key = (i.checked_add(k).ok_or(Overflow)?, j.checked_add(l).ok_or(Overflow)?);
                out.insert_add(key, a.checked_mul(&b).ok_or(Overflow)?)?;
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, n: u32) -> Result<Polynomial, Overflow> {
        let mut out = Polynomial::constant(Rational::one());
        for _ in 0..n {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// Substitutes `u -> pu`, `v -> pv`.
    pub fn compose(&self, pu: &Polynomial, pv: &Polynomial) -> Result<Polynomial, Overflow> {
        let mut out = Polynomial::zero();
        for (i, j, c) in self.terms() {
            let term = pu.checked_pow(i)?.checked_mul(&pv.checked_pow(j)?)?.checked_scale(c)?;
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        self.terms()
            .map(|(i, j, c)| ratio_to_f64(c) * u.powi(i as i32) * v.powi(j as i32))
            .sum()
    }

    /// The polynomial as a jet at the origin of the given order.
    pub fn to_jet(&self, order: usize) -> Jet2 {
        let mut jet = Jet2::zero((0.0, 0.0), order);
        for (i, j, c) in self.terms() {
            if (i + j) as usize <= order {
                jet.set(i as usize, j as usize, ratio_to_f64(c));
            }
        }
        jet
    }
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| *r.numer() as f64 / *r.denom() as f64)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut first = true;
    for (name, p) in [("u", i), ("v", j)] {
        if p == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if p == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{p}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Canonical form: graded by total degree, higher powers of `u` first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = self.terms[&(i, j)];
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if i + j == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, i, j)?;
            }
        }
        Ok(())
    }
}
