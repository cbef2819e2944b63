//! Text and JSON formats for surface specifications.
//!
//! ```text
//! # swallowtail-type front
//! x = u^2/2 - v
//! y = -u^3/3 + u*v
//! z = -u^4/8 + u^2*v/2
//! point = 0, 0
//! ```
//!
//! Expressions use `+ - * / ^`, parentheses, integer or decimal literals and
//! the variables `u`, `v`. Juxtaposition multiplies (`3u^2v`). Exponents are
//! non-negative integer literals; division is only by constants.

use std::collections::BTreeMap;

use num_traits::{CheckedDiv, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Overflow, Polynomial, Rational};
use crate::surface::SurfaceSpec;

/// A parsed specification file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceFile {
    pub spec: SurfaceSpec,
    pub point: Option<(Rational, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
}

impl Lexer {
    fn new(src: &str, line: usize, col0: usize) -> Self {
        Lexer { chars: src.chars().collect(), pos: 0, line, col0 }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
                self.pos += 1;
            }
            let col = self.col0 + self.pos + 1;
            let Some(&c) = self.chars.get(self.pos) else {
                out.push((Tok::End, col));
                return Ok(out);
            };
            if c.is_ascii_digit() || c == '.' {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '.') {
                    self.pos += 1;
                }
                out.push((Tok::Num(self.chars[start..self.pos].iter().collect()), col));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
                    self.pos += 1;
                }
                let word = &self.chars[start..self.pos];
                if word.iter().all(|&c| c == 'u' || c == 'v') {
                    // `uv^2` reads as `u * v^2`.
                    out.extend(word.iter().enumerate().map(|(k, c)| (Tok::Ident(c.to_string()), col + k)));
                } else {
                    out.push((Tok::Ident(word.iter().collect()), col));
                }
            } else if "+-*/^(),".contains(c) {
                self.pos += 1;
                out.push((Tok::Sym(c), col));
            } else {
                return Err(Error::Parse { line: self.line, col, msg: format!("unexpected character '{c}'") });
            }
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, col: self.col(), msg: msg.into() })
    }

    fn overflow(&self) -> Error {
        Error::RationalOverflow { line: self.line }
    }

    fn lift(&self, r: std::result::Result<Polynomial, Overflow>) -> Result<Polynomial> {
        r.map_err(|_| self.overflow())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.lift(acc.checked_add(&rhs))?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.lift(acc.checked_sub(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.lift(acc.checked_mul(&rhs))?;
                }
                Tok::Sym('/') => {
                    self.bump();
                    let col = self.col();
                    let rhs = self.unary()?;
                    let Some(c) = rhs.as_constant() else {
                        return Err(Error::Parse { line: self.line, col, msg: "division by a non-constant expression".into() });
                    };
                    if c.is_zero() {
                        return Err(Error::Parse { line: self.line, col, msg: "division by zero".into() });
                    }
                    let inv = Rational::one().checked_div(&c).ok_or_else(|| self.overflow())?;
                    acc = self.lift(acc.checked_scale(inv))?;
                }
                _ if self.starts_atom() => {
                    let rhs = self.power()?;
                    acc = self.lift(acc.checked_mul(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                let x = self.unary()?;
                self.lift(x.checked_scale(-Rational::one()))
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        match self.bump() {
            Tok::Num(s) if s.chars().all(|c| c.is_ascii_digit()) => {
                let n: u32 = s.parse().map_err(|_| Error::Parse { line: self.line, col, msg: format!("exponent '{s}' too large") })?;
                self.lift(base.checked_pow(n))
            }
            _ => Err(Error::Parse { line: self.line, col, msg: "exponent must be a non-negative integer literal".into() }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.bump() {
            Tok::Num(s) => Ok(Polynomial::constant(self.literal(&s, col)?)),
            Tok::Ident(name) if !name.is_empty() && name.chars().all(|c| c == 'u' || c == 'v') => {
                let mut acc = Polynomial::constant(Rational::one());
                for c in name.chars() {
                    let var = if c == 'u' { Polynomial::u() } else { Polynomial::v() };
                    acc = self.lift(acc.checked_mul(&var))?;
                }
                Ok(acc)
            }
            Tok::Ident(name) => Err(Error::Parse { line: self.line, col, msg: format!("unknown variable '{name}'") }),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if self.bump() != Tok::Sym(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Tok::End => Err(Error::Parse { line: self.line, col, msg: "unexpected end of expression".into() }),
            Tok::Sym(c) => Err(Error::Parse { line: self.line, col, msg: format!("unexpected '{c}'") }),
        }
    }

    fn literal(&self, s: &str, col: usize) -> Result<Rational> {
        let bad = || Error::Parse { line: self.line, col, msg: format!("malformed number '{s}'") };
        let (int, frac) = match s.split_once('.') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        if int.is_empty() && frac.is_empty() || frac.contains('.') {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let numer: i64 = digits.parse().map_err(|_| self.overflow())?;
        let denom = u32::try_from(frac.len())
            .ok()
            .and_then(|k| 10i64.checked_pow(k))
            .ok_or_else(|| self.overflow())?;
        Ok(Rational::new(numer, denom))
    }
}

fn parse_expr_at(src: &str, line: usize, col0: usize) -> Result<Polynomial> {
    let toks = Lexer::new(src, line, col0).tokens()?;
    let mut p = Parser { toks, pos: 0, line };
    let poly = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

/// Parses one polynomial expression.
pub fn parse_polynomial(src: &str) -> Result<Polynomial> {
    parse_expr_at(src, 1, 0)
}

fn parse_point(src: &str, line: usize, col0: usize) -> Result<(Rational, Rational)> {
    let Some(comma) = src.find(',') else {
        return Err(Error::Parse { line, col: col0 + src.len() + 1, msg: "expected 'U, V'".into() });
    };
    let (a, b) = (&src[..comma], &src[comma + 1..]);
    let coord = |s: &str, c0: usize| -> Result<Rational> {
        parse_expr_at(s, line, c0)?
            .as_constant()
            .ok_or(Error::Parse { line, col: c0 + 1, msg: "point coordinates must be constants".into() })
    };
    Ok((coord(a, col0)?, coord(b, col0 + comma + 1)?))
}

/// Parses the text format, or the JSON form when the input starts with `{`.
pub fn parse_surface_spec(text: &str) -> Result<SurfaceFile> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut comps: [Option<Polynomial>; 3] = [None, None, None];
    let mut point = None;
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(Error::Parse { line, col, msg: "expected 'key = value'".into() });
        };
        let key = content[..eq].trim();
        let key_col = content.len() - content.trim_start().len() + 1;
        let rhs = &content[eq + 1..];
        let slot = match key {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            "point" => None,
            _ => return Err(Error::Parse { line, col: key_col, msg: format!("unknown key '{key}'") }),
        };
        let duplicate = match slot {
            Some(i) => comps[i].is_some(),
            None => point.is_some(),
        };
        if duplicate {
            return Err(Error::Parse { line, col: key_col, msg: format!("duplicate key '{key}'") });
        }
        match slot {
            Some(i) => comps[i] = Some(parse_expr_at(rhs, line, eq + 1)?),
            None => point = Some(parse_point(rhs, line, eq + 1)?),
        }
    }
    let [x, y, z] = comps;
    let missing = |name: &str| Error::Parse { line: last_line + 1, col: 1, msg: format!("missing component '{name}'") };
    Ok(SurfaceFile {
        spec: SurfaceSpec::new(x.ok_or_else(|| missing("x"))?, y.ok_or_else(|| missing("y"))?, z.ok_or_else(|| missing("z"))?),
        point,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSpec {
    x: String,
    y: String,
    z: String,
    #[serde(default)]
    point: Option<[String; 2]>,
}

fn parse_json(text: &str) -> Result<SurfaceFile> {
    let doc: JsonSpec = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })?;
    let comp = |s: &str| parse_polynomial(s);
    let point = match &doc.point {
        Some([a, b]) => {
            let c = |s: &str| {
                parse_polynomial(s)?
                    .as_constant()
                    .ok_or(Error::Parse { line: 1, col: 1, msg: "point coordinates must be constants".into() })
            };
            Some((c(a)?, c(b)?))
        }
        None => None,
    };
    Ok(SurfaceFile { spec: SurfaceSpec::new(comp(&doc.x)?, comp(&doc.y)?, comp(&doc.z)?), point })
}

/// Canonical text form; [`parse_surface_spec`] inverts it exactly.
pub fn print_surface_spec(file: &SurfaceFile) -> String {
    let [x, y, z] = &file.spec.components;
    let mut out = format!("x = {x}\ny = {y}\nz = {z}\n");
    if let Some((a, b)) = file.point {
        out.push_str(&format!("point = {a}, {b}\n"));
    }
    out
}

/// JSON form with the components as canonical strings.
pub fn to_json(file: &SurfaceFile) -> String {
    #[derive(Serialize)]
    struct Out {
        x: String,
        y: String,
        z: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        point: Option<[String; 2]>,
    }
    let [x, y, z] = &file.spec.components;
    let out = Out {
        x: x.to_string(),
        y: y.to_string(),
        z: z.to_string(),
        point: file.point.map(|(a, b)| [a.to_string(), b.to_string()]),
    };
    serde_json::to_string_pretty(&out).expect("plain strings serialize")
}

/// Parses `"U,V"` with rational or decimal coordinates.
pub fn parse_pair(s: &str) -> Result<(Rational, Rational)> {
    parse_point(s, 1, 0)
}

/// Exact coefficient table, keyed by `(i, j)`; handy in tests.
pub fn coefficients(p: &Polynomial) -> BTreeMap<(u32, u32), Rational> {
    p.terms().map(|(i, j, c)| ((i, j), c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio_to_f64;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn exact_half() {
        let p = parse_polynomial("u^2/2 - v").unwrap();
        assert_eq!(p.coeff(2, 0), r(1, 2));
        assert_eq!(p.coeff(0, 1), r(-1, 1));
    }

    #[test]
    fn negative_exponent_rejected() {
        let err = parse_surface_spec("x = u^-1\ny = v\nz = 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, col: 7, .. }), "{err:?}");
    }

    #[test]
    fn juxtaposition_and_decimals() {
        let p = parse_polynomial("60u^3v + 0.25(u - v) + 2uv").unwrap();
        assert_eq!(p.coeff(1, 1), r(2, 1));
        assert_eq!(p.coeff(3, 1), r(60, 1));
        assert_eq!(p.coeff(1, 0), r(1, 4));
        assert!((ratio_to_f64(p.coeff(0, 1)) + 0.25).abs() < 1e-15);
    }

    #[test]
    fn unknown_key_and_missing_component() {
        assert!(matches!(parse_surface_spec("x = u\nw = v\n"), Err(Error::Parse { line: 2, col: 1, .. })));
        assert!(matches!(parse_surface_spec("x = u\ny = v\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn division_by_variable_rejected() {
        assert!(matches!(parse_polynomial("1/u"), Err(Error::Parse { .. })));
    }

    #[test]
    fn overflow_reported() {
        let text = "x = 99999999999999999999*u\ny = v\nz = 0\n";
        assert_eq!(parse_surface_spec(text), Err(Error::RationalOverflow { line: 1 }));
    }

    #[test]
    fn text_and_json_agree() {
        let text = "x = u^2/2 - v  # comment\ny = -u^3/3 + u*v\nz = -u^4/8 + u^2*v/2\npoint = 0, -1/2\n";
        let a = parse_surface_spec(text).unwrap();
        let b = parse_surface_spec(&to_json(&a)).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_surface_spec(&print_surface_spec(&a)).unwrap(), a);
        assert_eq!(a.point, Some((r(0, 1), r(-1, 2))));
    }
}
