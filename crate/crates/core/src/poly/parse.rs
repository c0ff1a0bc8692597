//! Text and JSON input for polynomials.
//!
//! Text form is a comma-separated coefficient list, low to high. Each
//! coefficient is a small arithmetic expression over integers, decimals,
//! `pi`, and the imaginary unit `i`:
//!
//! ```text
//! pi/2, -pi^2, 0, 2        2x³ − π²x + π/2
//! 1/3, 0.25, 2e-3          exact rationals
//! (1+2i), -i               complex
//! ```
//!
//! Decimals are read exactly. Any occurrence of `pi` or `i` turns the
//! coefficient into a floating complex value, and one such coefficient makes
//! the whole polynomial the complex kind.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive, Zero};
use serde_json::Value;

use super::{DynPoly, Kind, Poly, PolyError};

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Complex(Complex64),
}

impl Scalar {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Complex(z) => *z,
        }
    }

    fn binary(
        self,
        other: Scalar,
        exact: impl Fn(BigRational, BigRational) -> Result<BigRational, PolyError>,
        float: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Scalar, PolyError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => exact(a, b).map(Scalar::Rational),
            (a, b) => Ok(Scalar::Complex(float(a.to_complex(), b.to_complex()))),
        }
    }
}

fn err(msg: impl Into<String>) -> PolyError {
    PolyError::Parse(msg.into())
}

/// Parses one coefficient expression.
pub fn parse_scalar(s: &str) -> Result<Scalar, PolyError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(err(format!("unexpected '{}' in {s:?}", &s[p.pos..])));
    }
    Ok(v)
}

/// Parses a comma-separated, low-to-high coefficient list.
pub fn parse_coeff_list(s: &str) -> Result<DynPoly, PolyError> {
    if s.trim().is_empty() {
        return Ok(DynPoly::Rational(Poly::zero()));
    }
    let scalars = s.split(',').map(parse_scalar).collect::<Result<Vec<_>, _>>()?;
    assemble(scalars, None)
}

/// Parses `{"coeffs": [...], "kind": "rational" | "complex"}` or a bare coefficient array.
///
/// Entries may be expression strings, JSON numbers, or `[re, im]` pairs.
pub fn parse_json(v: &Value) -> Result<DynPoly, PolyError> {
    let (coeffs, kind) = match v {
        Value::Array(items) => (items, None),
        Value::Object(map) => {
            let coeffs = map.get("coeffs").and_then(Value::as_array).ok_or_else(|| err("missing \"coeffs\" array"))?;
            let kind = match map.get("kind") {
                None | Some(Value::Null) => None,
                Some(Value::String(k)) if k == "rational" => Some(Kind::Rational),
                Some(Value::String(k)) if k == "complex" => Some(Kind::Complex),
                Some(other) => return Err(err(format!("unknown kind {other}"))),
            };
            (coeffs, kind)
        }
        _ => return Err(err("expected an object or an array")),
    };
    let scalars = coeffs.iter().map(json_scalar).collect::<Result<Vec<_>, _>>()?;
    assemble(scalars, kind)
}

fn json_scalar(v: &Value) -> Result<Scalar, PolyError> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) => parse_scalar(&n.to_string()),
        Value::Array(pair) if pair.len() == 2 => {
            let part = |x: &Value| x.as_f64().ok_or_else(|| err(format!("non-numeric component {x}")));
            Ok(Scalar::Complex(Complex64::new(part(&pair[0])?, part(&pair[1])?)))
        }
        other => Err(err(format!("bad coefficient {other}"))),
    }
}

fn assemble(scalars: Vec<Scalar>, kind: Option<Kind>) -> Result<DynPoly, PolyError> {
    let any_complex = scalars.iter().any(|s| matches!(s, Scalar::Complex(_)));
    match kind {
        Some(Kind::Rational) if any_complex => Err(err("kind \"rational\" but a coefficient is not exact")),
        Some(Kind::Complex) => Ok(DynPoly::Complex(Poly::new(scalars.iter().map(Scalar::to_complex).collect()))),
        _ if any_complex => Ok(DynPoly::Complex(Poly::new(scalars.iter().map(Scalar::to_complex).collect()))),
        _ => Ok(DynPoly::Rational(Poly::new(
            scalars
                .into_iter()
                .map(|s| match s {
                    Scalar::Rational(q) => q,
                    Scalar::Complex(_) => unreachable!(),
                })
                .collect(),
        ))),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.binary(self.term()?, |a, b| Ok(a + b), |a, b| a + b)?;
            } else if self.eat(b'-') {
                acc = acc.binary(self.term()?, |a, b| Ok(a - b), |a, b| a - b)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.binary(self.unary()?, |a, b| Ok(a * b), |a, b| a * b)?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                acc = acc.binary(
                    rhs,
                    |a, b| if b.is_zero() { Err(err("division by zero")) } else { Ok(a / b) },
                    |a, b| a / b,
                )?;
            } else if matches!(self.peek(), Some(b'p' | b'i' | b'j' | b'(')) {
                // Juxtaposition: `2pi`, `3i`, `2(1+i)`.
                acc = acc.binary(self.power()?, |a, b| Ok(a * b), |a, b| a * b)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, PolyError> {
        if self.eat(b'-') {
            return match self.unary()? {
                Scalar::Rational(q) => Ok(Scalar::Rational(-q)),
                Scalar::Complex(z) => Ok(Scalar::Complex(-z)),
            };
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, PolyError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = match self.unary()? {
            Scalar::Rational(q) if q.is_integer() => q.to_integer().to_i32().ok_or_else(|| err("exponent too large"))?,
            _ => return Err(err("exponent must be an integer")),
        };
        match base {
            Scalar::Rational(q) if q.is_zero() && e < 0 => Err(err("division by zero")),
            Scalar::Rational(q) => Ok(Scalar::Rational(Pow::pow(q, e))),
            Scalar::Complex(z) => Ok(Scalar::Complex(z.powi(e))),
        }
    }

    fn atom(&mut self) -> Result<Scalar, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(err("missing ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"pi" => Ok(Scalar::Complex(Complex64::new(std::f64::consts::PI, 0.0))),
                    b"i" | b"j" => Ok(Scalar::Complex(Complex64::new(0.0, 1.0))),
                    other => Err(err(format!("unknown name {:?}", String::from_utf8_lossy(other)))),
                }
            }
            Some(c) => Err(err(format!("unexpected '{}'", c as char))),
            None => Err(err("unexpected end of input")),
        }
    }

    /// Exact decimal literal with optional exponent.
    fn number(&mut self) -> Result<Scalar, PolyError> {
        let digits = |p: &mut Self| {
            let start = p.pos;
            while p.src.get(p.pos).is_some_and(u8::is_ascii_digit) {
                p.pos += 1;
            }
            std::str::from_utf8(&p.src[start..p.pos]).unwrap().to_owned()
        };
        let int = digits(self);
        let frac = if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            digits(self)
        } else {
            String::new()
        };
        if int.is_empty() && frac.is_empty() {
            return Err(err("malformed number"));
        }
        let mut exp: i32 = -(frac.len() as i32);
        if matches!(self.src.get(self.pos), Some(b'e' | b'E'))
            && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit() || *c == b'-' || *c == b'+')
        {
            self.pos += 1;
            let neg = match self.src.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let e: i32 = digits(self).parse().map_err(|_| err("bad exponent"))?;
            exp += if neg { -e } else { e };
        }
        let mantissa: BigInt = format!("{int}{frac}").parse().map_err(|_| err("bad number"))?;
        let scale = Pow::pow(BigRational::from_integer(10.into()), exp.unsigned_abs());
        let value = BigRational::from_integer(mantissa);
        Ok(Scalar::Rational(if exp >= 0 { value * scale } else { value / scale }))
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(v.into()))
    }
}
