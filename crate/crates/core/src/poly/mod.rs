//! Univariate polynomials over exact rationals or floating scalars.
//!
//! Coefficients are stored low to high with trailing zeros trimmed, so the
//! zero polynomial is the empty vector and has no degree.

mod parse;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use parse::{parse_coeff_list, parse_json, parse_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("coefficient kinds differ: {0:?} and {1:?}")]
    KindMismatch(Kind, Kind),
    #[error("{0} is not a root (|p(r)| = {1:e})")]
    NotARoot(String, f64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("the zero polynomial has no roots to count")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rational,
    Complex,
}

/// Scalars usable as polynomial coefficients.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Type of `|a|`.
    type Norm: Clone + fmt::Debug + PartialOrd + Zero + Add<Output = Self::Norm> + Mul<Output = Self::Norm>;

    /// Whether arithmetic is exact (zero tests are then exact too).
    const EXACT: bool;

    fn norm(&self) -> Self::Norm;

    fn norm_f64(n: &Self::Norm) -> f64;

    /// `self * x + add`, fused where the type supports it.
    fn mul_add(&self, x: &Self, add: &Self) -> Self {
        self.clone() * x.clone() + add.clone()
    }
}

impl Coefficient for BigRational {
    type Norm = BigRational;
    const EXACT: bool = true;

    fn norm(&self) -> BigRational {
        self.abs()
    }

    fn norm_f64(n: &BigRational) -> f64 {
        n.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Coefficient for f64 {
    type Norm = f64;
    const EXACT: bool = false;

    fn norm(&self) -> f64 {
        self.abs()
    }

    fn norm_f64(n: &f64) -> f64 {
        *n
    }

    fn mul_add(&self, x: &f64, add: &f64) -> f64 {
        f64::mul_add(*self, *x, *add)
    }
}

impl Coefficient for Complex64 {
    type Norm = f64;
    const EXACT: bool = false;

    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }

    fn norm_f64(n: &f64) -> f64 {
        *n
    }

    fn mul_add(&self, x: &Complex64, add: &Complex64) -> Complex64 {
        // Two real fused multiply-adds per component.
        Complex64::new(
            f64::mul_add(self.re, x.re, f64::mul_add(-self.im, x.im, add.re)),
            f64::mul_add(self.re, x.im, f64::mul_add(self.im, x.re, add.im)),
        )
    }
}

#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> Poly<T> {
    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: T) -> Self {
        Poly::new(vec![-r, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut it = self.coeffs.iter().rev();
        let Some(first) = it.next() else { return T::zero() };
        it.fold(first.clone(), |acc, a| acc.mul_add(x, a))
    }

    /// Term-by-term evaluation with explicit powers.
    pub fn eval_naive(&self, x: &T) -> T {
        let mut pow = T::one();
        let mut sum = T::zero();
        for a in &self.coeffs {
            sum = sum + a.clone() * pow.clone();
            pow = pow * x.clone();
        }
        sum
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = o.clone() + s.clone();
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = a.mul_add(b, &out[i + j]);
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::constant(T::one()), |acc, _| acc.mul(self))
    }

    /// Long division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let lead = d.leading().ok_or(PolyError::DivisionByZero)?.clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd].clone() / lead.clone();
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - q.clone() * c.clone();
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Synthetic division by `x - r`: quotient and remainder `p(r)`.
    pub fn deflate(&self, r: &T) -> (Self, T) {
        let Some(top) = self.coeffs.len().checked_sub(1) else { return (Poly::zero(), T::zero()) };
        let mut quot = vec![T::zero(); top];
        let mut acc = self.coeffs[top].clone();
        for i in (0..top).rev() {
            quot[i] = acc.clone();
            acc = acc.mul_add(r, &self.coeffs[i]);
        }
        (Poly::new(quot), acc)
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for a in &self.coeffs {
            if !k.is_zero() {
                out.push(a.clone() * k.clone());
            }
            k = k + T::one();
        }
        Poly::new(out)
    }

    /// `max |aᵢ|`, zero for the zero polynomial.
    pub fn max_norm(&self) -> T::Norm {
        self.coeffs.iter().map(Coefficient::norm).fold(T::Norm::zero(), |m, a| if a > m { a } else { m })
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Coefficient> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

impl Poly<BigRational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        self.map(|c| c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_complex(&self) -> Poly<Complex64> {
        self.map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
    }
}

impl Poly<f64> {
    pub fn from_f64(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.to_vec())
    }

    pub fn to_complex(&self) -> Poly<Complex64> {
        self.map(|&c| Complex64::new(c, 0.0))
    }
}

/// Outcome of comparing `|pq|` with `|p|·|q|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum NormClaim {
    Holds { value: f64 },
    Violated { lhs: f64, rhs: f64 },
}

/// Relative tolerance used for the floating kinds.
pub const NORM_CLAIM_RTOL: f64 = 1e-12;

/// Checks multiplicativity of the max-coefficient norm on one pair.
pub fn norm_claim_check<T: Coefficient>(p: &Poly<T>, q: &Poly<T>) -> NormClaim {
    let lhs = p.mul(q).max_norm();
    let rhs = p.max_norm() * q.max_norm();
    let equal = if T::EXACT {
        lhs == rhs
    } else {
        let (l, r) = (T::norm_f64(&lhs), T::norm_f64(&rhs));
        (l - r).abs() <= NORM_CLAIM_RTOL * l.abs().max(r.abs())
    };
    let (l, r) = (T::norm_f64(&lhs), T::norm_f64(&rhs));
    if equal {
        NormClaim::Holds { value: l }
    } else {
        NormClaim::Violated { lhs: l, rhs: r }
    }
}

/// Largest `m` with `(x - r)^m | p`.
///
/// Exact kinds divide exactly; floating kinds accept a stage when its
/// remainder is below `tol`.
pub fn multiplicity<T: Coefficient>(p: &Poly<T>, r: &T, tol: f64) -> Result<usize, PolyError> {
    assert!(tol > 0.0, "tolerance must be positive");
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let negligible = |v: &T| if T::EXACT { v.is_zero() } else { T::norm_f64(&v.norm()) < tol };
    let (mut q, rem) = p.deflate(r);
    if !negligible(&rem) {
        return Err(PolyError::NotARoot(format!("{r:?}"), T::norm_f64(&rem.norm())));
    }
    let mut m = 1;
    while q.degree().is_some_and(|d| d >= 1) {
        let (next, rem) = q.deflate(r);
        if !negligible(&rem) {
            break;
        }
        q = next;
        m += 1;
    }
    Ok(m)
}

/// Whether `p` splits into linear factors over the rationals.
///
/// Rational roots are extracted one at a time (rational root theorem) until
/// either a nonzero constant remains (true) or no candidate divides (false).
pub fn is_nicely_factored(p: &Poly<BigRational>) -> bool {
    if p.is_zero() {
        return false;
    }
    let mut q = p.clone();
    while q.degree().unwrap() >= 1 {
        match rational_root(&q) {
            Some(r) => q = q.deflate(&r).0,
            None => return false,
        }
    }
    true
}

/// Some rational root of `p`, if one exists.
pub fn rational_root(p: &Poly<BigRational>) -> Option<BigRational> {
    let ints = integer_coeffs(p);
    if ints.first().is_some_and(Zero::is_zero) {
        return Some(BigRational::zero());
    }
    let a0 = ints.first()?.abs().to_biguint()?;
    let ad = ints.last()?.abs().to_biguint()?;
    let num = divisors(&a0);
    let den = divisors(&ad);
    for d in &num {
        for e in &den {
            if !d.gcd(e).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let r = BigRational::new(BigInt::from(d.clone()) * sign, BigInt::from(e.clone()));
                if p.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Scales `p` by the lcm of its denominators.
fn integer_coeffs(p: &Poly<BigRational>) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    p.coeffs().iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect()
}

/// All positive divisors of `n > 0`, by trial division up to `√n`.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigUint::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1u32;
    }
    small.extend(large.into_iter().rev());
    small
}

/// A polynomial of either coefficient kind.
#[derive(Debug, Clone, PartialEq)]
pub enum DynPoly {
    Rational(Poly<BigRational>),
    Complex(Poly<Complex64>),
}

impl DynPoly {
    pub fn kind(&self) -> Kind {
        match self {
            DynPoly::Rational(_) => Kind::Rational,
            DynPoly::Complex(_) => Kind::Complex,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            DynPoly::Rational(p) => p.degree(),
            DynPoly::Complex(p) => p.degree(),
        }
    }

    pub fn to_complex(&self) -> Poly<Complex64> {
        match self {
            DynPoly::Rational(p) => p.to_complex(),
            DynPoly::Complex(p) => p.clone(),
        }
    }

    /// Real parts as `f64`, or `None` when some coefficient has a nonzero imaginary part.
    pub fn to_real(&self) -> Option<Poly<f64>> {
        match self {
            DynPoly::Rational(p) => Some(p.to_f64()),
            DynPoly::Complex(p) => p.coeffs().iter().all(|c| c.im == 0.0).then(|| p.map(|c| c.re)),
        }
    }

    pub fn max_norm(&self) -> f64 {
        match self {
            DynPoly::Rational(p) => p.max_norm().to_f64().unwrap_or(f64::INFINITY),
            DynPoly::Complex(p) => p.max_norm(),
        }
    }

    pub fn add(&self, other: &DynPoly) -> Result<DynPoly, PolyError> {
        match (self, other) {
            (DynPoly::Rational(a), DynPoly::Rational(b)) => Ok(DynPoly::Rational(a.add(b))),
            (DynPoly::Complex(a), DynPoly::Complex(b)) => Ok(DynPoly::Complex(a.add(b))),
            _ => Err(PolyError::KindMismatch(self.kind(), other.kind())),
        }
    }

    pub fn mul(&self, other: &DynPoly) -> Result<DynPoly, PolyError> {
        match (self, other) {
            (DynPoly::Rational(a), DynPoly::Rational(b)) => Ok(DynPoly::Rational(a.mul(b))),
            (DynPoly::Complex(a), DynPoly::Complex(b)) => Ok(DynPoly::Complex(a.mul(b))),
            _ => Err(PolyError::KindMismatch(self.kind(), other.kind())),
        }
    }

    pub fn norm_claim_check(&self, other: &DynPoly) -> Result<NormClaim, PolyError> {
        match (self, other) {
            (DynPoly::Rational(a), DynPoly::Rational(b)) => Ok(norm_claim_check(a, b)),
            (DynPoly::Complex(a), DynPoly::Complex(b)) => Ok(norm_claim_check(a, b)),
            _ => Err(PolyError::KindMismatch(self.kind(), other.kind())),
        }
    }

    /// Coefficients as display strings, low to high.
    pub fn coeff_strings(&self) -> Vec<String> {
        match self {
            DynPoly::Rational(p) => p.coeffs().iter().map(|c| c.to_string()).collect(),
            DynPoly::Complex(p) => p
                .coeffs()
                .iter()
                .map(|c| if c.im == 0.0 { format!("{}", c.re) } else { format!("{}", c) })
                .collect(),
        }
    }
}

/// A root value: real in real mode, complex otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootValue {
    Real(f64),
    Complex(Complex64),
}

impl RootValue {
    pub fn to_complex(self) -> Complex64 {
        match self {
            RootValue::Real(x) => Complex64::new(x, 0.0),
            RootValue::Complex(z) => z,
        }
    }
}

impl Serialize for RootValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RootValue::Real(x) => s.serialize_f64(*x),
            RootValue::Complex(z) => [z.re, z.im].serialize(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Root {
    pub value: RootValue,
    pub mult: usize,
    /// `|p(value)|` by Horner.
    pub residual: f64,
}

/// Distinct roots with multiplicities; `tau` is the number of distinct roots.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
}

impl RootSet {
    pub fn tau(&self) -> usize {
        self.roots.len()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.mult).sum()
    }
}

/// Roots closer than this, relative to `max(1, |r|)`, are one root.
pub const CLUSTER_RADIUS: f64 = 1e-6;

pub fn same_root(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < CLUSTER_RADIUS * a.norm().max(b.norm()).max(1.0)
}
