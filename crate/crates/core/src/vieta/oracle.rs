//! Independent real-root finder: exact Sturm sequences plus bisection.
//!
//! Floating coefficients are converted to exact rationals, the polynomial is
//! split into square-free factors (Yun), and each factor's real roots are
//! isolated and refined by exact sign evaluation. Nothing here shares code
//! with the Newton solver.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{Poly, Root, RootSet, RootValue};

/// Final bracket width for every root.
pub const ORACLE_WIDTH: f64 = 1e-12;

/// All real roots of `p`, ascending, with multiplicities.
///
/// The zero polynomial and nonzero constants have no roots.
pub fn oracle_real_roots(p: &Poly<f64>) -> RootSet {
    let exact: Poly<BigRational> =
        p.map(|&c| BigRational::from_float(c).expect("coefficients must be finite"));
    let mut found: Vec<(BigRational, BigRational, usize)> = Vec::new();
    if exact.degree().unwrap_or(0) == 0 {
        return RootSet::default();
    }
    for (mult, factor) in square_free(&exact) {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (lo, hi) in isolate(&factor) {
            found.push((lo, hi, mult));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let roots = found
        .into_iter()
        .map(|(lo, hi, mult)| {
            let x = ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN);
            Root { value: RootValue::Real(x), mult, residual: p.eval(&x).abs() }
        })
        .collect();
    RootSet { roots }
}

/// Yun's square-free decomposition: pairs `(i, aᵢ)` with `p = c·∏ aᵢ^i`.
pub fn square_free(p: &Poly<BigRational>) -> Vec<(usize, Poly<BigRational>)> {
    let dp = p.derivative();
    let a0 = gcd(p, &dp);
    let mut b = exact_div(p, &a0);
    let mut c = exact_div(&dp, &a0);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        b = exact_div(&b, &a);
        c = exact_div(&d, &a);
        d = c.sub(&b.derivative());
        out.push((i, a));
        i += 1;
    }
    out
}

fn exact_div(p: &Poly<BigRational>, q: &Poly<BigRational>) -> Poly<BigRational> {
    let (quot, rem) = p.div_rem(q).expect("nonzero divisor");
    debug_assert!(rem.is_zero());
    quot
}

/// Monic greatest common divisor.
pub fn gcd(a: &Poly<BigRational>, b: &Poly<BigRational>) -> Poly<BigRational> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b).expect("nonzero divisor").1;
        a = b;
        b = r;
    }
    match a.leading().cloned() {
        Some(lc) => a.scale(&(BigRational::one() / lc)),
        None => a,
    }
}

/// Sturm chain `p, p', −rem(…)…`, each member scaled by `1/|lc|`.
fn sturm_chain(p: &Poly<BigRational>) -> Vec<Poly<BigRational>> {
    let normalize = |q: Poly<BigRational>| match q.leading() {
        Some(lc) => {
            let s = BigRational::one() / lc.abs();
            q.scale(&s)
        }
        None => q,
    };
    let mut chain = vec![normalize(p.clone()), normalize(p.derivative())];
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero divisor").1;
        if r.is_zero() {
            break;
        }
        chain.push(normalize(r.neg()));
    }
    chain
}

fn variations(chain: &[Poly<BigRational>], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for q in chain {
        let v = q.eval(x);
        let s = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Brackets `(lo, hi]` each holding exactly one root of the square-free `p`,
/// refined to [`ORACLE_WIDTH`].
fn isolate(p: &Poly<BigRational>) -> Vec<(BigRational, BigRational)> {
    let chain = sturm_chain(p);
    let lc = p.leading().unwrap().abs();
    let bound = p.coeffs().iter().map(|c| c.abs() / &lc).fold(BigRational::zero(), |m, c| if c > m { c } else { m })
        + BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut stack = vec![(-bound.clone(), bound)];
    let mut out = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let count = variations(&chain, &lo) - variations(&chain, &hi);
        match count {
            0 => {}
            1 => out.push(refine(p, lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out
}

/// Bisection on a bracket `(lo, hi]` holding one simple root.
fn refine(p: &Poly<BigRational>, mut lo: BigRational, mut hi: BigRational) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    let width = BigRational::from_float(ORACLE_WIDTH).unwrap();
    if p.eval(&hi).is_zero() {
        return (hi.clone(), hi);
    }
    let hi_positive = p.eval(&hi).is_positive();
    while &hi - &lo > width {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return (mid.clone(), mid);
        }
        if v.is_positive() == hi_positive {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn values(s: &RootSet) -> Vec<f64> {
        s.roots.iter().map(|r| r.value.to_complex().re).collect()
    }

    #[test]
    fn pi_cubic_roots() {
        let p = Poly::from_f64(&[PI / 2.0, -PI * PI, 0.0, 2.0]);
        assert!(p.eval(&0.0) > 0.0 && p.eval(&1.0) < 0.0 && p.eval(&-PI) < 0.0 && p.eval(&PI) > 0.0);
        let s = oracle_real_roots(&p);
        let v = values(&s);
        // mpmath, 30 digits.
        let want = [-2.2971089299031724, 0.15998472858292410, 2.1371242013202483];
        assert_eq!(v.len(), 3);
        for (a, b) in v.iter().zip(want) {
            assert!((a - b).abs() < 1e-11, "{a} vs {b}");
        }
        assert!(s.roots.iter().all(|r| r.mult == 1 && r.residual < 1e-9));
    }

    #[test]
    fn sqrt_two() {
        let s = oracle_real_roots(&Poly::from_f64(&[-2.0, 0.0, 1.0]));
        let v = values(&s);
        assert!((v[0] + 2f64.sqrt()).abs() < 1e-12 && (v[1] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn no_real_roots() {
        assert_eq!(oracle_real_roots(&Poly::from_f64(&[1.0, 0.0, 1.0])).tau(), 0);
        assert_eq!(oracle_real_roots(&Poly::from_f64(&[3.0])).tau(), 0);
    }

    #[test]
    fn multiplicities() {
        // (x − 1)²(x − 2)
        let s = oracle_real_roots(&Poly::from_f64(&[-2.0, 5.0, -4.0, 1.0]));
        assert_eq!(s.roots.iter().map(|r| r.mult).collect::<Vec<_>>(), [2, 1]);
        let v = values(&s);
        assert!((v[0] - 1.0).abs() < 1e-12 && (v[1] - 2.0).abs() < 1e-12, "{v:?}");
        // x³(x + 1)²
        let s = oracle_real_roots(&Poly::from_f64(&[0.0, 0.0, 0.0, 1.0, 2.0, 1.0]));
        assert_eq!(s.roots.iter().map(|r| r.mult).collect::<Vec<_>>(), [2, 3]);
        let v = values(&s);
        assert!((v[0] + 1.0).abs() < 1e-12 && v[1].abs() < 1e-12, "{v:?}");
    }

    #[test]
    fn square_free_parts() {
        let p = Poly::from_ints(&[-2, 5, -4, 1]);
        let parts = square_free(&p);
        assert_eq!(parts[0], (1, Poly::from_ints(&[-2, 1])));
        assert_eq!(parts[1], (2, Poly::from_ints(&[-1, 1])));
    }
}
