//! Exact integer helpers shared by the bound and budget evaluators.

pub use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serializer;

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `log₂(x)` for `x ≥ 1`, exact to `frac_bits` binary places (truncated).
///
/// The integer part is the bit length; the fraction comes from repeatedly
/// squaring the normalized mantissa in fixed point.
pub fn log2_fixed(x: &BigUint, frac_bits: u32) -> f64 {
    assert!(!x.is_zero(), "log of zero");
    let int_part = x.bits() - 1;
    // Mantissa in [1, 2) with `prec` fractional bits.
    let prec = frac_bits as u64 + 64;
    let mut m = if int_part >= prec { x >> (int_part - prec) } else { x << (prec - int_part) };
    let two = BigUint::one() << (prec + 1);
    let mut frac = 0f64;
    let mut weight = 0.5f64;
    for _ in 0..frac_bits {
        m = (&m * &m) >> prec;
        if m >= two {
            m >>= 1;
            frac += weight;
        }
        weight /= 2.0;
    }
    int_part as f64 + frac
}

/// Serializes a big natural as a JSON number when it fits in `u64`, else as a decimal string.
pub fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(9), BigUint::from(362_880u32));
        assert_eq!(factorial(16).to_string(), "20922789888000");
    }

    #[test]
    fn log2_of_powers_and_factorials() {
        assert_eq!(log2_fixed(&BigUint::from(1u32), 64), 0.0);
        assert_eq!(log2_fixed(&(BigUint::one() << 100u32), 64), 100.0);
        let l = log2_fixed(&factorial(9), 64);
        assert!((l - 18.469133019829591).abs() < 1e-13, "{l}");
    }
}
