//! Coefficient equations for one factorization shape.
//!
//! For a pattern `(m₁..m_k)` with cofactor degree `q` the model is
//!
//! ```text
//! c · (x − r₁)^m₁ ⋯ (x − r_k)^m_k · ι(x),   ι(x) = x^q + ι_{q−1}x^{q−1} + … + ι₀
//! ```
//!
//! expanded by repeated convolution. The scalar `c` is fixed to the target's
//! leading coefficient, so the unknowns are `u = (r₁..r_k, ι₀..ι_{q−1})` and
//! the equations are the `d` lower coefficients.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;

use super::pattern::MultiplicityPattern;
use super::VietaError;
use crate::poly::{Coefficient, Poly};

/// Scalars the solver runs over: `f64` (real mode) and `Complex64`.
pub trait Field: ComplexField<RealField = f64> + Coefficient + Copy {
    fn to_c64(self) -> Complex64;
    fn from_c64(z: Complex64) -> Self;
}

impl Field for f64 {
    fn to_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }

    fn from_c64(z: Complex64) -> Self {
        z.re
    }
}

impl Field for Complex64 {
    fn to_c64(self) -> Complex64 {
        self
    }

    fn from_c64(z: Complex64) -> Self {
        z
    }
}

/// `|z|` without the method-name clash between the two scalar traits.
pub fn modulus<S: Field>(z: S) -> f64 {
    ComplexField::modulus(z)
}

#[derive(Debug, Clone)]
pub struct VietaSystem<S> {
    pattern: MultiplicityPattern,
    target: Vec<S>,
}

impl<S: Field> VietaSystem<S> {
    pub fn build(pattern: MultiplicityPattern, target: &Poly<S>) -> Result<Self, VietaError> {
        let degree = target.degree().unwrap_or(0);
        if target.is_zero() || pattern.total() != degree {
            return Err(VietaError::DegreeMismatch { pattern: pattern.total(), degree });
        }
        Ok(VietaSystem { pattern, target: target.coeffs().to_vec() })
    }

    pub fn pattern(&self) -> &MultiplicityPattern {
        &self.pattern
    }

    pub fn degree(&self) -> usize {
        self.target.len() - 1
    }

    pub fn target(&self) -> &[S] {
        &self.target
    }

    /// The leading scalar `c`, forced equal to `a_d`.
    pub fn leading(&self) -> S {
        self.target[self.degree()]
    }

    pub fn n_unknowns(&self) -> usize {
        self.pattern.k() + self.pattern.cofactor_degree()
    }

    /// Splits `u` into roots and cofactor coefficients.
    pub fn split<'a>(&self, u: &'a [S]) -> (&'a [S], &'a [S]) {
        u.split_at(self.pattern.k())
    }

    /// Coefficients `f₀..f_d` of `c · ∏(x − rᵢ)^mᵢ · ι(x)`.
    pub fn coeff_fns(&self, roots: &[S], c: S, cofactor: &[S]) -> Vec<S> {
        let mut acc = monic(cofactor);
        for (&r, &m) in roots.iter().zip(self.pattern.mults()) {
            for _ in 0..m {
                acc = times_linear(&acc, r);
            }
        }
        acc.iter().map(|&a| a * c).collect()
    }

    /// `f(u) − a` over the `d` lower coefficients.
    pub fn residual(&self, u: &[S]) -> DVector<S> {
        let (roots, cofactor) = self.split(u);
        let f = self.coeff_fns(roots, self.leading(), cofactor);
        DVector::from_iterator(self.degree(), (0..self.degree()).map(|i| f[i] - self.target[i]))
    }

    /// Analytic Jacobian of [`residual`](Self::residual), `d × (k + q)`.
    ///
    /// `∂/∂rᵢ = −mᵢ·c·(x − rᵢ)^(mᵢ−1)·∏_{j≠i}(x − r_j)^m_j·ι` and
    /// `∂/∂ι_j = c·∏(x − rᵢ)^mᵢ·x^j`.
    pub fn jacobian(&self, u: &[S]) -> DMatrix<S> {
        let d = self.degree();
        let (roots, cofactor) = self.split(u);
        let c = self.leading();
        let mut jac = DMatrix::zeros(d, u.len());
        for (i, &m) in self.pattern.mults().iter().enumerate() {
            let mut col = monic(cofactor);
            for (j, (&r, &mj)) in roots.iter().zip(self.pattern.mults()).enumerate() {
                let reps = if i == j { mj - 1 } else { mj };
                for _ in 0..reps {
                    col = times_linear(&col, r);
                }
            }
            let scale = -c * S::from_real(m as f64);
            for (row, &v) in col.iter().enumerate().take(d) {
                jac[(row, i)] = v * scale;
            }
        }
        let mut base = vec![S::one()];
        for (&r, &m) in roots.iter().zip(self.pattern.mults()) {
            for _ in 0..m {
                base = times_linear(&base, r);
            }
        }
        let k = roots.len();
        for j in 0..cofactor.len() {
            for (row, &v) in base.iter().enumerate() {
                if row + j < d {
                    jac[(row + j, k + j)] = v * c;
                }
            }
        }
        jac
    }

    /// Forward-difference Jacobian, for cross-checking [`jacobian`](Self::jacobian).
    pub fn jacobian_fd(&self, u: &[S], rel_step: f64) -> DMatrix<S> {
        let base = self.residual(u);
        let mut jac = DMatrix::zeros(self.degree(), u.len());
        let mut probe = u.to_vec();
        for j in 0..u.len() {
            let h = rel_step * modulus(u[j]).max(1.0);
            probe[j] = u[j] + S::from_real(h);
            let shifted = self.residual(&probe);
            probe[j] = u[j];
            for i in 0..base.len() {
                jac[(i, j)] = (shifted[i] - base[i]) / S::from_real(h);
            }
        }
        jac
    }
}

/// `x^q + cofactor[q−1]x^{q−1} + … + cofactor[0]`, low to high.
fn monic<S: Field>(cofactor: &[S]) -> Vec<S> {
    let mut v = cofactor.to_vec();
    v.push(S::one());
    v
}

/// Multiplies by `(x − r)`.
fn times_linear<S: Field>(p: &[S], r: S) -> Vec<S> {
    let mut out = vec![S::zero(); p.len() + 1];
    for (i, &a) in p.iter().enumerate() {
        out[i + 1] += a;
        out[i] -= a * r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn pat(m: &[usize], q: usize) -> MultiplicityPattern {
        MultiplicityPattern::new(m.to_vec(), q).unwrap()
    }

    fn sys(m: &[usize], q: usize) -> VietaSystem<f64> {
        let d = m.iter().sum::<usize>() + q;
        let mut a = vec![1.0; d + 1];
        a[d] = 1.0;
        VietaSystem::build(pat(m, q), &Poly::from_f64(&a)).unwrap()
    }

    #[test]
    fn distinct_roots_expand() {
        assert_eq!(sys(&[1, 1, 1], 0).coeff_fns(&[1.0, 2.0, 3.0], 1.0, &[]), [-6.0, 11.0, -6.0, 1.0]);
    }

    #[test]
    fn triple_root_binomial() {
        let (c, r) = (2.0, 1.5);
        let want = [-c * r * r * r, 3.0 * c * r * r, -3.0 * c * r, c];
        assert_eq!(sys(&[3], 0).coeff_fns(&[r], c, &[]), want);
    }

    #[test]
    fn six_linear_factors_match_mul() {
        let s = sys(&[1; 6], 0);
        let roots: Vec<f64> = (1..=6).map(f64::from).collect();
        let expected = roots.iter().fold(Poly::from_f64(&[1.0]), |acc, &r| acc.mul(&Poly::linear_root(r)));
        assert_eq!(s.coeff_fns(&roots, 1.0, &[]), expected.coeffs());
    }

    #[test]
    fn cofactor_expansion() {
        // (x − 1)(x² + 1) = x³ − x² + x − 1
        assert_eq!(sys(&[1], 2).coeff_fns(&[1.0], 1.0, &[1.0, 0.0]), [-1.0, 1.0, -1.0, 1.0]);
    }

    #[test]
    fn degree_mismatch() {
        let p = Poly::from_f64(&[1.0, 0.0, 1.0]);
        assert!(matches!(VietaSystem::build(pat(&[3], 0), &p), Err(VietaError::DegreeMismatch { .. })));
    }

    #[test]
    fn jacobian_matches_differences_complex() {
        let p: Poly<Complex64> = Poly::from_ints(&[3, -1, 4, 1, -5, 2]).to_complex();
        let s = VietaSystem::build(pat(&[2, 1], 2), &p).unwrap();
        let u: Vec<Complex64> =
            [0.3, -1.2, 0.7, 2.0].iter().map(|&x| Complex64::new(x, 0.1 * x)).collect();
        let a = s.jacobian(&u);
        let f = s.jacobian_fd(&u, 1e-7);
        assert!((a - f).norm() < 1e-4);
    }

    #[test]
    fn exact_kind_agrees_with_poly_mul() {
        let roots = [-2i64, 1, 3];
        let q = |v: i64| BigRational::from_integer(v.into());
        let via_mul = Poly::linear_root(q(roots[0]))
            .pow(2)
            .mul(&Poly::linear_root(q(roots[1])))
            .mul(&Poly::linear_root(q(roots[2])));
        let f: Vec<f64> = sys(&[2, 1, 1], 0).coeff_fns(&roots.map(|r| r as f64), 1.0, &[]);
        assert_eq!(Poly::from_f64(&f), via_mul.to_f64());
    }
}
