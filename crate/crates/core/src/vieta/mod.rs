//! Root finding by factorization shape.
//!
//! Each [`MultiplicityPattern`] fixes how the polynomial might factor. The
//! matching coefficient system is solved numerically; patterns are tried in
//! a fixed order and the first solved one supplies the roots. In real mode
//! every answer is cross-checked against [`oracle_real_roots`].

mod newton;
mod oracle;
mod pattern;
mod system;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{DynPoly, Poly, RootSet};

pub use newton::{generate_starts, solve_case, solve_case_seeded, CaseOutcome, CaseStatus, SolveConfig, SolveTrace};
pub use oracle::{gcd, oracle_real_roots, square_free, ORACLE_WIDTH};
pub use pattern::{enumerate_patterns, ordered_patterns, partitions, CaseOrder, Mode, MultiplicityPattern};
pub use system::{modulus, Field, VietaSystem};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VietaError {
    #[error("pattern has total multiplicity {pattern} but the polynomial has degree {degree}")]
    DegreeMismatch { pattern: usize, degree: usize },
    #[error("polynomial must have degree at least 1")]
    DegreeTooLow,
    #[error("real mode needs real coefficients")]
    NotReal,
    #[error("no factorization pattern was solved")]
    NoPatternSolved {
        outcomes: Vec<CaseOutcome>,
        /// Only the cofactor-only shape fits: there are no real roots.
        no_real_roots: bool,
    },
}

/// Two root values agree within `1e-6`, absolute or relative.
pub const AGREEMENT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FindResult {
    #[serde(flatten)]
    pub roots: RootSet,
    pub tau: usize,
    /// The solved pattern.
    pub case: MultiplicityPattern,
    pub outcomes: Vec<CaseOutcome>,
    /// Oracle roots used for cross-validation (real mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<RootSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FindOptions {
    pub config: SolveConfig,
    /// Defaults to [`CaseOrder::default_for`] the mode.
    pub order: Option<CaseOrder>,
}

/// Tries each pattern in order and returns the first solved one.
pub fn find_roots(p: &DynPoly, mode: Mode, opts: &FindOptions) -> Result<FindResult, VietaError> {
    match mode {
        Mode::Real => {
            let real = p.to_real().ok_or(VietaError::NotReal)?;
            find_real(&real, opts)
        }
        Mode::Complex => find_generic(&p.to_complex(), Mode::Complex, opts, None),
    }
}

/// Real-mode search on `f64` coefficients.
pub fn find_real(p: &Poly<f64>, opts: &FindOptions) -> Result<FindResult, VietaError> {
    let oracle = oracle_real_roots(p);
    find_generic(p, Mode::Real, opts, Some(oracle))
}

/// Complex-mode search.
pub fn find_complex(p: &Poly<Complex64>, opts: &FindOptions) -> Result<FindResult, VietaError> {
    find_generic(p, Mode::Complex, opts, None)
}

fn find_generic<S: Field>(
    p: &Poly<S>,
    mode: Mode,
    opts: &FindOptions,
    oracle: Option<RootSet>,
) -> Result<FindResult, VietaError> {
    let d = p.degree().filter(|&d| d >= 1).ok_or(VietaError::DegreeTooLow)?;
    let order = opts.order.unwrap_or(CaseOrder::default_for(mode));
    let patterns = ordered_patterns(d, mode, order);
    let mut outcomes: Vec<CaseOutcome> = Vec::new();
    let mut tried: Vec<MultiplicityPattern> = Vec::new();
    let mut queue: std::collections::VecDeque<(MultiplicityPattern, Vec<Vec<S>>)> =
        patterns.into_iter().map(|pt| (pt, Vec::new())).collect();

    while let Some((pattern, seeds)) = queue.pop_front() {
        if tried.contains(&pattern) {
            continue;
        }
        tried.push(pattern.clone());
        let sys = VietaSystem::build(pattern.clone(), p)?;
        let mut outcome = solve_case_seeded(&sys, mode, &opts.config, &seeds);

        if let CaseStatus::Solved { roots, .. } = &outcome.status {
            if pattern.k() == 0 {
                outcomes.push(outcome);
                return Err(VietaError::NoPatternSolved { outcomes, no_real_roots: true });
            }
            let found = RootSet { roots: roots.clone() };
            if let Some(reason) = oracle.as_ref().and_then(|o| disagreement(&found, o)) {
                let best_residual = match outcome.status {
                    CaseStatus::Solved { residual, .. } => residual,
                    _ => unreachable!(),
                };
                outcome.status = CaseStatus::NoConvergence { reason, best_residual };
                outcomes.push(outcome);
                continue;
            }
            outcomes.push(outcome);
            return Ok(FindResult { tau: found.tau(), roots: found, case: pattern, outcomes, oracle });
        }

        // Collapsed roots: try the merged shape next, seeded from the generic starts.
        if let Some(merged) = outcome.merged_into.clone() {
            if !tried.contains(&merged) {
                let msys = VietaSystem::build(merged.clone(), p)?;
                let seeds = generate_starts(&msys, mode, 4);
                queue.push_front((merged, seeds));
            }
        }
        outcomes.push(outcome);
    }
    Err(VietaError::NoPatternSolved { outcomes, no_real_roots: false })
}

/// `None` when both sets have the same roots and multiplicities.
fn disagreement(found: &RootSet, oracle: &RootSet) -> Option<String> {
    if found.tau() != oracle.tau() {
        return Some(format!("found {} distinct roots, oracle has {}", found.tau(), oracle.tau()));
    }
    for (a, b) in found.roots.iter().zip(&oracle.roots) {
        let (x, y) = (a.value.to_complex().re, b.value.to_complex().re);
        if (x - y).abs() > AGREEMENT * y.abs().max(1.0) || a.mult != b.mult {
            return Some(format!("root {x} (mult {}) disagrees with oracle {y} (mult {})", a.mult, b.mult));
        }
    }
    None
}
