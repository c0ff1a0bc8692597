//! Solution verification and the bound-formula claim checks.
//!
//! The bound evaluators compute each formula exactly as printed. They are
//! compared against BFS ground truth by [`claim_report`]; a failing verdict
//! is data, not an error.

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::bignum::{factorial, log2_fixed, serialize_big};
use crate::cost::{instrumented_verify, CostLedger};
use crate::grid::{grids_equal, MoveSeq, TileGrid};
use crate::search::{enumerate_reachable, SearchError, SearchLimits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{bound} is defined for n >= {min}, got n = {n}")]
    Domain { bound: &'static str, min: u64, n: u64 },
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Total-mode application of `seq` followed by a component-wise comparison with the goal.
pub fn verify_solution(grid: &TileGrid, seq: &MoveSeq) -> bool {
    verify_with_ledger(grid, seq).0
}

/// [`verify_solution`] returning the ledger it ran with.
pub fn verify_with_ledger(grid: &TileGrid, seq: &MoveSeq) -> (bool, CostLedger) {
    let mut ledger = CostLedger::new();
    let ok = instrumented_verify(grid, seq, &mut ledger);
    (ok, ledger)
}

/// Uninstrumented reference used by the tests.
pub fn verify_plain(grid: &TileGrid, seq: &MoveSeq) -> bool {
    grids_equal(&grid.apply_seq_total(seq), &TileGrid::goal(grid.n()))
}

const LOG_BITS: u32 = 64;

fn need(bound: &'static str, min: u64, n: u64) -> Result<(), VerifyError> {
    if n < min {
        Err(VerifyError::Domain { bound, min, n })
    } else {
        Ok(())
    }
}

/// `log₄((n²)!)`.
pub fn bound_thm2(n: u64) -> Result<f64, VerifyError> {
    need("thm2", 2, n)?;
    Ok(log2_fixed(&factorial(n * n), LOG_BITS) / 2.0)
}

/// `⌊(log₄((n²)!) − 1) / 2⌋`, exactly: the largest `m` with `4^(2m+1) ≤ (n²)!`.
pub fn thm3_exponent(n: u64) -> Result<u64, VerifyError> {
    need("thm3", 2, n)?;
    let f = factorial(n * n);
    // log₄ f ≥ 1 for n ≥ 2, so the floor is non-negative.
    let log4_floor = (f.bits() - 1) / 2;
    let mut m = log4_floor.saturating_sub(1) / 2 + 1;
    while m > 0 && Pow::pow(BigUint::from(4u32), 2 * m + 1) > f {
        m -= 1;
    }
    Ok(m)
}

/// `4 · 3^m · 4^m + 4` with `m = ⌊(log₄((n²)!) − 1) / 2⌋`.
pub fn bound_thm3(n: u64) -> Result<BigUint, VerifyError> {
    let m = thm3_exponent(n)?;
    Ok(Pow::pow(BigUint::from(12u32), m) * 4u32 + 4u32)
}

/// `4(n² − n − 4)`, stated for `n ≥ 3`.
pub fn bound_thm4(n: u64) -> Result<u64, VerifyError> {
    need("thm4", 3, n)?;
    Ok(4 * (n * n - n - 4))
}

/// `4(n² − n − 2)`, stated for `n ≥ 3`.
pub fn bound_cor1(n: u64) -> Result<u64, VerifyError> {
    need("cor1", 3, n)?;
    Ok(4 * (n * n - n - 2))
}

/// `(n²)!`.
pub fn count_lemma1(n: u64) -> Result<BigUint, VerifyError> {
    need("lemma1", 2, n)?;
    Ok(factorial(n * n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Untested,
}

impl Verdict {
    fn of(ok: bool) -> Verdict {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub thm2: Verdict,
    pub thm3: Verdict,
    pub thm4: Verdict,
    pub cor1: Verdict,
    pub lemma1: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub thm2_bound: f64,
    #[serde(serialize_with = "serialize_big")]
    pub thm3_bound: BigUint,
    pub thm4_bound: Option<u64>,
    pub cor1_bound: Option<u64>,
    #[serde(serialize_with = "serialize_big")]
    pub lemma1_count: BigUint,
    /// Arrangements of `n²` distinct symbols found by brute force.
    pub lemma1_observed: u64,
    pub ground_truth_count: u64,
    pub ground_truth_diameter: u64,
    pub verdicts: Verdicts,
}

/// Evaluates every bound at `n ∈ {2, 3}` and compares it with BFS ground truth.
///
/// Diameter claims (thm2, cor1) are compared with the largest optimal move
/// count; count claims (thm3, thm4) with the number of solvable states.
pub fn claim_report(n: u64, limits: &SearchLimits) -> Result<BoundReport, VerifyError> {
    if !(2..=3).contains(&n) {
        return Err(VerifyError::Search(SearchError::UnsupportedSide(n as usize)));
    }
    let (table, lemma1_observed) =
        rayon::join(|| enumerate_reachable(n as usize, None, limits), || count_arrangements(n as usize));
    let table = table?;
    let count = table.count() as u64;
    let diameter = table.diameter() as u64;

    let thm2_bound = bound_thm2(n)?;
    let thm3_bound = bound_thm3(n)?;
    let thm4_bound = bound_thm4(n).ok();
    let cor1_bound = bound_cor1(n).ok();
    let lemma1_count = count_lemma1(n)?;

    let verdicts = Verdicts {
        thm2: Verdict::of(diameter as f64 <= thm2_bound),
        thm3: Verdict::of(BigUint::from(count) <= thm3_bound),
        thm4: thm4_bound.map_or(Verdict::Untested, |b| Verdict::of(count <= b)),
        cor1: cor1_bound.map_or(Verdict::Untested, |b| Verdict::of(diameter <= b)),
        lemma1: Verdict::of(lemma1_count.to_u64() == Some(lemma1_observed)),
    };
    Ok(BoundReport {
        n,
        thm2_bound,
        thm3_bound,
        thm4_bound,
        cor1_bound,
        lemma1_count,
        lemma1_observed,
        ground_truth_count: count,
        ground_truth_diameter: diameter,
        verdicts,
    })
}

/// Counts valid grids among all orderings of `{blank, 1, …, n²−1}` (Heap's algorithm).
fn count_arrangements(n: usize) -> u64 {
    let size = n * n;
    let mut symbols: Vec<Option<u16>> = std::iter::once(None).chain((1..size as u16).map(Some)).collect();
    let mut valid = u64::from(TileGrid::new(n, &symbols).is_ok());
    let mut c = vec![0usize; size];
    let mut i = 0;
    while i < size {
        if c[i] < i {
            let j = if i % 2 == 0 { 0 } else { c[i] };
            symbols.swap(j, i);
            valid += u64::from(TileGrid::new(n, &symbols).is_ok());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    valid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_grid() -> TileGrid {
        TileGrid::from_rows(&[[1, 0, 2, 4], [5, 6, 3, 8], [9, 10, 7, 11], [13, 14, 15, 12]]).unwrap()
    }

    #[test]
    fn verify_examples() {
        assert!(verify_solution(&sample_grid(), &"RDDRD".parse().unwrap()));
        assert!(verify_solution(&TileGrid::goal(4), &MoveSeq::new()));
        assert!(!verify_solution(&sample_grid(), &"RDDR".parse().unwrap()));
        let after = sample_grid().apply_seq_total(&"RDDR".parse().unwrap());
        assert_eq!(after.blank_pos(), (3, 4));
    }

    #[test]
    fn formula_values() {
        assert_eq!(bound_thm4(3).unwrap(), 8);
        assert_eq!(bound_cor1(3).unwrap(), 16);
        assert!(matches!(bound_thm4(2), Err(VerifyError::Domain { .. })));
        assert!(matches!(bound_cor1(2), Err(VerifyError::Domain { .. })));
        assert_eq!(count_lemma1(2).unwrap(), BigUint::from(24u32));
        // Oracle: mpmath, 50 digits.
        let cases = [(2, 2.2924812503605781), (3, 9.2345665099147956), (4, 22.125070234941311), (5, 41.840756804437586)];
        for (n, want) in cases {
            let got = bound_thm2(n).unwrap();
            assert!(((got - want) / want).abs() < 1e-12, "n={n}: {got}");
        }
        let floors: Vec<u64> = (2..=5).map(|n| thm3_exponent(n).unwrap()).collect();
        assert_eq!(floors, [0, 4, 10, 20]);
        assert_eq!(bound_thm3(2).unwrap(), BigUint::from(8u32));
        assert_eq!(bound_thm3(3).unwrap(), BigUint::from(82_948u32));
    }

    #[test]
    fn report_n2() {
        let r = claim_report(2, &SearchLimits::default()).unwrap();
        assert_eq!((r.ground_truth_count, r.ground_truth_diameter), (12, 6));
        assert_eq!(r.lemma1_observed, 24);
        assert_eq!(r.verdicts.thm2, Verdict::Fails);
        assert_eq!(r.verdicts.thm3, Verdict::Fails);
        assert_eq!(r.verdicts.thm4, Verdict::Untested);
        assert_eq!(r.verdicts.cor1, Verdict::Untested);
        assert_eq!(r.verdicts.lemma1, Verdict::Holds);
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["verdicts"]["thm2"], "fails");
        assert!(j["thm4_bound"].is_null());
    }
}
