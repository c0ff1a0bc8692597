//! Decision accounting for move application, verification and exhaustive search.
//!
//! A *decision* is one case-arm evaluation in the interpreter below. The
//! interpreter follows the case structure of the move definitions:
//!
//! * `phi`: one guard locating the blank, then the boundary arms tried in
//!   `U, D, R, L` order until the arm for the requested move is reached. An
//!   off-grid move stops here and leaves the grid unchanged.
//! * `sigma`: one decision to enter the swap, then `rho` picks the neighbour
//!   (one arm per candidate direction) and `tau` rewrites the two cells.
//! * `tau`: one check that the source cell is the blank, plus the `lambda`
//!   arms producing the neighbour coordinates.
//! * `compare`: one decision per cell until the first mismatch, plus one
//!   final decision producing the verdict.
//!
//! Every decision is charged to exactly one primitive, so
//! `decisions == rho + tau + lambda + sigma + phi + compare`.

use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;

use crate::bignum::serialize_big;
use crate::grid::{Move, MoveSeq, TileGrid};
use crate::search::{self, Executor, SearchError, SearchLimits, SearchResult};

/// Per-call ceilings (inclusive of nested primitives).
pub const RHO_MAX: u64 = 4;
pub const TAU_MAX: u64 = 17;
pub const SIGMA_MAX: u64 = 1 + RHO_MAX + TAU_MAX;
pub const PHI_MAX: u64 = 5 + SIGMA_MAX;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PerPrimitive {
    pub rho: u64,
    pub tau: u64,
    pub lambda: u64,
    pub sigma: u64,
    pub phi: u64,
    pub compare: u64,
}

impl PerPrimitive {
    pub fn total(&self) -> u64 {
        self.rho + self.tau + self.lambda + self.sigma + self.phi + self.compare
    }
}

impl AddAssign for PerPrimitive {
    fn add_assign(&mut self, o: Self) {
        self.rho += o.rho;
        self.tau += o.tau;
        self.lambda += o.lambda;
        self.sigma += o.sigma;
        self.phi += o.phi;
        self.compare += o.compare;
    }
}

/// Decision counter for one execution.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CostLedger {
    decisions: u64,
    per_primitive: PerPrimitive,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn decisions(&self) -> u64 {
        self.decisions
    }

    pub fn per_primitive(&self) -> &PerPrimitive {
        &self.per_primitive
    }

    fn charge(&mut self, tally: PerPrimitive) {
        self.decisions += tally.total();
        self.per_primitive += tally;
    }
}

/// Inclusive per-call tallies for one instrumented move.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MoveTally {
    pub rho: u64,
    pub tau: u64,
    pub sigma: u64,
    pub phi: u64,
    pub legal: bool,
}

/// Total-mode move application under accounting.
pub fn instrumented_apply(grid: &TileGrid, m: Move, ledger: &mut CostLedger) -> TileGrid {
    let mut g = grid.clone();
    instrumented_step(&mut g, m, ledger);
    g
}

/// In-place variant of [`instrumented_apply`], returning the per-call tallies.
pub fn instrumented_step(g: &mut TileGrid, m: Move, ledger: &mut CostLedger) -> MoveTally {
    let mut own = PerPrimitive::default();
    let n = g.n();
    let (row, col) = g.blank_pos();

    // phi: locate the blank, then walk the boundary arms.
    own.phi += 1;
    let mut blocked = false;
    for arm in Move::ALL {
        own.phi += 1;
        if arm == m {
            blocked = match arm {
                Move::Up => row == 1,
                Move::Down => row == n,
                Move::Right => col == n,
                Move::Left => col == 1,
            };
            break;
        }
    }
    if blocked {
        ledger.charge(own);
        let tally = MoveTally { phi: own.phi, ..Default::default() };
        debug_assert!(tally.phi <= 5);
        return tally;
    }

    // sigma: enter the swap.
    own.sigma += 1;
    // rho: select the neighbour arm.
    own.rho += m.index() as u64;
    // tau: confirm the source is the blank, then lambda computes the target.
    own.tau += 1;
    own.lambda += m.index() as u64;
    let target = g.target(m).expect("boundary arms admitted an off-grid move");
    g.swap_blank(target);

    ledger.charge(own);
    let tau = own.tau + own.lambda;
    let sigma = own.sigma + own.rho + tau;
    let tally = MoveTally { rho: own.rho, tau, sigma, phi: own.phi + sigma, legal: true };
    assert!(tally.rho <= RHO_MAX && tally.tau <= TAU_MAX && tally.sigma <= SIGMA_MAX && tally.phi <= PHI_MAX);
    tally
}

/// Cell-wise equality with early exit, under accounting.
pub fn instrumented_compare(a: &TileGrid, b: &TileGrid, ledger: &mut CostLedger) -> bool {
    let mut own = PerPrimitive::default();
    let mut equal = a.n() == b.n();
    if equal {
        for (x, y) in a.cells().iter().zip(b.cells()) {
            own.compare += 1;
            if x != y {
                equal = false;
                break;
            }
        }
    }
    own.compare += 1;
    ledger.charge(own);
    equal
}

/// Applies `seq` in total mode and compares against the goal.
pub fn instrumented_verify(grid: &TileGrid, seq: &MoveSeq, ledger: &mut CostLedger) -> bool {
    let mut g = grid.clone();
    for m in seq.iter() {
        instrumented_step(&mut g, m, ledger);
    }
    instrumented_compare(&g, &TileGrid::goal(grid.n()), ledger)
}

/// Executor charging every move and comparison to a ledger, plus one
/// decision per candidate sequence.
pub struct Instrumented<'a> {
    pub ledger: &'a mut CostLedger,
}

impl Executor for Instrumented<'_> {
    fn candidate(&mut self) {
        self.ledger.charge(PerPrimitive { compare: 1, ..Default::default() });
    }

    fn step(&mut self, g: &TileGrid, m: Move) -> TileGrid {
        instrumented_apply(g, m, self.ledger)
    }

    fn equals(&mut self, a: &TileGrid, b: &TileGrid) -> bool {
        instrumented_compare(a, b, self.ledger)
    }
}

/// [`search::exhaust_sequences`] under accounting.
pub fn instrumented_exhaust(
    grid: &TileGrid,
    k_max: usize,
    limits: &SearchLimits,
    ledger: &mut CostLedger,
) -> Result<SearchResult, SearchError> {
    search::exhaust_with(grid, k_max, limits, &mut Instrumented { ledger })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BudgetKind {
    Verify,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub kind: BudgetKind,
    pub n: u64,
    pub k: u64,
    #[serde(serialize_with = "serialize_big")]
    pub ceiling: BigUint,
}

impl Budget {
    pub fn admits(&self, decisions: u64) -> bool {
        BigUint::from(decisions) <= self.ceiling
    }
}

/// Verify: `n² + 27k + 1`. Search: `4ᵏ(n² + 2) + 27k`.
pub fn budget(kind: BudgetKind, n: u64, k: u64) -> Budget {
    let n2 = BigUint::from(n) * n;
    let linear = BigUint::from(27u32) * k;
    let ceiling = match kind {
        BudgetKind::Verify => n2 + linear + 1u32,
        BudgetKind::Search => Pow::pow(BigUint::from(4u32), k) * (n2 + 2u32) + linear,
    };
    Budget { kind, n, k, ceiling }
}

/// Number of non-whitespace characters (Unicode whitespace).
pub fn length(s: &str) -> usize {
    s.chars().filter(|c| !c.is_whitespace()).count()
}

/// `decisions ≤ (program_length² + 1)^(n² + 27k + 1)`.
pub fn polytime_witness(decisions: u64, program_length: u64, n: u64, k: u64) -> bool {
    assert!(program_length >= 1, "program length must be at least 1");
    let base = BigUint::from(program_length) * program_length + 1u32;
    let exponent = budget(BudgetKind::Verify, n, k).ceiling;
    // base ≥ 2, so any exponent ≥ 64 already exceeds u64::MAX.
    match exponent.to_u32() {
        Some(e) if e < 64 => BigUint::from(decisions) <= Pow::pow(base, e),
        _ => true,
    }
}

/// `(program_length² + 1)^e` for small exponents; used to construct boundary cases.
pub fn witness_bound(program_length: u64, exponent: u32) -> BigUint {
    Pow::pow(BigUint::from(program_length) * program_length + 1u32, exponent)
}
