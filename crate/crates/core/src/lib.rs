//! Sliding-tile puzzles, decision-counting instrumentation and polynomial
//! root finding by factorization shape.
//!
//! The puzzle side covers grids and moves ([`grid`]), exhaustive search and
//! optimal solvers ([`search`]), solution checking and bound formulas
//! ([`verify`]) and an instrumented executor that counts branch decisions
//! ([`cost`]). The polynomial side covers arithmetic and parsing ([`poly`])
//! and the shape-by-shape root finder with its Sturm oracle ([`vieta`]).

pub mod bignum;
pub mod cost;
pub mod grid;
pub mod poly;
pub mod search;
pub mod tensor;
pub mod verify;
pub mod vieta;

pub use cost::{budget, length, polytime_witness, Budget, BudgetKind, CostLedger, PerPrimitive};
pub use grid::{grids_equal, ApplyMode, GridError, Move, MoveSeq, TileGrid};
pub use poly::{DynPoly, Kind, NormClaim, Poly, PolyError, Root, RootSet, RootValue};
pub use search::{
    enumerate_reachable, exhaust_sequences, is_solvable, solve_optimal, Algorithm, ReachabilityTable, SearchError,
    SearchLimits, SearchResult,
};
pub use verify::{claim_report, verify_solution, BoundReport, Verdict, VerifyError};
pub use vieta::{find_roots, CaseOrder, FindOptions, FindResult, Mode, MultiplicityPattern, SolveConfig, VietaError};
