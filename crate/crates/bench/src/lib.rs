//! Shared fixtures for the benchmarks.

use tilelab_core::poly::parse_coeff_list;
use tilelab_core::{DynPoly, MoveSeq, TileGrid};

/// A 4x4 grid five moves from the goal.
pub fn sample_grid() -> TileGrid {
    TileGrid::from_rows(&[[1, 0, 2, 4], [5, 6, 3, 8], [9, 10, 7, 11], [13, 14, 15, 12]]).unwrap()
}

pub fn sample_solution() -> MoveSeq {
    "RDDRD".parse().unwrap()
}

/// A 3x3 grid at the maximum depth, 31 moves.
pub fn deep_grid3() -> TileGrid {
    TileGrid::from_rows(&[[8, 6, 7], [2, 5, 4], [3, 0, 1]]).unwrap()
}

/// `2x^3 - pi^2 x + pi/2`, three simple real roots.
pub fn pi_cubic() -> DynPoly {
    parse_coeff_list("pi/2, -pi^2, 0, 2").unwrap()
}

/// `(x - 1)^3`.
pub fn triple_root() -> DynPoly {
    parse_coeff_list("-1, 3, -3, 1").unwrap()
}
