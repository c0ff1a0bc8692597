//! Order-2 and order-3 sliding puzzles.
//!
//! A [`TensorGrid`] stores `nᵈ` cells in row-major order (axis 1 slowest).
//! Each axis contributes two moves, so an order-`d` puzzle has `2d` move
//! labels. At `d = 2`, axis 1 is the row and axis 2 the column, which makes
//! `(1, -1)` the same move as [`Move::Up`](crate::grid::Move::Up).

use crate::grid::{GridError, Move, TileGrid};

/// Signed unit step along one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TensorMove {
    /// 1-based axis.
    pub axis: usize,
    pub dir: Direction,
}

impl From<Move> for TensorMove {
    fn from(m: Move) -> Self {
        let (axis, dir) = match m {
            Move::Up => (1, Direction::Minus),
            Move::Down => (1, Direction::Plus),
            Move::Right => (2, Direction::Plus),
            Move::Left => (2, Direction::Minus),
        };
        TensorMove { axis, dir }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorGrid {
    n: usize,
    d: usize,
    cells: Vec<u16>,
    blank: usize,
}

impl TensorGrid {
    /// Solved order-`d` puzzle: tiles `1..nᵈ-1` row-major, blank in the last cell.
    pub fn goal(n: usize, d: usize) -> Result<TensorGrid, GridError> {
        check_shape(n, d)?;
        let size = n.pow(d as u32);
        let cells = (1..size as u16).chain(std::iter::once(0)).collect();
        Ok(TensorGrid { n, d, cells, blank: size - 1 })
    }

    /// Builds a validated tensor puzzle; `0` marks the blank.
    pub fn new(n: usize, d: usize, cells: Vec<u16>) -> Result<TensorGrid, GridError> {
        check_shape(n, d)?;
        let size = n.pow(d as u32);
        if cells.len() != size {
            return Err(GridError::WrongLength { expected: size, got: cells.len() });
        }
        let mut seen = vec![false; size];
        let mut blank = None;
        for (i, &v) in cells.iter().enumerate() {
            if v == 0 {
                if blank.replace(i).is_some() {
                    return Err(GridError::MultipleBlanks);
                }
            } else if v as usize >= size {
                return Err(GridError::ValueOutOfRange(v as u64));
            } else if std::mem::replace(&mut seen[v as usize], true) {
                return Err(GridError::DuplicateTile(v));
            }
        }
        let blank = blank.ok_or(GridError::MissingBlank)?;
        Ok(TensorGrid { n, d, cells, blank })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    /// The `2d` move labels, axis-major with `Minus` before `Plus`.
    pub fn moves(&self) -> Vec<TensorMove> {
        (1..=self.d)
            .flat_map(|axis| [Direction::Minus, Direction::Plus].map(|dir| TensorMove { axis, dir }))
            .collect()
    }

    /// 1-based coordinates of the blank, axis 1 first.
    pub fn blank_pos(&self) -> Vec<usize> {
        let mut rest = self.blank;
        let mut pos = vec![0; self.d];
        for slot in pos.iter_mut().rev() {
            *slot = rest % self.n + 1;
            rest /= self.n;
        }
        pos
    }

    /// Moves the blank one step along `mv.axis`.
    pub fn apply(&self, mv: TensorMove) -> Result<TensorGrid, GridError> {
        assert!((1..=self.d).contains(&mv.axis), "axis {} outside 1..={}", mv.axis, self.d);
        let stride = self.n.pow((self.d - mv.axis) as u32);
        let coord = (self.blank / stride) % self.n;
        let target = match mv.dir {
            Direction::Minus if coord > 0 => self.blank - stride,
            Direction::Plus if coord + 1 < self.n => self.blank + stride,
            _ => return Err(GridError::IllegalMove { step: 1, mv: legacy_label(mv) }),
        };
        let mut cells = self.cells.clone();
        cells.swap(self.blank, target);
        Ok(TensorGrid { n: self.n, d: self.d, cells, blank: target })
    }
}

impl From<&TileGrid> for TensorGrid {
    fn from(g: &TileGrid) -> Self {
        TensorGrid { n: g.n(), d: 2, cells: g.cells().to_vec(), blank: g.blank_index() }
    }
}

// Error reporting reuses the planar move letters; axes beyond 2 map onto them.
fn legacy_label(mv: TensorMove) -> Move {
    match (mv.axis, mv.dir) {
        (1, Direction::Minus) => Move::Up,
        (1, Direction::Plus) => Move::Down,
        (_, Direction::Plus) => Move::Right,
        (_, Direction::Minus) => Move::Left,
    }
}

fn check_shape(n: usize, d: usize) -> Result<(), GridError> {
    if !(2..=3).contains(&d) {
        return Err(GridError::Parse(format!("tensor order {d} not in {{2, 3}}")));
    }
    if n < 2 || n.pow(d as u32) > u16::MAX as usize {
        return Err(GridError::BadSide(n));
    }
    Ok(())
}
