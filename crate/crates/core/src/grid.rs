//! Sliding-tile states and the four legal moves.
//!
//! A [`TileGrid`] is an immutable `n × n` board holding the tiles `1..n²-1`
//! and exactly one blank. Moves are named by the direction the *blank*
//! travels: [`Move::Up`] moves the blank one row up, [`Move::Right`] one
//! column right, and so on. Coordinates exposed by this module are 1-based
//! `(row, col)` pairs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported side length; tile values must fit in a `u16`.
pub const MAX_SIDE: usize = 255;

const BLANK: u16 = 0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("side length {0} is outside 2..={MAX_SIDE}")]
    BadSide(usize),
    #[error("expected {expected} cells, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("tile {0} appears more than once")]
    DuplicateTile(u16),
    #[error("no blank cell")]
    MissingBlank,
    #[error("more than one blank cell")]
    MultipleBlanks,
    #[error("tile value {0} is outside 1..n²-1")]
    ValueOutOfRange(u64),
    #[error("illegal move {mv} at step {step}")]
    IllegalMove { step: usize, mv: Move },
    #[error("cannot parse grid: {0}")]
    Parse(String),
}

/// One of the four legal transformations, labelled by the blank's motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    /// φ₁: blank moves to row − 1.
    Up,
    /// φ₂: blank moves to row + 1.
    Down,
    /// φ₃: blank moves to col + 1.
    Right,
    /// φ₄: blank moves to col − 1.
    Left,
}

impl Move {
    /// All moves in enumeration order `U < D < R < L`.
    pub const ALL: [Move; 4] = [Move::Up, Move::Down, Move::Right, Move::Left];

    /// The move undoing `self` (Up↔Down, Right↔Left).
    pub fn inverse(self) -> Move {
        match self {
            Move::Up => Move::Down,
            Move::Down => Move::Up,
            Move::Right => Move::Left,
            Move::Left => Move::Right,
        }
    }

    /// The φ subscript, 1..=4.
    pub fn index(self) -> usize {
        match self {
            Move::Up => 1,
            Move::Down => 2,
            Move::Right => 3,
            Move::Left => 4,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Move::Up => 'U',
            Move::Down => 'D',
            Move::Right => 'R',
            Move::Left => 'L',
        }
    }

    pub fn from_letter(c: char) -> Option<Move> {
        match c.to_ascii_uppercase() {
            'U' => Some(Move::Up),
            'D' => Some(Move::Down),
            'R' => Some(Move::Right),
            'L' => Some(Move::Left),
            _ => None,
        }
    }

    /// Row and column displacement of the blank.
    pub fn delta(self) -> (isize, isize) {
        match self {
            Move::Up => (-1, 0),
            Move::Down => (1, 0),
            Move::Right => (0, 1),
            Move::Left => (0, -1),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A finite sequence of moves, applied left to right.
///
/// Serializes as a string of move letters, e.g. `"RDDRD"`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MoveSeq(Vec<Move>);

impl MoveSeq {
    pub fn new() -> Self {
        MoveSeq(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.0.push(m);
    }

    pub fn pop(&mut self) -> Option<Move> {
        self.0.pop()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Move> + '_ {
        self.0.iter().copied()
    }

    /// Reverses the sequence and inverts every move, so that applying
    /// `s` then `s.reversed()` is the identity whenever `s` is legal.
    pub fn reversed(&self) -> MoveSeq {
        MoveSeq(self.0.iter().rev().map(|m| m.inverse()).collect())
    }
}

impl From<Vec<Move>> for MoveSeq {
    fn from(v: Vec<Move>) -> Self {
        MoveSeq(v)
    }
}

impl FromIterator<Move> for MoveSeq {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        MoveSeq(iter.into_iter().collect())
    }
}

impl fmt::Display for MoveSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            write!(f, "{}", m.letter())?;
        }
        Ok(())
    }
}

impl FromStr for MoveSeq {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| Move::from_letter(c).ok_or_else(|| GridError::Parse(format!("unknown move letter {c:?}"))))
            .collect()
    }
}

impl Serialize for MoveSeq {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MoveSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Whether an illegal step aborts ([`ApplyMode::Strict`]) or leaves the
/// grid unchanged ([`ApplyMode::Total`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ApplyMode {
    #[default]
    Strict,
    Total,
}

/// An `n × n` sliding-tile configuration.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TileGrid {
    n: usize,
    cells: Box<[u16]>,
    blank: usize,
}

impl TileGrid {
    /// Builds a validated grid from `n²` row-major entries, `None` marking the blank.
    pub fn new(n: usize, entries: &[Option<u16>]) -> Result<TileGrid, GridError> {
        if !(2..=MAX_SIDE).contains(&n) {
            return Err(GridError::BadSide(n));
        }
        let size = n * n;
        if entries.len() != size {
            return Err(GridError::WrongLength { expected: size, got: entries.len() });
        }
        let mut seen = vec![false; size];
        let mut blank = None;
        let mut cells = Vec::with_capacity(size);
        for (idx, e) in entries.iter().enumerate() {
            match *e {
                None => {
                    if blank.replace(idx).is_some() {
                        return Err(GridError::MultipleBlanks);
                    }
                    cells.push(BLANK);
                }
                Some(v) => {
                    if v == 0 || v as usize >= size {
                        return Err(GridError::ValueOutOfRange(v as u64));
                    }
                    if std::mem::replace(&mut seen[v as usize], true) {
                        return Err(GridError::DuplicateTile(v));
                    }
                    cells.push(v);
                }
            }
        }
        let blank = blank.ok_or(GridError::MissingBlank)?;
        Ok(TileGrid { n, cells: cells.into_boxed_slice(), blank })
    }

    /// Builds a grid from rows, each entry `0` meaning blank.
    pub fn from_rows<R: AsRef<[u16]>>(rows: &[R]) -> Result<TileGrid, GridError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(GridError::WrongLength { expected: n * n, got: n * (n - 1) + row.len() });
            }
            entries.extend(row.iter().map(|&v| (v != BLANK).then_some(v)));
        }
        TileGrid::new(n, &entries)
    }

    /// The solved configuration: row-major tiles with the blank at `(n, n)`.
    pub fn goal(n: usize) -> TileGrid {
        assert!((2..=MAX_SIDE).contains(&n), "side length {n} out of range");
        let size = n * n;
        let cells: Vec<u16> = (1..size as u16).chain(std::iter::once(BLANK)).collect();
        TileGrid { n, cells: cells.into_boxed_slice(), blank: size - 1 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based `(row, col)` of the blank.
    pub fn blank_pos(&self) -> (usize, usize) {
        (self.blank / self.n + 1, self.blank % self.n + 1)
    }

    /// Row-major index of the blank.
    pub fn blank_index(&self) -> usize {
        self.blank
    }

    /// Entry at 1-based `(row, col)`; `None` is the blank.
    pub fn get(&self, row: usize, col: usize) -> Option<u16> {
        assert!(row >= 1 && row <= self.n && col >= 1 && col <= self.n, "cell ({row},{col}) outside grid");
        let v = self.cells[(row - 1) * self.n + col - 1];
        (v != BLANK).then_some(v)
    }

    /// Raw row-major cells, `0` for the blank.
    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    pub fn entries(&self) -> Vec<Option<u16>> {
        self.cells.iter().map(|&v| (v != BLANK).then_some(v)).collect()
    }

    pub fn is_goal(&self) -> bool {
        self.blank == self.cells.len() - 1 && self.cells[..self.blank].iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Index of the cell the blank would move into, if it is on the grid.
    pub fn target(&self, m: Move) -> Option<usize> {
        let (r, c) = (self.blank / self.n, self.blank % self.n);
        let (dr, dc) = m.delta();
        let r = r.checked_add_signed(dr)?;
        let c = c.checked_add_signed(dc)?;
        (r < self.n && c < self.n).then_some(r * self.n + c)
    }

    pub fn is_legal(&self, m: Move) -> bool {
        self.target(m).is_some()
    }

    /// Applies `m` in place; returns `false` (grid untouched) when illegal.
    pub fn step(&mut self, m: Move) -> bool {
        match self.target(m) {
            Some(t) => {
                self.cells.swap(self.blank, t);
                self.blank = t;
                true
            }
            None => false,
        }
    }

    /// Swaps the blank with cell `target` without checking adjacency.
    pub(crate) fn swap_blank(&mut self, target: usize) {
        self.cells.swap(self.blank, target);
        self.blank = target;
    }

    /// Strict move: errors when the blank would leave the grid.
    pub fn apply_move(&self, m: Move) -> Result<TileGrid, GridError> {
        let mut g = self.clone();
        if g.step(m) {
            Ok(g)
        } else {
            Err(GridError::IllegalMove { step: 1, mv: m })
        }
    }

    /// Total move: an off-grid move is the identity.
    pub fn apply_move_total(&self, m: Move) -> TileGrid {
        let mut g = self.clone();
        g.step(m);
        g
    }

    /// Applies `seq` left to right. In strict mode the error carries the
    /// 1-based index of the first illegal step.
    pub fn apply_seq(&self, seq: &MoveSeq, mode: ApplyMode) -> Result<TileGrid, GridError> {
        let mut g = self.clone();
        for (i, m) in seq.iter().enumerate() {
            if !g.step(m) && mode == ApplyMode::Strict {
                return Err(GridError::IllegalMove { step: i + 1, mv: m });
            }
        }
        Ok(g)
    }

    pub fn apply_seq_total(&self, seq: &MoveSeq) -> TileGrid {
        let mut g = self.clone();
        for m in seq.iter() {
            g.step(m);
        }
        g
    }

    /// Legal moves from this state, in `U, D, R, L` order.
    pub fn legal_moves(&self) -> impl Iterator<Item = Move> + '_ {
        Move::ALL.into_iter().filter(|&m| self.is_legal(m))
    }

    /// Parses the text format: `n` lines of `n` whitespace-separated tokens,
    /// `_` for the blank. Blank lines are ignored.
    pub fn parse_text(text: &str) -> Result<TileGrid, GridError> {
        let rows: Vec<Vec<&str>> = text
            .lines()
            .map(|l| l.split_whitespace().collect::<Vec<_>>())
            .filter(|r| !r.is_empty())
            .collect();
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GridError::Parse(format!("row {} has {} tokens, expected {n}", i + 1, row.len())));
            }
            for tok in row {
                if *tok == "_" {
                    entries.push(None);
                } else {
                    let v: u64 = tok.parse().map_err(|_| GridError::Parse(format!("bad token {tok:?}")))?;
                    let v = u16::try_from(v).map_err(|_| GridError::ValueOutOfRange(v))?;
                    entries.push(Some(v));
                }
            }
        }
        TileGrid::new(n, &entries)
    }

    /// Parses either the text format or the JSON format, by first character.
    pub fn parse_any(input: &str) -> Result<TileGrid, GridError> {
        if input.trim_start().starts_with('{') {
            serde_json::from_str(input).map_err(|e| GridError::Parse(e.to_string()))
        } else {
            TileGrid::parse_text(input)
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Component-wise equality of two grids.
pub fn grids_equal(a: &TileGrid, b: &TileGrid) -> bool {
    a.n == b.n && a.cells == b.cells
}

impl fmt::Display for TileGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (self.n * self.n - 1).to_string().len();
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row
                .iter()
                .map(|&v| if v == BLANK { format!("{:>width$}", "_") } else { format!("{v:>width$}") })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TileGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TileGrid(n={}, ", self.n)?;
        let rows: Vec<String> = self
            .cells
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| if v == BLANK { "_".into() } else { v.to_string() }).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}])", rows.join(" / "))
    }
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    n: usize,
    cells: Vec<Option<u16>>,
}

impl Serialize for TileGrid {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GridJson { n: self.n, cells: self.entries() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TileGrid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GridJson::deserialize(d)?;
        TileGrid::new(j.n, &j.cells).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample_grid() -> TileGrid {
        TileGrid::from_rows(&[[1, 0, 2, 4], [5, 6, 3, 8], [9, 10, 7, 11], [13, 14, 15, 12]]).unwrap()
    }

    #[test]
    fn sample_grid_is_valid() {
        let g = sample_grid();
        assert_eq!(g.blank_pos(), (1, 2));
        assert_eq!(g.get(1, 3), Some(2));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(TileGrid::new(2, &[Some(1), Some(1), Some(2), None]), Err(GridError::DuplicateTile(1)));
        assert_eq!(TileGrid::new(2, &[Some(1), Some(2), Some(3), Some(4)]), Err(GridError::ValueOutOfRange(4)));
        assert_eq!(TileGrid::new(2, &[Some(1), None, Some(3), None]), Err(GridError::MultipleBlanks));
        assert_eq!(TileGrid::new(2, &[Some(1), Some(2), Some(3)]), Err(GridError::WrongLength { expected: 4, got: 3 }));
        assert_eq!(TileGrid::new(1, &[None]), Err(GridError::BadSide(1)));
        assert_eq!(TileGrid::new(2, &[Some(1), Some(2), Some(3), Some(0)]), Err(GridError::ValueOutOfRange(0)));
        let g = TileGrid::new(2, &[Some(1), Some(2), Some(3), None]).unwrap();
        assert_eq!(g.blank_pos(), (2, 2));
        assert!(g.is_goal());
    }

    #[test]
    fn goal_layout() {
        let g = TileGrid::goal(4);
        assert_eq!(g, TileGrid::from_rows(&[[1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12], [13, 14, 15, 0]]).unwrap());
        assert_eq!(TileGrid::goal(2), TileGrid::from_rows(&[[1, 2], [3, 0]]).unwrap());
        let g3 = TileGrid::goal(3);
        assert_eq!(g3.apply_seq(&MoveSeq::new(), ApplyMode::Strict).unwrap(), g3);
    }

    #[test]
    fn sample_grid_first_step() {
        let g = sample_grid().apply_move(Move::Right).unwrap();
        assert_eq!(g.blank_pos(), (1, 3));
        assert_eq!(g.get(1, 2), Some(2));
    }

    #[test]
    fn boundary_moves() {
        let g = TileGrid::goal(4);
        assert_eq!(g.apply_move(Move::Right), Err(GridError::IllegalMove { step: 1, mv: Move::Right }));
        assert_eq!(g.apply_move_total(Move::Right), g);
        let seq: MoveSeq = "D".parse().unwrap();
        assert_eq!(g.apply_seq(&seq, ApplyMode::Strict), Err(GridError::IllegalMove { step: 1, mv: Move::Down }));
        let seq: MoveSeq = "UUD".parse().unwrap();
        assert!(g.apply_seq(&seq, ApplyMode::Strict).is_ok());
        let seq: MoveSeq = "UUUUD".parse().unwrap();
        assert_eq!(g.apply_seq(&seq, ApplyMode::Strict), Err(GridError::IllegalMove { step: 4, mv: Move::Up }));
        assert_eq!(g.apply_seq(&seq, ApplyMode::Total).unwrap().blank_pos(), (2, 4));
    }

    #[test]
    fn sample_grid_solution_and_reversal() {
        let seq: MoveSeq = "RDDRD".parse().unwrap();
        let solved = sample_grid().apply_seq(&seq, ApplyMode::Strict).unwrap();
        assert!(grids_equal(&solved, &TileGrid::goal(4)));
        let back = TileGrid::goal(4).apply_seq(&seq.reversed(), ApplyMode::Strict).unwrap();
        assert_eq!(back, sample_grid());
    }

    #[test]
    fn inverse_pairs() {
        assert_eq!(Move::Up.inverse(), Move::Down);
        assert_eq!(Move::Right.inverse(), Move::Left);
        for m in Move::ALL {
            assert_eq!(m.inverse().inverse(), m);
        }
    }

    #[test]
    fn reverse_seq_examples() {
        let s: MoveSeq = "RD".parse().unwrap();
        assert_eq!(s.reversed().to_string(), "UL");
        assert!(MoveSeq::new().reversed().is_empty());
    }

    #[test]
    fn equality() {
        let g3 = TileGrid::goal(3);
        assert!(grids_equal(&g3, &TileGrid::goal(3)));
        assert!(!grids_equal(&g3, &g3.apply_move(Move::Up).unwrap()));
        assert!(!grids_equal(&g3, &TileGrid::goal(4)));
    }

    #[test]
    fn text_and_json_formats() {
        let g = sample_grid();
        let parsed = TileGrid::parse_text(&g.to_text()).unwrap();
        assert_eq!(parsed, g);
        let json = serde_json::to_string(&TileGrid::goal(2)).unwrap();
        assert_eq!(json, r#"{"n":2,"cells":[1,2,3,null]}"#);
        assert_eq!(TileGrid::parse_any(&json).unwrap(), TileGrid::goal(2));
        assert!(matches!(TileGrid::parse_text("1 2\n3"), Err(GridError::Parse(_))));
        assert!(matches!(TileGrid::parse_any(r#"{"n":2,"cells":[1,1,2,null]}"#), Err(GridError::Parse(_))));
    }

    #[test]
    fn move_seq_parsing() {
        let s: MoveSeq = "rddrd".parse().unwrap();
        assert_eq!(s.to_string(), "RDDRD");
        assert!("RX".parse::<MoveSeq>().is_err());
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"RDDRD\"");
    }
}
