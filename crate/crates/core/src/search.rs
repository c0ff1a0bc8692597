//! Ground-truth search over sliding-tile states.
//!
//! [`enumerate_reachable`] runs a breadth-first sweep outward from the goal,
//! giving the exact optimal move count of every solvable state. Individual
//! states are solved optimally with BFS (`n ≤ 3`) or IDA* with the Manhattan
//! heuristic (`n ≥ 4`). [`exhaust_sequences`] is the deliberately naive
//! enumerator that tries every move string in length-then-lexicographic order.

use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use crate::grid::{Move, MoveSeq, TileGrid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("configuration is not solvable")]
    Unsolvable,
    #[error("resource limit reached: {0}")]
    ResourceLimit(String),
    #[error("full enumeration of n = {0} needs a depth limit")]
    DepthLimitRequired(usize),
    #[error("side length {0} is not supported by this search")]
    UnsupportedSide(usize),
    #[error("no move sequence of length <= {k_max} reaches the goal")]
    NotFound { k_max: usize },
}

/// Caps applied to every search.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Maximum number of stored states (BFS tables and BFS solving).
    pub max_states: usize,
    /// Maximum number of node expansions (IDA*, exhaustive enumeration).
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_states: 5_000_000, max_nodes: 5_000_000_000, deadline: None }
    }
}

impl SearchLimits {
    fn check_deadline(&self) -> Result<(), SearchError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(SearchError::ResourceLimit("timeout".into())),
            _ => Ok(()),
        }
    }
}

/// Packs a grid into a `u128`, a fixed number of bits per cell.
///
/// Supported for `n ≤ 5`.
pub fn encode(g: &TileGrid) -> Option<u128> {
    let bits = cell_bits(g.n())?;
    Some(g.cells().iter().fold(0u128, |acc, &v| (acc << bits) | v as u128))
}

/// Inverse of [`encode`].
pub fn decode(n: usize, key: u128) -> Option<TileGrid> {
    let bits = cell_bits(n)?;
    let mask = (1u128 << bits) - 1;
    let size = n * n;
    let mut entries = vec![None; size];
    for i in 0..size {
        let v = ((key >> (bits * (size - 1 - i) as u32)) & mask) as u16;
        entries[i] = (v != 0).then_some(v);
    }
    TileGrid::new(n, &entries).ok()
}

fn cell_bits(n: usize) -> Option<u32> {
    let size = n * n;
    let bits = usize::BITS - (size - 1).leading_zeros();
    (size as u32 * bits <= 128).then_some(bits)
}

/// Exact distance-from-goal for every state reached by a BFS from the goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityTable {
    n: usize,
    depths: FxHashMap<u128, u16>,
    histogram: Vec<u64>,
}

impl ReachabilityTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.depths.len()
    }

    /// Largest depth present in the table.
    pub fn diameter(&self) -> usize {
        self.histogram.len().saturating_sub(1)
    }

    /// Number of states at each depth, starting with the goal at depth 0.
    pub fn depth_histogram(&self) -> &[u64] {
        &self.histogram
    }

    pub fn depth(&self, g: &TileGrid) -> Option<usize> {
        if g.n() != self.n {
            return None;
        }
        encode(g).and_then(|k| self.depths.get(&k)).map(|&d| d as usize)
    }

    pub fn contains(&self, g: &TileGrid) -> bool {
        self.depth(g).is_some()
    }

    /// All states with their depths, sorted by encoding.
    pub fn states(&self) -> Vec<(TileGrid, usize)> {
        let mut keys: Vec<_> = self.depths.iter().map(|(&k, &d)| (k, d)).collect();
        keys.sort_unstable();
        keys.into_iter().map(|(k, d)| (decode(self.n, k).expect("table keys decode"), d as usize)).collect()
    }

    pub fn summary(&self) -> TableSummary {
        TableSummary { n: self.n, count: self.count(), diameter: self.diameter(), depth_histogram: self.histogram.clone() }
    }
}

/// The serialized form of a [`ReachabilityTable`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableSummary {
    pub n: usize,
    pub count: usize,
    pub diameter: usize,
    pub depth_histogram: Vec<u64>,
}

/// Breadth-first enumeration of every state reachable from `goal(n)`.
///
/// Each frontier is expanded in parallel; successors are sorted and
/// deduplicated before insertion, so the table is independent of the
/// worker count. `n ≥ 4` requires `depth_limit`.
pub fn enumerate_reachable(
    n: usize,
    depth_limit: Option<usize>,
    limits: &SearchLimits,
) -> Result<ReachabilityTable, SearchError> {
    if n < 2 || cell_bits(n).is_none() {
        return Err(SearchError::UnsupportedSide(n));
    }
    if n > 3 && depth_limit.is_none() {
        return Err(SearchError::DepthLimitRequired(n));
    }
    let goal = TileGrid::goal(n);
    let mut depths = FxHashMap::default();
    depths.insert(encode(&goal).unwrap(), 0u16);
    let mut histogram = vec![1u64];
    let mut frontier = vec![goal];
    let mut depth = 0usize;
    while !frontier.is_empty() && depth_limit.map_or(true, |l| depth < l) {
        limits.check_deadline()?;
        let mut next: Vec<(u128, TileGrid)> = frontier
            .par_iter()
            .flat_map_iter(|g| {
                g.legal_moves().map(move |m| {
                    let mut s = g.clone();
                    s.step(m);
                    (encode(&s).unwrap(), s)
                })
            })
            .filter(|(k, _)| !depths.contains_key(k))
            .collect();
        next.par_sort_unstable_by_key(|(k, _)| *k);
        next.dedup_by_key(|(k, _)| *k);
        if next.is_empty() {
            break;
        }
        depth += 1;
        if depths.len() + next.len() > limits.max_states {
            return Err(SearchError::ResourceLimit(format!("more than {} states", limits.max_states)));
        }
        let level = u16::try_from(depth).map_err(|_| SearchError::ResourceLimit("depth overflow".into()))?;
        depths.extend(next.iter().map(|(k, _)| (*k, level)));
        histogram.push(next.len() as u64);
        frontier = next.into_iter().map(|(_, g)| g).collect();
    }
    Ok(ReachabilityTable { n, depths, histogram })
}

/// Parity test for solvability.
///
/// Treat the blank as tile `n²` and read all cells row-major. Every move is
/// one transposition of that permutation and also changes the blank's
/// Manhattan distance to `(n, n)` by one, so a state is reachable from the
/// goal iff the permutation parity equals the parity of that distance.
pub fn is_solvable(g: &TileGrid) -> bool {
    let n = g.n();
    let size = n * n;
    let perm: Vec<usize> = g.cells().iter().map(|&v| if v == 0 { size - 1 } else { v as usize - 1 }).collect();
    let mut seen = vec![false; size];
    let mut transpositions = 0usize;
    for start in 0..size {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    let (r, c) = g.blank_pos();
    let distance = (n - r) + (n - c);
    transpositions % 2 == distance % 2
}

/// An optimal (or, for the exhaustive enumerator, first-found) solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    /// Number of moves in `seq`.
    pub psi: usize,
    pub seq: MoveSeq,
    /// States expanded (BFS/IDA*) or candidate sequences examined (exhaustive).
    pub expanded: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    /// BFS for `n ≤ 3`, IDA* otherwise.
    #[default]
    Auto,
    Bfs,
    IdaStar,
}

/// Optimal solution: the minimal number of moves and one witness.
pub fn solve_optimal(g: &TileGrid, limits: &SearchLimits) -> Result<SearchResult, SearchError> {
    solve_with(g, Algorithm::Auto, limits)
}

pub fn solve_with(g: &TileGrid, algo: Algorithm, limits: &SearchLimits) -> Result<SearchResult, SearchError> {
    if !is_solvable(g) {
        return Err(SearchError::Unsolvable);
    }
    match algo {
        Algorithm::Bfs => solve_bfs(g, limits),
        Algorithm::IdaStar => solve_ida(g, limits),
        Algorithm::Auto if g.n() <= 3 => solve_bfs(g, limits),
        Algorithm::Auto => solve_ida(g, limits),
    }
}

/// Plain BFS from `g` towards the goal, reconstructing the path from parent links.
pub fn solve_bfs(g: &TileGrid, limits: &SearchLimits) -> Result<SearchResult, SearchError> {
    if !is_solvable(g) {
        return Err(SearchError::Unsolvable);
    }
    let start = encode(g).ok_or(SearchError::UnsupportedSide(g.n()))?;
    let goal = encode(&TileGrid::goal(g.n())).unwrap();
    let mut parents: FxHashMap<u128, Option<(u128, Move)>> = FxHashMap::default();
    parents.insert(start, None);
    let mut queue = std::collections::VecDeque::from([g.clone()]);
    let mut expanded = 0u64;
    let mut found = start == goal;
    while !found {
        let Some(cur) = queue.pop_front() else {
            return Err(SearchError::Unsolvable);
        };
        expanded += 1;
        if expanded % 65_536 == 0 {
            limits.check_deadline()?;
        }
        let cur_key = encode(&cur).unwrap();
        for m in Move::ALL {
            let mut next = cur.clone();
            if !next.step(m) {
                continue;
            }
            let key = encode(&next).unwrap();
            if parents.contains_key(&key) {
                continue;
            }
            parents.insert(key, Some((cur_key, m)));
            if key == goal {
                found = true;
                break;
            }
            if parents.len() > limits.max_states {
                return Err(SearchError::ResourceLimit(format!("more than {} states", limits.max_states)));
            }
            queue.push_back(next);
        }
    }
    let mut moves = Vec::new();
    let mut key = goal;
    while let Some(Some((parent, m))) = parents.get(&key) {
        moves.push(*m);
        key = *parent;
    }
    moves.reverse();
    Ok(SearchResult { psi: moves.len(), seq: moves.into(), expanded })
}

/// Sum of Manhattan distances of every tile to its goal cell.
pub fn manhattan(g: &TileGrid) -> usize {
    let n = g.n();
    g.cells()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| {
            let home = v as usize - 1;
            (i / n).abs_diff(home / n) + (i % n).abs_diff(home % n)
        })
        .sum()
}

/// IDA* with the Manhattan heuristic, which is admissible, so the result is optimal.
pub fn solve_ida(g: &TileGrid, limits: &SearchLimits) -> Result<SearchResult, SearchError> {
    if !is_solvable(g) {
        return Err(SearchError::Unsolvable);
    }
    let mut ida = Ida { state: g.clone(), path: Vec::new(), expanded: 0, limits };
    let mut bound = manhattan(g);
    loop {
        let h = manhattan(&ida.state);
        match ida.search(0, bound, h)? {
            Step::Found => {
                let seq: MoveSeq = ida.path.clone().into();
                return Ok(SearchResult { psi: seq.len(), seq, expanded: ida.expanded });
            }
            Step::Exceeded(next) => bound = next,
        }
    }
}

enum Step {
    Found,
    Exceeded(usize),
}

struct Ida<'a> {
    state: TileGrid,
    path: Vec<Move>,
    expanded: u64,
    limits: &'a SearchLimits,
}

impl Ida<'_> {
    fn search(&mut self, cost: usize, bound: usize, h: usize) -> Result<Step, SearchError> {
        let f = cost + h;
        if f > bound {
            return Ok(Step::Exceeded(f));
        }
        if h == 0 {
            return Ok(Step::Found);
        }
        self.expanded += 1;
        if self.expanded > self.limits.max_nodes {
            return Err(SearchError::ResourceLimit(format!("more than {} nodes", self.limits.max_nodes)));
        }
        if self.expanded % (1 << 20) == 0 {
            self.limits.check_deadline()?;
        }
        let n = self.state.n();
        let mut min = usize::MAX;
        for m in Move::ALL {
            if self.path.last() == Some(&m.inverse()) {
                continue;
            }
            let Some(target) = self.state.target(m) else { continue };
            // The tile at `target` slides into the blank's cell.
            let tile = self.state.cells()[target] as usize - 1;
            let blank = self.state.blank_index();
            let before = (target / n).abs_diff(tile / n) + (target % n).abs_diff(tile % n);
            let after = (blank / n).abs_diff(tile / n) + (blank % n).abs_diff(tile % n);
            let child_h = h + after - before;
            self.state.step(m);
            self.path.push(m);
            match self.search(cost + 1, bound, child_h)? {
                Step::Found => return Ok(Step::Found),
                Step::Exceeded(t) => min = min.min(t),
            }
            self.path.pop();
            self.state.step(m.inverse());
        }
        Ok(Step::Exceeded(min))
    }
}

/// Hooks used by [`exhaust_with`] to apply moves and test for the goal, so
/// the same enumeration can run plain or under decision accounting.
pub trait Executor {
    /// Called once per candidate sequence examined.
    fn candidate(&mut self) {}
    /// Total-mode move application.
    fn step(&mut self, g: &TileGrid, m: Move) -> TileGrid;
    fn equals(&mut self, a: &TileGrid, b: &TileGrid) -> bool;
}

/// Uninstrumented executor.
pub struct Plain;

impl Executor for Plain {
    fn step(&mut self, g: &TileGrid, m: Move) -> TileGrid {
        g.apply_move_total(m)
    }

    fn equals(&mut self, a: &TileGrid, b: &TileGrid) -> bool {
        crate::grid::grids_equal(a, b)
    }
}

/// Tries every move string of length `0..=k_max` in length-then-`U<D<R<L`
/// order under total-mode semantics and returns the first that reaches the goal.
///
/// Repeated labels are allowed. The cost is Θ(4^k_max).
pub fn exhaust_sequences(g: &TileGrid, k_max: usize, limits: &SearchLimits) -> Result<SearchResult, SearchError> {
    exhaust_with(g, k_max, limits, &mut Plain)
}

pub fn exhaust_with<E: Executor>(
    g: &TileGrid,
    k_max: usize,
    limits: &SearchLimits,
    exec: &mut E,
) -> Result<SearchResult, SearchError> {
    let goal = TileGrid::goal(g.n());
    let mut examined = 1u64;
    exec.candidate();
    if exec.equals(g, &goal) {
        return Ok(SearchResult { psi: 0, seq: MoveSeq::new(), expanded: examined });
    }
    let mut path = Vec::with_capacity(k_max);
    for len in 1..=k_max {
        let mut ctx = Exhaust { goal: &goal, len, path: &mut path, examined: &mut examined, limits, exec: &mut *exec };
        if ctx.dfs(g)? {
            let seq: MoveSeq = path.into();
            return Ok(SearchResult { psi: seq.len(), seq, expanded: examined });
        }
    }
    Err(SearchError::NotFound { k_max })
}

struct Exhaust<'a, E> {
    goal: &'a TileGrid,
    len: usize,
    path: &'a mut Vec<Move>,
    examined: &'a mut u64,
    limits: &'a SearchLimits,
    exec: &'a mut E,
}

impl<E: Executor> Exhaust<'_, E> {
    fn dfs(&mut self, g: &TileGrid) -> Result<bool, SearchError> {
        for m in Move::ALL {
            let next = self.exec.step(g, m);
            self.path.push(m);
            if self.path.len() == self.len {
                *self.examined += 1;
                if *self.examined > self.limits.max_nodes {
                    return Err(SearchError::ResourceLimit(format!("more than {} sequences", self.limits.max_nodes)));
                }
                self.exec.candidate();
                if self.exec.equals(&next, self.goal) {
                    return Ok(true);
                }
            } else if self.dfs(&next)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}
