//! Combinatorial null-homotopies of closed edge paths.
//!
//! Three elementary moves change a closed edge path without changing its
//! homotopy class in a flag complex:
//!
//! * backtrack removal, `.. u v u ..` to `.. u ..`;
//! * shortcut across a triangle, `.. u v w ..` to `.. u w ..` when `u` and
//!   `w` are adjacent (a 3-cycle collapses straight to a point);
//! * detour, the inverse of a shortcut.
//!
//! A sequence of moves ending at a single vertex certifies that the cycle is
//! trivial. A search that runs out of budget proves nothing.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use super::{ComplexError, Cycle, FlagComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// Remove the vertex at `at` and the repeat that follows it.
    Backtrack { at: usize },
    /// Remove the vertex at `at`; its two neighbors span an edge.
    Shortcut { at: usize },
    /// Insert `via` after position `at`.
    Detour { at: usize, via: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(rename = "move")]
    pub mv: Move,
    /// The closed path after the move, in the rotation the next move refers to.
    pub cycle: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullHomotopyWitness {
    pub start: Vec<usize>,
    pub steps: Vec<Step>,
}

impl NullHomotopyWitness {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Longest closed path visited along the way, in edges.
    pub fn max_len(&self) -> usize {
        self.steps.iter().map(|s| s.cycle.len()).chain(std::iter::once(self.start.len())).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyBounds {
    pub max_len: usize,
    pub max_steps: usize,
}

impl Default for HomotopyBounds {
    fn default() -> Self {
        Self { max_len: 16, max_steps: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SearchOutcome {
    Trivial(NullHomotopyWitness),
    /// Nothing was found within the bounds. `exhausted` is set when every
    /// closed path within `max_len` was visited.
    Inconclusive {
        explored: usize,
        exhausted: bool,
    },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&NullHomotopyWitness> {
        match self {
            SearchOutcome::Trivial(w) => Some(w),
            SearchOutcome::Inconclusive { .. } => None,
        }
    }
}

fn invalid(mv: Move, cycle: &[usize], reason: &str) -> ComplexError {
    ComplexError::InvalidMove { mv, cycle: cycle.to_vec(), reason: reason.to_owned() }
}

/// Applies one move, checking that it is legal in `complex`.
pub fn apply_move(complex: &FlagComplex, cycle: &[usize], mv: Move) -> Result<Vec<usize>, ComplexError> {
    let n = cycle.len();
    let at = match mv {
        Move::Backtrack { at } | Move::Shortcut { at } | Move::Detour { at, .. } => at,
    };
    if at >= n {
        return Err(invalid(mv, cycle, "position out of range"));
    }
    let prev = (at + n - 1) % n;
    let next = (at + 1) % n;
    match mv {
        Move::Backtrack { .. } => {
            if n < 2 || cycle[prev] != cycle[next] {
                return Err(invalid(mv, cycle, "no backtrack here"));
            }
            if n == 2 {
                return Ok(vec![cycle[prev]]);
            }
            Ok(cycle.iter().enumerate().filter(|&(i, _)| i != at && i != next).map(|(_, &v)| v).collect())
        }
        Move::Shortcut { .. } => {
            let (u, v, w) = (cycle[prev], cycle[at], cycle[next]);
            if n < 3 || u == w || u == v || v == w || !complex.adjacent(u, w) {
                return Err(invalid(mv, cycle, "neighbors do not span a triangle"));
            }
            if n == 3 {
                return Ok(vec![u.min(v).min(w)]);
            }
            let mut out = cycle.to_vec();
            out.remove(at);
            Ok(out)
        }
        Move::Detour { via, .. } => {
            let (u, w) = (cycle[at], cycle[next]);
            if n < 2 || via == u || via == w || !complex.adjacent(u, via) || !complex.adjacent(via, w) {
                return Err(invalid(mv, cycle, "detour vertex is not a common neighbor"));
            }
            let mut out = cycle.to_vec();
            out.insert(at + 1, via);
            Ok(out)
        }
    }
}

/// The lexicographically smallest rotation or reflection.
pub fn normalize_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let mut best = cycle.to_vec();
    let mut candidate = Vec::with_capacity(n);
    for start in 0..n {
        for reversed in [false, true] {
            candidate.clear();
            candidate.extend((0..n).map(
                |k| {
                    if reversed {
                        cycle[(start + n - k) % n]
                    } else {
                        cycle[(start + k) % n]
                    }
                },
            ));
            if candidate < best {
                best.clone_from(&candidate);
            }
        }
    }
    best
}

/// Checks a witness move by move. The final path must be a single vertex.
pub fn replay_witness(complex: &FlagComplex, witness: &NullHomotopyWitness) -> Result<(), ComplexError> {
    if witness.start.len() != 1 {
        Cycle::new(complex, witness.start.clone())?;
    }
    let mut current = witness.start.clone();
    for step in &witness.steps {
        let next = apply_move(complex, &current, step.mv)?;
        if normalize_cycle(&next) != normalize_cycle(&step.cycle) {
            return Err(invalid(step.mv, &current, "recorded result does not match"));
        }
        current = step.cycle.clone();
    }
    if current.len() != 1 {
        return Err(ComplexError::NotACycle(format!("witness ends at a path of length {}", current.len())));
    }
    Ok(())
}

fn legal_moves(complex: &FlagComplex, cycle: &[usize], max_len: usize) -> Vec<Move> {
    let n = cycle.len();
    let mut moves = Vec::new();
    if n < 2 {
        return moves;
    }
    for at in 0..n {
        let (u, v, w) = (cycle[(at + n - 1) % n], cycle[at], cycle[(at + 1) % n]);
        if u == w {
            moves.push(Move::Backtrack { at });
        } else if n >= 3 && u != v && v != w && complex.adjacent(u, w) {
            moves.push(Move::Shortcut { at });
        }
    }
    if n < max_len {
        for at in 0..n {
            let (u, w) = (cycle[at], cycle[(at + 1) % n]);
            for &via in complex.neighbors(u) {
                if via != w && complex.adjacent(via, w) {
                    moves.push(Move::Detour { at, via });
                }
            }
        }
    }
    moves
}

/// Best-first search over the move graph, shortest paths first. States are
/// closed paths up to rotation and reflection; `max_steps` bounds the number
/// of states expanded.
pub fn reduce_cycle_homotopy(
    complex: &FlagComplex,
    cycle: &Cycle,
    bounds: HomotopyBounds,
) -> Result<SearchOutcome, ComplexError> {
    let start = normalize_cycle(cycle.vertices());
    struct Node {
        cycle: Vec<usize>,
        parent: Option<(usize, Move)>,
    }
    let mut nodes = vec![Node { cycle: start.clone(), parent: None }];
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut heap = BinaryHeap::from([Reverse((start.len(), 0usize))]);
    let mut explored = 0;

    while let Some(Reverse((_, id))) = heap.pop() {
        if nodes[id].cycle.len() == 1 {
            let mut steps = Vec::new();
            let mut at = id;
            while let Some((parent, mv)) = nodes[at].parent {
                steps.push(Step { mv, cycle: nodes[at].cycle.clone() });
                at = parent;
            }
            steps.reverse();
            return Ok(SearchOutcome::Trivial(NullHomotopyWitness { start, steps }));
        }
        if explored == bounds.max_steps {
            return Ok(SearchOutcome::Inconclusive { explored, exhausted: false });
        }
        explored += 1;
        let current = nodes[id].cycle.clone();
        for mv in legal_moves(complex, &current, bounds.max_len) {
            let next = normalize_cycle(&apply_move(complex, &current, mv)?);
            if seen.contains_key(&next) {
                continue;
            }
            let child = nodes.len();
            seen.insert(next.clone(), child);
            heap.push(Reverse((next.len(), child)));
            nodes.push(Node { cycle: next, parent: Some((id, mv)) });
        }
    }
    Ok(SearchOutcome::Inconclusive { explored, exhausted: true })
}
