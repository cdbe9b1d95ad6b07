//! Cycle reduction driven by double curve sums.
//!
//! Repeatedly take a vertex `v` of largest complexity on the cycle. If its
//! neighbors on the cycle coincide, remove the backtrack; if they are
//! disjoint, shortcut across the triangle. Otherwise they are at distance
//! two, so their covering spread is 1 and their double curve sum gives a
//! surface disjoint from both neighbors and from `v`. The one of smaller
//! complexity replaces `v` by a detour followed by a shortcut.

use serde::Serialize;

use super::{SurfaceSystem, SystemError};
use crate::complex::{apply_move, reduce_cycle_homotopy, Move, SearchOutcome, Step};
use crate::{Cycle, FlagComplex, HomotopyBounds, NullHomotopyWitness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ReductionOutcome {
    Trivial(NullHomotopyWitness),
    /// The budget ran out. `partial` holds the moves made so far; for the
    /// generic search it has none.
    Inconclusive {
        partial: NullHomotopyWitness,
        explored: usize,
    },
}

impl ReductionOutcome {
    pub fn witness(&self) -> Option<&NullHomotopyWitness> {
        match self {
            ReductionOutcome::Trivial(w) => Some(w),
            ReductionOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Move budget for backends without strict descent.
pub fn step_budget(cycle_len: usize, vertices: usize) -> usize {
    10 * cycle_len.max(1) * vertices.max(1)
}

/// Contracts `cycle` in `complex`, which must be `system.build_complex(..)`.
///
/// Systems without a double curve sum fall back to the generic bounded
/// search. A backend that breaks its contract yields
/// [`SystemError::ContractBreach`].
pub fn kakimizu_null_homotopy(
    system: &SurfaceSystem,
    complex: &FlagComplex,
    cycle: &Cycle,
    bounds: HomotopyBounds,
) -> Result<ReductionOutcome, SystemError> {
    let caps = system.capabilities();
    if !caps.supports_dcs {
        return Ok(match reduce_cycle_homotopy(complex, cycle, bounds)? {
            SearchOutcome::Trivial(w) => ReductionOutcome::Trivial(w),
            SearchOutcome::Inconclusive { explored, .. } => ReductionOutcome::Inconclusive {
                partial: NullHomotopyWitness { start: cycle.vertices().to_vec(), steps: Vec::new() },
                explored,
            },
        });
    }

    let start = cycle.vertices().to_vec();
    let budget = if caps.strict_descent { usize::MAX } else { step_budget(start.len(), system.len()) };
    let mut steps: Vec<Step> = Vec::new();
    let mut cur = start.clone();
    let breach = |msg: String| SystemError::ContractBreach(msg);

    while cur.len() > 1 {
        if steps.len() >= budget {
            let explored = steps.len();
            return Ok(ReductionOutcome::Inconclusive { partial: NullHomotopyWitness { start, steps }, explored });
        }
        let n = cur.len();
        let i = (0..n).max_by_key(|&k| (system.complexity(cur[k]), std::cmp::Reverse(k))).expect("nonempty cycle");
        let (prev, v, next) = (cur[(i + n - 1) % n], cur[i], cur[(i + 1) % n]);

        let moves = if n == 2 || prev == next {
            vec![Move::Backtrack { at: i }]
        } else if complex.adjacent(prev, next) {
            vec![Move::Shortcut { at: i }]
        } else {
            let id = |x: usize| system.id(x).to_owned();
            let cs = system.covering_spread(prev, next)?;
            if cs != 1 {
                return Err(breach(format!(
                    "{} and {} are at distance 2 but have covering spread {cs}",
                    id(prev),
                    id(next)
                )));
            }
            let (minus, plus) = system.double_curve_sum(prev, next)?;
            for w in [minus, plus] {
                if !system.disjoint(w, prev) || !system.disjoint(w, next) {
                    return Err(breach(format!("{} meets {} or {}", id(w), id(prev), id(next))));
                }
            }
            let replacement = if system.complexity(plus) < system.complexity(minus) { plus } else { minus };
            if !complex.adjacent(replacement, v) {
                return Err(breach(format!("{} is not disjoint from {}", id(replacement), id(v))));
            }
            if caps.strict_descent && system.complexity(replacement) >= system.complexity(v) {
                return Err(breach(format!("{} does not lower the complexity of {}", id(replacement), id(v))));
            }
            vec![
                Move::Detour { at: (i + n - 1) % n, via: replacement },
                Move::Shortcut { at: if i == 0 { 0 } else { i + 1 } },
            ]
        };
        for mv in moves {
            cur = apply_move(complex, &cur, mv)?;
            steps.push(Step { mv, cycle: cur.clone() });
        }
    }
    Ok(ReductionOutcome::Trivial(NullHomotopyWitness { start, steps }))
}

#[cfg(test)]
mod tests {
    use super::super::{lattice_model, line_model, LatticeWindow};
    use super::*;
    use crate::complex::{embedded_cycles, replay_witness};

    fn reduce(s: &SurfaceSystem, c: &FlagComplex, labels: &[&str]) -> NullHomotopyWitness {
        let cycle = Cycle::from_labels(c, labels).unwrap();
        let out = kakimizu_null_homotopy(s, c, &cycle, HomotopyBounds::default()).unwrap();
        let w = out.witness().expect("trivial").clone();
        replay_witness(c, &w).unwrap();
        w
    }

    #[test]
    fn line_backtrack() {
        let s = line_model(0, 4).unwrap();
        let c = s.build_complex(3);
        let w = reduce(&s, &c, &["u0", "u1", "u2", "u1"]);
        assert!(w.steps.iter().all(|st| matches!(st.mv, Move::Backtrack { .. })));
    }

    #[test]
    fn triangles_fill_in_one_step() {
        let s = lattice_model(3, 3).unwrap();
        let c = s.build_complex(3);
        for cyc in embedded_cycles(&c, 3, 3) {
            let out = kakimizu_null_homotopy(&s, &c, &cyc, HomotopyBounds::default()).unwrap();
            assert_eq!(out.witness().unwrap().len(), 1);
        }
    }

    #[test]
    fn hexagon_around_a_lattice_vertex() {
        let s = lattice_model(5, 5).unwrap();
        let c = s.build_complex(3);
        let ring: Vec<String> =
            [(3, 2), (3, 3), (2, 3), (1, 2), (1, 1), (2, 1)].iter().map(|&(a, b)| LatticeWindow::id(a, b)).collect();
        let labels: Vec<&str> = ring.iter().map(String::as_str).collect();
        let w = reduce(&s, &c, &labels);
        assert!(w.steps.iter().any(|st| matches!(st.mv, Move::Detour { .. })));
        // the generic search agrees
        let cycle = Cycle::from_labels(&c, &labels).unwrap();
        assert!(reduce_cycle_homotopy(&c, &cycle, HomotopyBounds::default()).unwrap().witness().is_some());
    }

    #[test]
    fn every_short_lattice_cycle_reduces() {
        let s = lattice_model(4, 4).unwrap();
        let c = s.build_complex(3);
        for cyc in embedded_cycles(&c, 3, 8) {
            let out = kakimizu_null_homotopy(&s, &c, &cyc, HomotopyBounds::default()).unwrap();
            replay_witness(&c, out.witness().unwrap()).unwrap();
        }
    }

    #[test]
    fn wraparound_at_index_zero() {
        let s = lattice_model(4, 4).unwrap();
        let c = s.build_complex(3);
        // the largest complexity sits first
        reduce(&s, &c, &["x3y2", "x2y1", "x1y1", "x1y2", "x2y3", "x3y3"]);
    }

    #[test]
    fn explicit_systems_use_the_generic_search() {
        let s = lattice_model(3, 3).unwrap();
        let explicit = SurfaceSystem::new(
            s.vertices().to_vec(),
            s.stored_patterns()
                .map(|(a, b, p)| (s.id(a).to_owned(), s.id(b).to_owned(), p.clone()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let c = explicit.build_complex(3);
        let cycle = Cycle::from_labels(&c, &["x0y0", "x1y0", "x2y1", "x2y2", "x1y2", "x0y1"]).unwrap();
        let out = kakimizu_null_homotopy(&explicit, &c, &cycle, HomotopyBounds::default()).unwrap();
        replay_witness(&c, out.witness().unwrap()).unwrap();
    }

    #[test]
    fn budget() {
        assert_eq!(step_budget(6, 49), 2940);
    }
}
