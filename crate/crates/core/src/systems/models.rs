//! Generated systems: the line and lattice models, and systems read off a
//! connected graph.
//!
//! Model patterns are unit runs: a pair at graph distance `d` meets in the
//! translates `1..=d-1`, one curve each. Graph-derived systems reproduce the
//! input graph as their disjointness graph by construction, so they exercise
//! the pipeline rather than any property of real surfaces.

use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Complexity, Model, SurfaceSystem, SystemError, Vertex};
use crate::pattern::OffsetPattern;

pub fn line_id(n: i64) -> String {
    format!("u{n}")
}

/// Vertices `u{n}` for `n_min <= n <= n_max`; `u_m` and `u_n` meet in
/// `|m - n| - 1` translates. Complexity `(n^2, 0)`.
pub fn line_model(n_min: i64, n_max: i64) -> Result<SurfaceSystem, SystemError> {
    if n_min > n_max {
        return Err(SystemError::EmptyWindow);
    }
    let vertices = (n_min..=n_max)
        .map(|n| Vertex { id: line_id(n), complexity: Complexity(n.unsigned_abs().pow(2), 0) })
        .collect();
    let mut patterns = Vec::new();
    for m in n_min..=n_max {
        for n in m + 2..=n_max {
            patterns.push((line_id(m), line_id(n), OffsetPattern::unit_run((n - m - 1) as usize)));
        }
    }
    Ok(SurfaceSystem::new(vertices, patterns)?.with_model(Model::Line { min: n_min, max: n_max }))
}

/// A rectangle of the triangulated plane, with `(a, b)` adjacent to
/// `(a ± 1, b)`, `(a, b ± 1)` and `(a ± 1, b ± 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeWindow {
    pub a_min: i64,
    pub a_max: i64,
    pub b_min: i64,
    pub b_max: i64,
}

impl LatticeWindow {
    pub fn id(a: i64, b: i64) -> String {
        format!("x{a}y{b}")
    }

    /// Parses an id of the form `x{a}y{b}`.
    pub fn coords(id: &str) -> Option<(i64, i64)> {
        let rest = id.strip_prefix('x')?;
        let (a, b) = rest.split_once('y')?;
        Some((a.parse().ok()?, b.parse().ok()?))
    }

    pub fn width(&self) -> u64 {
        (self.a_max - self.a_min + 1).max(0) as u64
    }

    pub fn height(&self) -> u64 {
        (self.b_max - self.b_min + 1).max(0) as u64
    }

    pub fn contains(&self, (a, b): (i64, i64)) -> bool {
        (self.a_min..=self.a_max).contains(&a) && (self.b_min..=self.b_max).contains(&b)
    }

    /// Points in system order: `a` major, `b` minor.
    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.a_min..=self.a_max).flat_map(move |a| (self.b_min..=self.b_max).map(move |b| (a, b)))
    }
}

/// Graph distance in the triangulated plane.
pub fn lattice_distance((a, b): (i64, i64), (c, d): (i64, i64)) -> u64 {
    let (da, db) = (c - a, d - b);
    if da.signum() * db.signum() >= 0 {
        da.unsigned_abs().max(db.unsigned_abs())
    } else {
        da.unsigned_abs() + db.unsigned_abs()
    }
}

/// The norm `a^2 + b^2 - ab`, positive away from the origin.
pub(super) fn lattice_complexity((a, b): (i64, i64)) -> Complexity {
    Complexity((a * a + b * b - a * b) as u64, 0)
}

pub fn lattice_window(a_min: i64, a_max: i64, b_min: i64, b_max: i64) -> Result<SurfaceSystem, SystemError> {
    let window = LatticeWindow { a_min, a_max, b_min, b_max };
    if window.width() < 2 || window.height() < 2 {
        return Err(SystemError::DegenerateWindow(window.width(), window.height()));
    }
    let points: Vec<_> = window.points().collect();
    let vertices =
        points.iter().map(|&p| Vertex { id: LatticeWindow::id(p.0, p.1), complexity: lattice_complexity(p) }).collect();
    let mut patterns = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let d = lattice_distance(p, q);
            if d > 1 {
                let (u, v) = (LatticeWindow::id(p.0, p.1), LatticeWindow::id(q.0, q.1));
                let (u, v) = if u < v { (u, v) } else { (v, u) };
                patterns.push((u, v, OffsetPattern::unit_run((d - 1) as usize)));
            }
        }
    }
    Ok(SurfaceSystem::new(vertices, patterns)?.with_model(Model::Lattice { a_min, a_max, b_min, b_max }))
}

/// The window `0..width` by `0..height`.
pub fn lattice_model(width: u64, height: u64) -> Result<SurfaceSystem, SystemError> {
    if width < 2 || height < 2 {
        return Err(SystemError::DegenerateWindow(width, height));
    }
    lattice_window(0, width as i64 - 1, 0, height as i64 - 1)
}

pub fn graph_id(i: usize) -> String {
    format!("g{i}")
}

/// Vertex `g{i}` for node `i`; a pair at distance `d` gets the unit run of
/// length `d - 1`. All complexities are zero and there is no double curve
/// sum.
pub fn graph_to_system(graph: &UnGraph<(), ()>) -> Result<SurfaceSystem, SystemError> {
    let n = graph.node_count();
    let vertices = (0..n).map(|i| Vertex { id: graph_id(i), complexity: Complexity::default() }).collect();
    let mut patterns = Vec::new();
    for i in 0..n {
        let dist = dijkstra(graph, NodeIndex::new(i), None, |_| 1u64);
        if dist.len() != n {
            return Err(SystemError::Disconnected);
        }
        for j in i + 1..n {
            let d = dist[&NodeIndex::new(j)];
            if d > 1 {
                let (u, v) = (graph_id(i), graph_id(j));
                let (u, v) = if u < v { (u, v) } else { (v, u) };
                patterns.push((u, v, OffsetPattern::unit_run((d - 1) as usize)));
            }
        }
    }
    SurfaceSystem::new(vertices, patterns)
}

/// A random spanning tree on `n` nodes plus each remaining pair with
/// probability `p`.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> UnGraph<(), ()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = UnGraph::with_capacity(n, n);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for i in 1..n {
        let j = rng.random_range(0..i);
        graph.add_edge(nodes[j], nodes[i], ());
    }
    let p = p.clamp(0.0, 1.0);
    for i in 0..n {
        for j in i + 1..n {
            if graph.find_edge(nodes[i], nodes[j]).is_none() && rng.random_bool(p) {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    graph
}
