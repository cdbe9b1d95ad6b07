//! Flag complexes over a disjointness graph.
//!
//! The Kakimizu complex has a face for every tuple of pairwise disjoint
//! surfaces, so it is determined by its 1-skeleton: simplices are exactly
//! the cliques. [`FlagComplex`] stores the graph and materializes cliques up
//! to a dimension cap; anything above the cap is still reachable through
//! [`FlagComplex::cliques`].

mod cycles;
mod homology;
mod homotopy;
mod large;
mod report;

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

pub use cycles::{embedded_cycles, induced_cycles, Cycle};
pub use homology::{homology_h1, smith_invariants, BoundarySpace, H1};
pub use homotopy::{
    apply_move, normalize_cycle, reduce_cycle_homotopy, replay_witness, HomotopyBounds, Move, NullHomotopyWitness,
    SearchOutcome, Step,
};
pub use large::{has_diagonal, is_k_large, is_locally_k_large, LargenessCheck, LargenessWitness};
pub use report::{contractibility_report, contractibility_report_with, Conclusion, ContractibilityReport};

pub const DEFAULT_MAX_DIM: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("not a simplex: {0:?}")]
    NotASimplex(Vec<String>),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("largeness is only defined for k >= 4, got {0}")]
    InvalidK(usize),
    #[error("simplex list is not flag: clique {0:?} is missing")]
    NotFlag(Vec<String>),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid move {mv:?} on {cycle:?}: {reason}")]
    InvalidMove { mv: Move, cycle: Vec<usize>, reason: String },
}

/// A simplex as a sorted list of vertex indices.
pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagComplex {
    labels: Vec<String>,
    neighbors: Vec<Vec<usize>>,
    adjacency: Vec<bool>,
    max_dim: usize,
    /// `simplices[d]` holds the `d`-simplices, each sorted, in lexicographic order.
    simplices: Vec<Vec<Simplex>>,
}

impl FlagComplex {
    /// Builds the flag complex of a graph. Edges are deduplicated; loops are
    /// dropped.
    pub fn from_edges(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>, max_dim: usize) -> Self {
        let n = labels.len();
        let mut adjacency = vec![false; n * n];
        let mut sets = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range");
            if u == v {
                continue;
            }
            adjacency[u * n + v] = true;
            adjacency[v * n + u] = true;
            sets[u].insert(v);
            sets[v].insert(u);
        }
        let neighbors = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut complex = Self { labels, neighbors, adjacency, max_dim, simplices: Vec::new() };
        complex.simplices = complex.cliques(max_dim + 1);
        complex
    }

    /// Parses the plain-text simplex list format and checks that the listed
    /// simplices are exactly the cliques of their 1-skeleton.
    pub fn from_simplex_list(text: &str) -> Result<Self, ComplexError> {
        let mut labels: Vec<String> = Vec::new();
        let mut listed: BTreeSet<Vec<String>> = BTreeSet::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut ids: Vec<String> = line.split_whitespace().map(str::to_owned).collect();
            ids.sort();
            if ids.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::Parse { line: i + 1, message: "repeated vertex in simplex".into() });
            }
            for id in &ids {
                if !labels.contains(id) {
                    labels.push(id.clone());
                }
            }
            listed.insert(ids);
        }
        labels.sort();
        let index = |id: &String| labels.binary_search(id).unwrap();

        // every face of a listed simplex is implied
        let mut closed: BTreeSet<Vec<String>> = BTreeSet::new();
        for s in &listed {
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<String> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| s[b].clone()).collect();
                closed.insert(face);
            }
        }
        let top = closed.iter().map(Vec::len).max().unwrap_or(1);
        let edges: Vec<(usize, usize)> =
            closed.iter().filter(|s| s.len() == 2).map(|s| (index(&s[0]), index(&s[1]))).collect();
        let complex = Self::from_edges(labels.clone(), edges, top.saturating_sub(1).max(1));
        for size in 1..=top + 1 {
            for clique in complex.cliques_of_size(size) {
                let named: Vec<String> = clique.iter().map(|&v| labels[v].clone()).collect();
                if !closed.contains(&named) {
                    return Err(ComplexError::NotFlag(named));
                }
            }
        }
        Ok(complex)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize, ComplexError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| ComplexError::UnknownVertex(label.to_owned()))
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u * self.labels.len() + v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn num_edges(&self) -> usize {
        self.edges().count()
    }

    /// Materialized simplices of dimension `d` (empty above the cap).
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All materialized simplices, by dimension.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    /// Cliques of size `1..=max_size`, grouped by dimension.
    pub fn cliques(&self, max_size: usize) -> Vec<Vec<Simplex>> {
        let mut out: Vec<Vec<Simplex>> = Vec::new();
        let mut current = Vec::new();
        for v in 0..self.num_vertices() {
            current.push(v);
            let candidates: Vec<usize> = self.neighbors[v].iter().copied().filter(|&w| w > v).collect();
            self.extend_cliques(&mut current, &candidates, max_size, &mut out);
            current.pop();
        }
        for level in &mut out {
            level.sort();
        }
        out
    }

    fn extend_cliques(
        &self,
        current: &mut Vec<usize>,
        candidates: &[usize],
        max_size: usize,
        out: &mut Vec<Vec<Simplex>>,
    ) {
        let d = current.len() - 1;
        if out.len() <= d {
            out.resize(d + 1, Vec::new());
        }
        out[d].push(current.clone());
        if current.len() == max_size {
            return;
        }
        for (i, &w) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..].iter().copied().filter(|&x| self.adjacent(w, x)).collect();
            current.push(w);
            self.extend_cliques(current, &next, max_size, out);
            current.pop();
        }
    }

    fn cliques_of_size(&self, size: usize) -> Vec<Simplex> {
        self.cliques(size).into_iter().nth(size - 1).unwrap_or_default()
    }

    /// Every simplex regardless of the materialization cap.
    pub fn every_simplex(&self) -> Vec<Simplex> {
        self.cliques(usize::MAX).into_iter().flatten().collect()
    }

    /// Dimension of the complex (size of the largest clique minus one).
    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        if self.num_vertices() == 0 {
            return None;
        }
        let mut best = 1;
        let mut current = Vec::new();
        for v in 0..self.num_vertices() {
            let candidates: Vec<usize> = self.neighbors[v].iter().copied().filter(|&w| w > v).collect();
            current.push(v);
            self.max_clique(&mut current, &candidates, &mut best);
            current.pop();
        }
        Some(best - 1)
    }

    fn max_clique(&self, current: &mut Vec<usize>, candidates: &[usize], best: &mut usize) {
        *best = (*best).max(current.len());
        if current.len() + candidates.len() <= *best {
            return;
        }
        for (i, &w) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..].iter().copied().filter(|&x| self.adjacent(w, x)).collect();
            current.push(w);
            self.max_clique(current, &next, best);
            current.pop();
        }
    }

    pub fn is_simplex(&self, sigma: &[usize]) -> bool {
        if sigma.is_empty() || sigma.iter().any(|&v| v >= self.num_vertices()) {
            return false;
        }
        sigma.iter().enumerate().all(|(i, &u)| sigma[i + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }

    fn check_simplex(&self, sigma: &[usize]) -> Result<(), ComplexError> {
        if self.is_simplex(sigma) {
            Ok(())
        } else {
            Err(ComplexError::NotASimplex(
                sigma.iter().map(|&v| self.labels.get(v).cloned().unwrap_or_else(|| format!("#{v}"))).collect(),
            ))
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), ComplexError> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(ComplexError::UnknownVertex(format!("#{v}")))
        }
    }

    /// Full subcomplex spanned by `vertices`, which must be sorted and
    /// distinct. Local vertex `i` is `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[usize]) -> FlagComplex {
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    edges.push((i, j));
                }
            }
        }
        FlagComplex::from_edges(labels, edges, self.max_dim)
    }

    /// Vertices adjacent to every vertex of `sigma` and not in it.
    pub fn common_neighbors(&self, sigma: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = sigma.split_first() else {
            return (0..self.num_vertices()).collect();
        };
        self.neighbors[first].iter().copied().filter(|&w| rest.iter().all(|&v| self.adjacent(v, w))).collect()
    }

    /// Breadth-first distance over the 1-skeleton. `Ok(None)` when the two
    /// vertices lie in different components.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>, ComplexError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs_from(u)[v])
    }

    /// Distances from `source` to every vertex.
    pub fn bfs_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_vertices()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.neighbors[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// A shortest path from `from` to `to`. Ties go to the smallest vertex
    /// index at every step.
    pub fn shortest_path(&self, from: usize, to: usize) -> Result<Option<Vec<usize>>, ComplexError> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        let dist = self.bfs_from(to);
        let Some(mut remaining) = dist[from] else {
            return Ok(None);
        };
        let mut path = vec![from];
        let mut at = from;
        while remaining > 0 {
            at = *self.neighbors[at]
                .iter()
                .find(|&&w| dist[w] == Some(remaining - 1))
                .expect("bfs layers are consistent");
            path.push(at);
            remaining -= 1;
        }
        Ok(Some(path))
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices() == 0 || self.bfs_from(0).iter().all(Option::is_some)
    }

    /// The link of `sigma`: for a flag complex, the full subcomplex on the
    /// common neighbors of its vertices.
    pub fn link(&self, sigma: &[usize]) -> Result<FlagComplex, ComplexError> {
        self.check_simplex(sigma)?;
        Ok(self.induced(&self.common_neighbors(sigma)))
    }

    /// The residue of `sigma`: the union of simplices containing it, which is
    /// the join of `sigma` with its link.
    pub fn residue(&self, sigma: &[usize]) -> Result<FlagComplex, ComplexError> {
        self.check_simplex(sigma)?;
        let mut vertices: Vec<usize> = self.common_neighbors(sigma);
        vertices.extend_from_slice(sigma);
        vertices.sort_unstable();
        Ok(self.induced(&vertices))
    }

    /// Graphviz rendering of the 1-skeleton.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph kakimizu {\n");
        for label in &self.labels {
            let _ = writeln!(out, "  {};", quote(label));
        }
        let mut edges: Vec<(&str, &str)> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.label(u), self.label(v));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        edges.sort();
        for (a, b) in edges {
            let _ = writeln!(out, "  {} -- {};", quote(a), quote(b));
        }
        out.push_str("}\n");
        out
    }

    /// One materialized simplex per line, ids sorted within a line, lines
    /// ordered by dimension and then lexicographically.
    pub fn to_simplex_list(&self) -> String {
        let mut out = String::new();
        for level in &self.simplices {
            let mut lines: Vec<Vec<&str>> = level
                .iter()
                .map(|s| {
                    let mut ids: Vec<&str> = s.iter().map(|&v| self.label(v)).collect();
                    ids.sort();
                    ids
                })
                .collect();
            lines.sort();
            for ids in lines {
                out.push_str(&ids.join(" "));
                out.push('\n');
            }
        }
        out
    }

    pub fn labels_of(&self, vertices: &[usize]) -> Vec<String> {
        vertices.iter().map(|&v| self.labels[v].clone()).collect()
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn brute_distance(c: &FlagComplex, u: usize, v: usize) -> Option<usize> {
        // frontier expansion over explicit vertex sets
        let mut seen = BTreeSet::from([u]);
        let mut frontier = vec![u];
        let mut d = 0;
        loop {
            if frontier.contains(&v) {
                return Some(d);
            }
            let next: Vec<usize> = (0..c.num_vertices())
                .filter(|&x| !seen.contains(&x) && frontier.iter().any(|&f| c.adjacent(f, x)))
                .collect();
            if next.is_empty() {
                return None;
            }
            seen.extend(next.iter().copied());
            frontier = next;
            d += 1;
        }
    }

    #[test]
    fn single_point() {
        let c = FlagComplex::from_edges(vec!["a".into()], [], 3);
        assert_eq!(c.dimension(), Some(0));
        assert_eq!(c.simplices(0).len(), 1);
        assert_eq!(c.distance(0, 0).unwrap(), Some(0));
    }

    #[test]
    fn triangle_materializes_two_simplex() {
        let c = simplex(3);
        assert_eq!(c.simplices(1).len(), 3);
        assert_eq!(c.simplices(2), &[vec![0, 1, 2]]);
        assert_eq!(c.dimension(), Some(2));
        assert_eq!(c.distance(0, 1).unwrap(), Some(1));
    }

    #[test]
    fn dimension_above_cap_is_still_measured() {
        let c = FlagComplex::from_edges(named(6), (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))), 2);
        assert_eq!(c.dimension(), Some(5));
        assert!(c.simplices(3).is_empty());
        assert_eq!(c.every_simplex().len(), 63);
    }

    #[test]
    fn grid_cliques_are_unit_triangles() {
        let c = grid(3, 3);
        assert_eq!(c.num_edges(), 16);
        assert_eq!(c.simplices(2).len(), 8);
        assert!(c.simplices(3).is_empty());
        // each triangle is a lower or upper unit right triangle
        for t in c.simplices(2) {
            let pts: Vec<(usize, usize)> = t.iter().map(|&i| (i / 3, i % 3)).collect();
            let (a0, b0) = pts[0];
            let lower = pts == vec![(a0, b0), (a0 + 1, b0), (a0 + 1, b0 + 1)];
            let upper = pts == vec![(a0, b0), (a0, b0 + 1), (a0 + 1, b0 + 1)];
            assert!(lower || upper, "{pts:?}");
        }
    }

    #[test]
    fn every_small_clique_is_materialized() {
        let c = grid(4, 3);
        let n = c.num_vertices();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                for d in b + 1..n {
                    if c.adjacent(a, b) && c.adjacent(a, d) && c.adjacent(b, d) {
                        count += 1;
                        assert!(c.simplices(2).contains(&vec![a, b, d]));
                    }
                }
            }
        }
        assert_eq!(count, c.simplices(2).len());
    }

    #[test]
    fn distances_match_brute_force() {
        let c = grid(4, 5);
        for u in 0..c.num_vertices() {
            for v in 0..c.num_vertices() {
                assert_eq!(c.distance(u, v).unwrap(), brute_distance(&c, u, v));
            }
        }
        let path = FlagComplex::from_edges(named(5), (0..4).map(|i| (i, i + 1)), 3);
        assert_eq!(path.distance(0, 4).unwrap(), Some(4));
        let split = FlagComplex::from_edges(named(3), [(0, 1)], 3);
        assert_eq!(split.distance(0, 2).unwrap(), None);
        assert!(matches!(split.distance(0, 9), Err(ComplexError::UnknownVertex(_))));
    }

    #[test]
    fn distance_is_a_metric() {
        for c in [grid(3, 4), octahedron(), cycle_graph(7)] {
            let n = c.num_vertices();
            let d = |u, v| c.distance(u, v).unwrap().unwrap();
            for u in 0..n {
                for v in 0..n {
                    assert_eq!(d(u, v), d(v, u));
                    assert_eq!(d(u, v) == 0, u == v);
                    for w in 0..n {
                        assert!(d(u, w) <= d(u, v) + d(v, w));
                    }
                }
            }
        }
    }

    #[test]
    fn shortest_path_prefers_small_ids() {
        let c = cycle_graph(4);
        assert_eq!(c.shortest_path(0, 2).unwrap(), Some(vec![0, 1, 2]));
        let g = grid(3, 3);
        let p = g.shortest_path(0, 8).unwrap().unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.windows(2).all(|w| g.adjacent(w[0], w[1])));
    }

    #[test]
    fn links_in_small_complexes() {
        let t = simplex(3);
        let l = t.link(&[0]).unwrap();
        assert_eq!(l.labels(), &["v1", "v2"]);
        assert_eq!(l.num_edges(), 1);
        assert_eq!(t.link(&[0, 1, 2]).unwrap().num_vertices(), 0);

        let g = grid(3, 3);
        let centre = g.link(&[4]).unwrap();
        assert_eq!(centre.num_vertices(), 6);
        assert_eq!(centre.num_edges(), 6);
        assert!((0..6).all(|v| centre.neighbors(v).len() == 2));
        assert!(centre.is_connected());

        assert!(matches!(g.link(&[0, 8]), Err(ComplexError::NotASimplex(_))));
    }

    /// Residue computed by scanning every simplex that contains `sigma`.
    fn residue_by_scan(c: &FlagComplex, sigma: &[usize]) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for s in c.every_simplex() {
            if sigma.iter().all(|v| s.contains(v)) {
                let k = s.len();
                for mask in 1u32..(1 << k) {
                    out.insert((0..k).filter(|b| mask & (1 << b) != 0).map(|b| s[b]).collect());
                }
            }
        }
        out
    }

    #[test]
    fn residue_is_join_with_link() {
        for c in [grid(3, 4), octahedron(), simplex(4), cycle_graph(6)] {
            for sigma in c.every_simplex() {
                let res = c.residue(&sigma).unwrap();
                let link = c.link(&sigma).unwrap();
                assert_eq!(res.num_vertices(), sigma.len() + link.num_vertices());
                let vertices: Vec<usize> = res.labels().iter().map(|l| c.vertex(l).unwrap()).collect();
                let lifted: BTreeSet<Vec<usize>> = res
                    .every_simplex()
                    .into_iter()
                    .map(|s| {
                        let mut g: Vec<usize> = s.iter().map(|&i| vertices[i]).collect();
                        g.sort();
                        g
                    })
                    .collect();
                assert_eq!(lifted, residue_by_scan(&c, &sigma), "sigma {sigma:?}");
            }
        }
    }

    #[test]
    fn triangles_in_flag_complexes_are_filled() {
        for c in [grid(4, 4), octahedron(), simplex(5)] {
            for cyc in embedded_cycles(&c, 3, 3) {
                let mut s = cyc.vertices().to_vec();
                s.sort();
                assert!(c.simplices(2).contains(&s));
            }
        }
    }

    #[test]
    fn dot_and_simplex_list_exports() {
        let c = FlagComplex::from_edges(vec!["b".into(), "a".into(), "c".into()], [(0, 1), (1, 2), (0, 2)], 3);
        assert_eq!(
            c.to_dot(),
            "graph kakimizu {\n  \"b\";\n  \"a\";\n  \"c\";\n  \"a\" -- \"b\";\n  \"a\" -- \"c\";\n  \"b\" -- \"c\";\n}\n"
        );
        assert_eq!(c.to_simplex_list(), "a\nb\nc\na b\na c\nb c\na b c\n");
        let back = FlagComplex::from_simplex_list(&c.to_simplex_list()).unwrap();
        assert_eq!(back.num_edges(), 3);
        assert_eq!(back.simplices(2).len(), 1);
    }

    #[test]
    fn hollow_triangle_list_is_not_flag() {
        let err = FlagComplex::from_simplex_list("a b\nb c\na c\n").unwrap_err();
        assert_eq!(err, ComplexError::NotFlag(vec!["a".into(), "b".into(), "c".into()]));
        assert!(matches!(FlagComplex::from_simplex_list("a a\n"), Err(ComplexError::Parse { line: 1, .. })));
    }
}
