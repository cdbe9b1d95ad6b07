use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::FlagComplex;

/// First integral homology as `Z^free_rank` plus torsion summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1 {
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<u64>,
}

impl H1 {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for H1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" + "))
    }
}

/// Nonzero diagonal entries of the Smith normal form, in divisibility order.
pub fn smith_invariants(matrix: &[Vec<i64>]) -> Vec<u64> {
    let mut a: Vec<Vec<i128>> = matrix.iter().map(|row| row.iter().map(|&x| i128::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&a, t, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // a smaller remainder sits in row or column t
                let (pi, pj) = min_in_cross(&a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            let pivot = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % pivot != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].unsigned_abs() as u64);
    }
    out
}

fn min_nonzero(a: &[Vec<i128>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, &x) in row.iter().enumerate().skip(c0) {
            if x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                best = Some((x.abs(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn min_in_cross(a: &[Vec<i128>], t: usize) -> (usize, usize) {
    let mut best = (a[t][t].abs(), t, t);
    for (i, row) in a.iter().enumerate().skip(t) {
        let x = row[t].abs();
        if x != 0 && x < best.0 {
            best = (x, i, t);
        }
    }
    for (j, &x) in a[t].iter().enumerate().skip(t) {
        if x != 0 && x.abs() < best.0 {
            best = (x.abs(), t, j);
        }
    }
    (best.1, best.2)
}

/// Integral boundary matrices `d1` (vertices by edges) and `d2` (edges by
/// triangles) of the 2-skeleton.
pub(crate) fn boundary_matrices(complex: &FlagComplex) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = complex.num_vertices();
    let edges: Vec<(usize, usize)> = complex.edges().collect();
    let edge_index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let triangles: Vec<Vec<usize>> = complex.cliques(3).into_iter().nth(2).unwrap_or_default();

    let mut d1 = vec![vec![0i64; edges.len()]; n];
    for (k, &(u, v)) in edges.iter().enumerate() {
        d1[u][k] -= 1;
        d1[v][k] += 1;
    }
    let mut d2 = vec![vec![0i64; triangles.len()]; edges.len()];
    for (k, t) in triangles.iter().enumerate() {
        let (a, b, c) = (t[0], t[1], t[2]);
        d2[edge_index[&(b, c)]][k] += 1;
        d2[edge_index[&(a, c)]][k] -= 1;
        d2[edge_index[&(a, b)]][k] += 1;
    }
    (d1, d2)
}

/// `H1` of the complex from the Smith normal forms of the boundary maps.
pub fn homology_h1(complex: &FlagComplex) -> H1 {
    let (d1, d2) = boundary_matrices(complex);
    let edges = complex.num_edges();
    let rank1 = smith_invariants(&d1).len();
    let inv2 = smith_invariants(&d2);
    H1 { free_rank: edges - rank1 - inv2.len(), torsion: inv2.into_iter().filter(|&d| d > 1).collect() }
}

/// The rational span of the triangle boundaries, for testing whether a
/// closed edge path bounds.
///
/// A closed path outside this span is nonzero in `H1`, so it is not
/// null-homotopic. Paths inside it may still carry torsion.
#[derive(Debug, Clone)]
pub struct BoundarySpace {
    edge_index: HashMap<(usize, usize), usize>,
    /// Echelon rows with their pivot columns; each row is zero at the
    /// pivots of the rows before it.
    rows: Vec<(usize, Vec<i128>)>,
    overflowed: bool,
}

impl BoundarySpace {
    pub fn new(complex: &FlagComplex) -> Self {
        let (_, d2) = boundary_matrices(complex);
        let edge_index = complex.edges().enumerate().map(|(i, e)| (e, i)).collect();
        let mut space = BoundarySpace { edge_index, rows: Vec::new(), overflowed: false };
        let cols = d2.first().map_or(0, Vec::len);
        for k in 0..cols {
            let col: Vec<i128> = d2.iter().map(|row| i128::from(row[k])).collect();
            match space.reduce(col) {
                Some(v) => {
                    if let Some(p) = v.iter().position(|&x| x != 0) {
                        space.rows.push((p, v));
                    }
                }
                None => space.overflowed = true,
            }
        }
        space
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates the pivots of all rows from `v`; `None` on overflow.
    fn reduce(&self, mut v: Vec<i128>) -> Option<Vec<i128>> {
        for (p, row) in &self.rows {
            let x = v[*p];
            if x == 0 {
                continue;
            }
            let y = row[*p];
            for (a, &b) in v.iter_mut().zip(row) {
                *a = a.checked_mul(y)?.checked_sub(b.checked_mul(x)?)?;
            }
            let g = v.iter().fold(0i128, |g, &a| gcd(g, a));
            if g > 1 {
                v.iter_mut().for_each(|a| *a /= g);
            }
        }
        Some(v)
    }

    /// Whether the closed edge path through `cycle` is a rational boundary.
    /// Returns `true` whenever that cannot be decided, so `false` is always
    /// a certificate.
    pub fn bounds(&self, cycle: &[usize]) -> bool {
        if self.overflowed {
            return true;
        }
        let mut chain = vec![0i128; self.edge_index.len()];
        let n = cycle.len();
        for i in 0..n {
            let (a, b) = (cycle[i], cycle[(i + 1) % n]);
            if a == b {
                continue;
            }
            let Some(&k) = self.edge_index.get(&(a.min(b), a.max(b))) else { return true };
            chain[k] += if a < b { 1 } else { -1 };
        }
        self.reduce(chain).is_none_or(|v| v.iter().all(|&x| x == 0))
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    /// Rank over the prime field `Z/p` by Gaussian elimination.
    fn rank_mod_p(m: &[Vec<i64>], p: i64) -> usize {
        let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = modpow(a[rank][c], p - 2, p);
            for j in 0..cols {
                a[rank][j] = a[rank][j] * inv % p;
            }
            for r in 0..a.len() {
                if r != rank && a[r][c] != 0 {
                    let f = a[r][c];
                    for j in 0..cols {
                        a[r][j] = (a[r][j] - f * a[rank][j]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn modpow(mut b: i64, mut e: i64, p: i64) -> i64 {
        let mut r = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let (d1, d2) = boundary_matrices(&grid(3, 4));
        for i in 0..d1.len() {
            for k in 0..d2[0].len() {
                let s: i64 = (0..d2.len()).map(|j| d1[i][j] * d2[j][k]).sum();
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn snf_of_small_matrices() {
        assert_eq!(smith_invariants(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_invariants(&[vec![0, 0], vec![0, 0]]), Vec::<u64>::new());
        assert_eq!(smith_invariants(&[vec![4, 6, 8]]), vec![2]);
        assert!(smith_invariants(&[]).is_empty());
    }

    #[test]
    fn solid_triangle_is_acyclic() {
        assert!(homology_h1(&simplex(3)).is_trivial());
        assert!(homology_h1(&simplex(5)).is_trivial());
    }

    #[test]
    fn hexagon_is_a_circle() {
        let h = homology_h1(&cycle_graph(6));
        assert_eq!(h, H1 { free_rank: 1, torsion: vec![] });
        assert_eq!(h.to_string(), "Z");
    }

    #[test]
    fn grid_window_matches_rank_oracle() {
        let g = grid(4, 4);
        let (d1, d2) = boundary_matrices(&g);
        let e = g.num_edges();
        let free = e - rank_mod_p(&d1, 1_000_003) - rank_mod_p(&d2, 1_000_003);
        assert_eq!(free, 0);
        assert!(homology_h1(&g).is_trivial());
    }

    #[test]
    fn octahedron_and_two_circles() {
        assert!(homology_h1(&octahedron()).is_trivial());
        // two squares sharing a vertex
        let g = FlagComplex::from_edges(named(7), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)], 3);
        let h = homology_h1(&g);
        assert_eq!(h.free_rank, 2);
        assert_eq!(h.to_string(), "Z^2");
    }

    #[test]
    fn boundary_space_membership() {
        let hex = cycle_graph(6);
        let space = BoundarySpace::new(&hex);
        assert_eq!(space.rank(), 0);
        assert!(!space.bounds(&[0, 1, 2, 3, 4, 5]));
        // going around twice, or there and back, is still decided correctly
        assert!(!space.bounds(&[0, 1, 2, 3, 4, 5, 0, 1, 2, 3, 4, 5]));
        assert!(space.bounds(&[0, 1, 2, 1]));

        let g = grid(4, 4);
        let space = BoundarySpace::new(&g);
        assert_eq!(space.rank(), rank_mod_p(&boundary_matrices(&g).1, 1_000_003));
        // square around the cell with corner (1, 1)
        assert!(space.bounds(&[5, 9, 10, 6]));

        // two squares sharing a vertex; one square gets filled by a cone
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)];
        edges.extend([(7, 0), (7, 1), (7, 2), (7, 3)]);
        let g = FlagComplex::from_edges(named(8), edges, 3);
        let space = BoundarySpace::new(&g);
        assert!(space.bounds(&[0, 1, 2, 3]));
        assert!(space.bounds(&[3, 2, 1, 0]));
        assert!(!space.bounds(&[0, 4, 5, 6]));
    }

    #[test]
    fn torsion_is_reported() {
        let h = H1 { free_rank: 1, torsion: vec![2] };
        assert_eq!(h.to_string(), "Z + Z/2");
    }
}
