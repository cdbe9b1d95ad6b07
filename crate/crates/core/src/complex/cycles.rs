use super::{ComplexError, FlagComplex};

/// A closed edge path. The last vertex is implicitly joined to the first.
///
/// Consecutive vertices must be adjacent. A single vertex is the constant
/// cycle; otherwise the length is at least three. Vertices may repeat, so
/// closed walks with backtracking are cycles too.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new(complex: &FlagComplex, vertices: Vec<usize>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::NotACycle("no vertices".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= complex.num_vertices()) {
            return Err(ComplexError::UnknownVertex(format!("#{v}")));
        }
        if vertices.len() == 2 {
            return Err(ComplexError::NotACycle("a cycle needs one or at least three vertices".into()));
        }
        if vertices.len() > 1 {
            let n = vertices.len();
            for i in 0..n {
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                if !complex.adjacent(a, b) {
                    return Err(ComplexError::NotACycle(format!(
                        "{} and {} are not adjacent",
                        complex.label(a),
                        complex.label(b)
                    )));
                }
            }
        }
        Ok(Self(vertices))
    }

    /// Parses a list of vertex labels.
    pub fn from_labels<S: AsRef<str>>(complex: &FlagComplex, labels: &[S]) -> Result<Self, ComplexError> {
        let vertices = labels.iter().map(|l| complex.vertex(l.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Self::new(complex, vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        if self.0.len() == 1 {
            0
        } else {
            self.0.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// No vertex repeats.
    pub fn is_embedded(&self) -> bool {
        let mut seen = self.0.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }
}

/// Every embedded cycle with length in `min_len..=max_len`, each listed
/// once. A cycle starts at its smallest vertex and is traversed towards the
/// smaller of that vertex's two cycle neighbors.
pub fn embedded_cycles(complex: &FlagComplex, min_len: usize, max_len: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..complex.num_vertices() {
        path.push(s);
        walk(complex, &mut path, min_len.max(3), max_len, false, &mut out);
        path.pop();
    }
    out
}

/// Embedded cycles with no diagonal (chordless cycles), length in
/// `min_len..=max_len`, each listed once.
pub fn induced_cycles(complex: &FlagComplex, min_len: usize, max_len: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..complex.num_vertices() {
        path.push(s);
        walk(complex, &mut path, min_len.max(3), max_len, true, &mut out);
        path.pop();
    }
    out
}

fn walk(
    complex: &FlagComplex,
    path: &mut Vec<usize>,
    min_len: usize,
    max_len: usize,
    induced: bool,
    out: &mut Vec<Cycle>,
) {
    let start = path[0];
    let last = *path.last().unwrap();
    for &w in complex.neighbors(last) {
        if w <= start || path.contains(&w) {
            continue;
        }
        let closes = complex.adjacent(w, start);
        if induced {
            // w may only touch its predecessor and, when closing, the start
            let interior = if path.len() > 1 { &path[1..path.len() - 1] } else { &[][..] };
            if interior.iter().any(|&x| complex.adjacent(x, w)) {
                continue;
            }
        }
        let len = path.len() + 1;
        if closes && len >= 3 && len >= min_len && len <= max_len && path[1] < w {
            let mut cycle = path.clone();
            cycle.push(w);
            out.push(Cycle(cycle));
        }
        if induced && closes && len >= 3 {
            // extending would leave the chord w-start inside the cycle
            continue;
        }
        if len < max_len {
            path.push(w);
            walk(complex, path, min_len, max_len, induced, out);
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn brute_embedded(c: &FlagComplex, len: usize, induced: bool) -> usize {
        // count vertex sequences and divide out the 2 * len symmetries
        fn rec(c: &FlagComplex, seq: &mut Vec<usize>, len: usize, induced: bool, count: &mut usize) {
            if seq.len() == len {
                let n = seq.len();
                if !c.adjacent(seq[n - 1], seq[0]) {
                    return;
                }
                if induced {
                    for i in 0..n {
                        for j in i + 1..n {
                            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
                            if !consecutive && c.adjacent(seq[i], seq[j]) {
                                return;
                            }
                        }
                    }
                }
                *count += 1;
                return;
            }
            for v in 0..c.num_vertices() {
                if seq.contains(&v) {
                    continue;
                }
                if let Some(&l) = seq.last() {
                    if !c.adjacent(l, v) {
                        continue;
                    }
                }
                seq.push(v);
                rec(c, seq, len, induced, count);
                seq.pop();
            }
        }
        let mut count = 0;
        rec(c, &mut Vec::new(), len, induced, &mut count);
        count / (2 * len)
    }

    #[test]
    fn cycle_counts_match_brute_force() {
        for c in [grid(3, 3), octahedron(), simplex(5), cycle_graph(6)] {
            for len in 3..=6 {
                assert_eq!(embedded_cycles(&c, len, len).len(), brute_embedded(&c, len, false), "len {len}");
                assert_eq!(induced_cycles(&c, len, len).len(), brute_embedded(&c, len, true), "induced len {len}");
            }
        }
    }

    #[test]
    fn octahedron_equator_is_induced() {
        let found = induced_cycles(&octahedron(), 4, 4);
        assert_eq!(found.len(), 3);
        assert!(found.iter().all(|c| c.len() == 4 && c.is_embedded()));
    }

    #[test]
    fn cycle_validation() {
        let c = cycle_graph(5);
        assert!(Cycle::new(&c, vec![0, 1, 2, 3, 4]).is_ok());
        assert!(Cycle::new(&c, vec![3]).unwrap().is_empty());
        assert!(matches!(Cycle::new(&c, vec![0, 2, 3]), Err(ComplexError::NotACycle(_))));
        assert!(matches!(Cycle::new(&c, vec![0, 1]), Err(ComplexError::NotACycle(_))));
        assert!(matches!(Cycle::new(&c, vec![0, 7, 1]), Err(ComplexError::UnknownVertex(_))));
        let walk = Cycle::new(&c, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(walk.len(), 4);
        assert!(!walk.is_embedded());
    }
}
