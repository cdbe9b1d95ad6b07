use serde::Serialize;

use super::{induced_cycles, ComplexError, FlagComplex};

/// A diagonal-free short cycle found while testing largeness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LargenessWitness {
    /// Simplex whose link or residue contains the cycle; empty when the
    /// cycle lives in the complex itself.
    pub context: Vec<String>,
    pub cycle: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LargenessCheck {
    pub large: bool,
    pub witness: Option<LargenessWitness>,
}

impl LargenessCheck {
    fn holds() -> Self {
        Self { large: true, witness: None }
    }

    fn fails(context: Vec<String>, cycle: Vec<String>) -> Self {
        Self { large: false, witness: Some(LargenessWitness { context, cycle }) }
    }
}

/// Whether some pair of non-consecutive vertices of the cycle is joined by
/// an edge.
pub fn has_diagonal(complex: &FlagComplex, cycle: &[usize]) -> bool {
    let n = cycle.len();
    (0..n).any(|i| {
        (i + 2..n).any(|j| {
            let consecutive = i == 0 && j == n - 1;
            !consecutive && cycle[i] != cycle[j] && complex.adjacent(cycle[i], cycle[j])
        })
    })
}

/// Shortest diagonal-free cycle with length in `4..k`, smallest first.
fn short_induced_cycle(complex: &FlagComplex, k: usize) -> Option<Vec<usize>> {
    let longest = (k - 1).min(complex.num_vertices());
    (4..=longest).find_map(|len| induced_cycles(complex, len, len).into_iter().next().map(|c| c.into_vertices()))
}

/// `k`-largeness for a flag complex: every embedded cycle of length
/// `4 <= L < k`, in the complex and in the link of every simplex, has a
/// diagonal. On failure the witness is a diagonal-free cycle.
pub fn is_k_large(complex: &FlagComplex, k: usize) -> Result<LargenessCheck, ComplexError> {
    if k < 4 {
        return Err(ComplexError::InvalidK(k));
    }
    if let Some(c) = short_induced_cycle(complex, k) {
        return Ok(LargenessCheck::fails(Vec::new(), complex.labels_of(&c)));
    }
    for sigma in complex.every_simplex() {
        let link = complex.link(&sigma)?;
        if let Some(c) = short_induced_cycle(&link, k) {
            return Ok(LargenessCheck::fails(complex.labels_of(&sigma), link.labels_of(&c)));
        }
    }
    Ok(LargenessCheck::holds())
}

/// The residue of every simplex is `k`-large.
pub fn is_locally_k_large(complex: &FlagComplex, k: usize) -> Result<LargenessCheck, ComplexError> {
    if k < 4 {
        return Err(ComplexError::InvalidK(k));
    }
    for sigma in complex.every_simplex() {
        let residue = complex.residue(&sigma)?;
        let check = is_k_large(&residue, k)?;
        if let Some(w) = check.witness {
            return Ok(LargenessCheck::fails(complex.labels_of(&sigma), w.cycle));
        }
    }
    Ok(LargenessCheck::holds())
}

#[cfg(test)]
mod tests {
    use super::super::embedded_cycles;
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn simplex_is_large_for_every_k() {
        let t = simplex(3);
        for k in 4..12 {
            assert!(is_k_large(&t, k).unwrap().large);
            assert!(is_locally_k_large(&t, k).unwrap().large);
        }
    }

    #[test]
    fn bare_square_fails_at_five() {
        let sq = cycle_graph(4);
        assert!(is_k_large(&sq, 4).unwrap().large);
        for k in 5..9 {
            let check = is_k_large(&sq, k).unwrap();
            assert!(!check.large);
            let w = check.witness.unwrap();
            assert!(w.context.is_empty());
            assert_eq!(w.cycle, vec!["v0", "v1", "v2", "v3"]);
        }
        // residues of a square are paths
        assert!(is_locally_k_large(&sq, 6).unwrap().large);
    }

    #[test]
    fn triangulated_grid_is_six_large() {
        let g = grid(5, 5);
        assert!(is_k_large(&g, 6).unwrap().large);
        assert!(is_locally_k_large(&g, 6).unwrap().large);
        // the hexagonal link of an interior vertex blocks 7-largeness
        let check = is_k_large(&g, 7).unwrap();
        assert!(!check.large);
        assert_eq!(check.witness.unwrap().cycle.len(), 6);
        let local = is_locally_k_large(&g, 7).unwrap();
        assert!(!local.large);
        assert_eq!(local.witness.unwrap().context.len(), 1);
    }

    #[test]
    fn exhaustive_short_cycle_scan_agrees_on_grid() {
        let g = grid(4, 4);
        for c in embedded_cycles(&g, 4, 5) {
            assert!(has_diagonal(&g, c.vertices()), "{:?}", c);
        }
    }

    #[test]
    fn octahedron_is_not_five_large() {
        // its equator has no diagonal even though it bounds through a pole
        let o = octahedron();
        assert!(is_k_large(&o, 4).unwrap().large);
        assert!(!is_k_large(&o, 5).unwrap().large);
    }

    #[test]
    fn small_k_is_rejected() {
        assert_eq!(is_k_large(&simplex(2), 3), Err(ComplexError::InvalidK(3)));
        assert_eq!(is_locally_k_large(&simplex(2), 2), Err(ComplexError::InvalidK(2)));
    }

    #[test]
    fn diagonal_detection() {
        let g = grid(3, 3);
        // square 0-1-4-3 has diagonal 0-4
        assert!(has_diagonal(&g, &[0, 1, 4, 3]));
        assert!(!has_diagonal(&cycle_graph(6), &[0, 1, 2, 3, 4, 5]));
        assert!(!has_diagonal(&g, &[0, 1, 4]));
    }
}
