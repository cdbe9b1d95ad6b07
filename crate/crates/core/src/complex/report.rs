use serde::Serialize;

use super::{
    homology_h1, is_locally_k_large, reduce_cycle_homotopy, Cycle, FlagComplex, HomotopyBounds, LargenessWitness,
    SearchOutcome, H1,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// At most 2-dimensional, connected, locally 6-large and simply connected.
    Contractible,
    /// The criterion does not apply. This never means "not contractible".
    NoConclusion,
}

impl Conclusion {
    pub fn describe(self) -> &'static str {
        match self {
            Conclusion::Contractible => "contractible (dimension at most 2, locally 6-large, simply connected)",
            Conclusion::NoConclusion => "no conclusion from this criterion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractibilityReport {
    pub dimension: Option<usize>,
    pub connected: bool,
    pub locally_6_large: bool,
    pub local_witness: Option<LargenessWitness>,
    pub h1: H1,
    /// Fundamental cycles of a spanning tree, and how many of them received
    /// a null-homotopy witness.
    pub generators: usize,
    pub generators_certified: usize,
    pub conclusion: Conclusion,
}

/// Closed paths through each non-tree edge of a breadth-first spanning tree
/// rooted at vertex 0. Their classes generate the fundamental group.
pub(crate) fn fundamental_cycles(complex: &FlagComplex) -> Vec<Vec<usize>> {
    let n = complex.num_vertices();
    if n == 0 {
        return Vec::new();
    }
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    depth[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &y in complex.neighbors(x) {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut out = Vec::new();
    for (x, y) in complex.edges() {
        if depth[x] == usize::MAX || parent[x] == y || parent[y] == x {
            continue;
        }
        // climb to the lowest common ancestor
        let (mut a, mut b) = (vec![x], vec![y]);
        let (mut i, mut j) = (x, y);
        while i != j {
            if depth[i] >= depth[j] {
                i = parent[i];
                a.push(i);
            } else {
                j = parent[j];
                b.push(j);
            }
        }
        // a ends at the ancestor; b ends there too
        b.pop();
        let mut cycle: Vec<usize> = a.into_iter().rev().collect();
        cycle.extend(b);
        out.push(cycle);
    }
    out
}

pub fn contractibility_report(complex: &FlagComplex) -> ContractibilityReport {
    contractibility_report_with(complex, HomotopyBounds::default())
}

pub fn contractibility_report_with(complex: &FlagComplex, bounds: HomotopyBounds) -> ContractibilityReport {
    let dimension = complex.dimension();
    let connected = complex.is_connected() && complex.num_vertices() > 0;
    let local = is_locally_k_large(complex, 6).expect("k = 6 is valid");
    let h1 = homology_h1(complex);

    let mut generators = 0;
    let mut certified = 0;
    let applies = dimension.is_some_and(|d| d <= 2) && connected && local.large && h1.is_trivial();
    if applies {
        for cycle in fundamental_cycles(complex) {
            generators += 1;
            let cycle = Cycle::new(complex, cycle).expect("tree cycles are closed paths");
            if let Ok(SearchOutcome::Trivial(_)) = reduce_cycle_homotopy(complex, &cycle, bounds) {
                certified += 1;
            }
        }
    }
    let conclusion =
        if applies && certified == generators { Conclusion::Contractible } else { Conclusion::NoConclusion };
    ContractibilityReport {
        dimension,
        connected,
        locally_6_large: local.large,
        local_witness: local.witness,
        h1,
        generators,
        generators_certified: certified,
        conclusion,
    }
}
