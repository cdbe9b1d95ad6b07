//! Checks of the structural claims about a system and its complex, with a
//! three-way verdict per claim.
//!
//! Bounded homotopy searches that run out of budget are reported as
//! inconclusive, never as failures: they do not show that a cycle is
//! nontrivial.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::complex::{
    contractibility_report_with, embedded_cycles, has_diagonal, homology_h1, induced_cycles, reduce_cycle_homotopy,
    replay_witness, BoundarySpace, Conclusion, SearchOutcome,
};
use crate::systems::{kakimizu_null_homotopy, ReductionOutcome};
use crate::{FlagComplex, HomotopyBounds, SurfaceSystem, H1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        }
    }
}

/// One offending or undecided instance. `subject` names the vertices
/// involved: a pair, a simplex, or a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub subject: Vec<String>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<H1>,
}

impl Finding {
    fn new(subject: Vec<String>, detail: impl Into<String>) -> Self {
        Self { subject, detail: detail.into(), cycle: None, h1: None }
    }

    fn with_cycle(mut self, cycle: Vec<String>) -> Self {
        self.cycle = Some(cycle);
        self
    }

    fn with_h1(mut self, h1: H1) -> Self {
        self.h1 = Some(h1);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub claim: &'static str,
    pub statement: &'static str,
    pub instances: usize,
    pub verdict: Verdict,
    pub failures: Vec<Finding>,
    pub inconclusive: Vec<Finding>,
    pub notes: Vec<String>,
    /// Wall time; left out of the JSON so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ClaimReport {
    fn start(claim: &'static str, statement: &'static str) -> Self {
        Self {
            claim,
            statement,
            instances: 0,
            verdict: Verdict::Pass,
            failures: Vec::new(),
            inconclusive: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn finish(mut self, began: Instant) -> Self {
        self.verdict = if !self.failures.is_empty() {
            Verdict::Fail
        } else if !self.inconclusive.is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        self.elapsed = began.elapsed();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub claims: Vec<ClaimReport>,
}

impl VerificationReport {
    pub fn new(mut claims: Vec<ClaimReport>) -> Self {
        claims.sort_by_key(|c| CLAIMS.iter().position(|&id| id == c.claim));
        let verdict = claims.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Pass);
        Self { verdict, claims }
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.claim == id)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports always serialize");
        out.push('\n');
        out
    }

    /// A fixed-width table, one row per claim, followed by the findings.
    pub fn to_table(&self, timings: bool) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "{:<20} {:<13} {:>9} {:>9} {:>13}",
            "claim", "verdict", "instances", "failures", "inconclusive"
        );
        if timings {
            let _ = write!(out, " {:>10}", "ms");
        }
        out.push('\n');
        for c in &self.claims {
            let _ = write!(
                out,
                "{:<20} {:<13} {:>9} {:>9} {:>13}",
                c.claim,
                c.verdict.as_str(),
                c.instances,
                c.failures.len(),
                c.inconclusive.len()
            );
            if timings {
                let _ = write!(out, " {:>10.1}", c.elapsed.as_secs_f64() * 1000.0);
            }
            out.push('\n');
        }
        for c in &self.claims {
            for note in &c.notes {
                let _ = writeln!(out, "{}: {note}", c.claim);
            }
            for (kind, list) in [("FAIL", &c.failures), ("INCONCLUSIVE", &c.inconclusive)] {
                for f in list {
                    let _ = write!(out, "{kind} {}: [{}] {}", c.claim, f.subject.join(" "), f.detail);
                    if let Some(cycle) = &f.cycle {
                        let _ = write!(out, " cycle {}", cycle.join(","));
                    }
                    if let Some(h1) = &f.h1 {
                        let _ = write!(out, " H1 = {h1}");
                    }
                    out.push('\n');
                }
            }
        }
        let _ = writeln!(out, "overall: {}", self.verdict.as_str());
        out
    }
}

pub const CLAIMS: [&str; 7] =
    ["distance_theorem", "st_bound", "cs_le_i", "link_girth", "residues_sc", "simple_connectivity", "contractible_2d"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyBounds {
    /// Longest cycle enumerated for the homotopy claims.
    pub cycle_len_cap: usize,
    pub max_len: usize,
    pub max_steps: usize,
}

impl Default for VerifyBounds {
    fn default() -> Self {
        Self { cycle_len_cap: 8, max_len: 16, max_steps: 100_000 }
    }
}

impl VerifyBounds {
    pub fn homotopy(&self) -> HomotopyBounds {
        HomotopyBounds { max_len: self.max_len, max_steps: self.max_steps }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Distance,
    Girth,
    Sc,
    Contractible,
}

pub fn run_suite(system: &SurfaceSystem, suite: Suite, bounds: VerifyBounds) -> VerificationReport {
    let complex = system.build_complex(crate::complex::DEFAULT_MAX_DIM);
    let mut claims = Vec::new();
    if matches!(suite, Suite::All | Suite::Distance) {
        claims.push(verify_distance_theorem(system));
        claims.push(verify_st_bound(system));
        claims.push(verify_cs_le_i(system));
    }
    if matches!(suite, Suite::All | Suite::Girth) {
        claims.push(verify_link_girth(&complex, bounds));
    }
    if matches!(suite, Suite::All | Suite::Sc) {
        claims.push(verify_residues_sc(&complex, bounds));
        claims.push(verify_simple_connectivity_in(system, &complex, bounds));
    }
    if matches!(suite, Suite::All | Suite::Contractible) {
        claims.push(verify_contractible_2d(&complex, bounds));
    }
    VerificationReport::new(claims)
}

fn pair(system: &SurfaceSystem, u: usize, v: usize) -> Vec<String> {
    vec![system.id(u).to_owned(), system.id(v).to_owned()]
}

/// Breadth-first distances from every vertex.
fn all_distances(system: &SurfaceSystem) -> Vec<Vec<Option<usize>>> {
    let complex = system.build_complex(1);
    (0..system.len()).map(|u| complex.bfs_from(u)).collect()
}

pub fn verify_distance_theorem(system: &SurfaceSystem) -> ClaimReport {
    let began = Instant::now();
    let mut r = ClaimReport::start("distance_theorem", "d(u, v) = cs(u, v) + 1 for all distinct u, v");
    let dist = all_distances(system);
    for u in 0..system.len() {
        for v in u + 1..system.len() {
            r.instances += 1;
            let predicted = system.spread_distance(u, v).expect("pair of known vertices");
            match dist[u][v] {
                Some(d) if d as u64 == predicted => {}
                Some(d) => r
                    .failures
                    .push(Finding::new(pair(system, u, v), format!("distance {d}, covering spread + 1 = {predicted}"))),
                None => r
                    .failures
                    .push(Finding::new(pair(system, u, v), format!("unreachable, covering spread + 1 = {predicted}"))),
            }
        }
    }
    r.finish(began)
}

pub fn verify_st_bound(system: &SurfaceSystem) -> ClaimReport {
    let began = Instant::now();
    let mut r = ClaimReport::start("st_bound", "d(u, v) <= i(u, v) + 1 for all distinct u, v");
    let dist = all_distances(system);
    for u in 0..system.len() {
        for v in u + 1..system.len() {
            r.instances += 1;
            let bound = system.intersection_number(u, v).expect("pair of known vertices") + 1;
            match dist[u][v] {
                Some(d) if d as u64 <= bound => {}
                found => r
                    .failures
                    .push(Finding::new(pair(system, u, v), format!("distance {found:?} exceeds i + 1 = {bound}"))),
            }
        }
    }
    r.finish(began)
}

pub fn verify_cs_le_i(system: &SurfaceSystem) -> ClaimReport {
    let began = Instant::now();
    let mut r = ClaimReport::start("cs_le_i", "cs(u, v) <= i(u, v) for all distinct u, v");
    for u in 0..system.len() {
        for v in u + 1..system.len() {
            r.instances += 1;
            let cs = system.covering_spread(u, v).expect("stored patterns are valid");
            let i = system.intersection_number(u, v).expect("pair of known vertices");
            if cs > i {
                r.failures.push(Finding::new(pair(system, u, v), format!("cs {cs} > i {i}")));
            }
        }
    }
    r.finish(began)
}

/// In every vertex link, embedded cycles of length 3 to 5 are trivial: a
/// 3-cycle spans a simplex, and longer ones have a diagonal. Each cycle is
/// also handed to the homotopy search inside the link.
pub fn verify_link_girth(complex: &FlagComplex, bounds: VerifyBounds) -> ClaimReport {
    let began = Instant::now();
    let mut r = ClaimReport::start(
        "link_girth",
        "every cycle of length 3 to 5 in a vertex link spans a simplex or has a diagonal",
    );
    let mut shortest: Option<usize> = None;
    let mut cycles = 0;
    for v in 0..complex.num_vertices() {
        r.instances += 1;
        let link = complex.link(&[v]).expect("a vertex is a simplex");
        let context = vec![complex.label(v).to_owned()];
        for cycle in embedded_cycles(&link, 3, 5) {
            cycles += 1;
            let verts = cycle.vertices();
            let labels = link.labels_of(verts);
            let trivial_by_criterion =
                if cycle.len() == 3 { link.is_simplex(verts) } else { has_diagonal(&link, verts) };
            let search = reduce_cycle_homotopy(&link, &cycle, bounds.homotopy()).expect("cycle of the link");
            match (trivial_by_criterion, search.witness()) {
                (true, Some(w)) => {
                    if let Err(e) = replay_witness(&link, w) {
                        r.failures.push(
                            Finding::new(context.clone(), format!("witness does not replay: {e}")).with_cycle(labels),
                        );
                    }
                }
                (true, None) => r.inconclusive.push(
                    Finding::new(context.clone(), "has a diagonal but the search found no contraction")
                        .with_cycle(labels),
                ),
                (false, found) => {
                    let detail = if found.is_some() {
                        "diagonal-free, although the search contracts it in the link"
                    } else {
                        "diagonal-free"
                    };
                    r.failures.push(Finding::new(context.clone(), detail).with_cycle(labels));
                }
            }
        }
        if let Some(len) = induced_cycles(&link, 4, bounds.cycle_len_cap).iter().map(|c| c.len()).min() {
            shortest = Some(shortest.map_or(len, |s| s.min(len)));
        }
    }
    r.notes.push(format!("{cycles} cycles of length 3 to 5 checked"));
    r.notes.push(match shortest {
        Some(len) => format!("shortest diagonal-free cycle in a vertex link has length {len}"),
        None => format!("no diagonal-free cycle of length 4 to {} in any vertex link", bounds.cycle_len_cap),
    });
    r.finish(began)
}

/// Every residue has trivial H1, and each of its embedded cycles up to the
/// length cap contracts within the residue.
pub fn verify_residues_sc(complex: &FlagComplex, bounds: VerifyBounds) -> ClaimReport {
    let began = Instant::now();
    let mut r = ClaimReport::start("residues_sc", "the residue of every simplex is simply connected");
    for sigma in complex.every_simplex() {
        let residue = complex.residue(&sigma).expect("listed simplices are simplices");
        let context = complex.labels_of(&sigma);
        let h1 = homology_h1(&residue);
        if !h1.is_trivial() {
            r.instances += 1;
            r.failures.push(Finding::new(context, "residue has nonzero first homology").with_h1(h1));
            continue;
        }
        for cycle in embedded_cycles(&residue, 3, bounds.cycle_len_cap) {
            r.instances += 1;
            let labels = residue.labels_of(cycle.vertices());
            match reduce_cycle_homotopy(&residue, &cycle, bounds.homotopy()).expect("cycle of the residue") {
                SearchOutcome::Trivial(w) => {
                    if let Err(e) = replay_witness(&residue, &w) {
                        r.failures.push(
                            Finding::new(context.clone(), format!("witness does not replay: {e}")).with_cycle(labels),
                        );
                    }
                }
                SearchOutcome::Inconclusive { explored, .. } => r.inconclusive.push(
                    Finding::new(context.clone(), format!("no contraction after {explored} states")).with_cycle(labels),
                ),
            }
        }
    }
    r.finish(began)
}

pub fn verify_simple_connectivity(system: &SurfaceSystem, bounds: VerifyBounds) -> ClaimReport {
    let complex = system.build_complex(crate::complex::DEFAULT_MAX_DIM);
    verify_simple_connectivity_in(system, &complex, bounds)
}

/// H1 vanishes and every embedded cycle up to the length cap has a
/// null-homotopy witness: from the double curve sum reduction when the
/// system has one, from the generic search otherwise.
pub fn verify_simple_connectivity_in(
    system: &SurfaceSystem,
    complex: &FlagComplex,
    bounds: VerifyBounds,
) -> ClaimReport {
    let began = Instant::now();
    let mut r = ClaimReport::start("simple_connectivity", "every closed edge path is null-homotopic");
    r.instances += 1;
    let h1 = homology_h1(complex);
    // with H1 = 0 every cycle bounds, so only build the span when it can help
    let boundaries = (!h1.is_trivial()).then(|| BoundarySpace::new(complex));
    if !h1.is_trivial() {
        r.failures.push(Finding::new(Vec::new(), "first homology is nonzero").with_h1(h1));
    }
    let method = if system.capabilities().supports_dcs { "double curve sum reduction" } else { "generic search" };
    r.notes.push(format!("witnesses from the {method}"));
    for cycle in embedded_cycles(complex, 3, bounds.cycle_len_cap) {
        r.instances += 1;
        let labels = complex.labels_of(cycle.vertices());
        if boundaries.as_ref().is_some_and(|b| !b.bounds(cycle.vertices())) {
            r.failures.push(Finding::new(labels.clone(), "not a boundary, so not null-homotopic").with_cycle(labels));
            continue;
        }
        match kakimizu_null_homotopy(system, complex, &cycle, bounds.homotopy()) {
            Ok(ReductionOutcome::Trivial(w)) => {
                if let Err(e) = replay_witness(complex, &w) {
                    r.failures
                        .push(Finding::new(labels.clone(), format!("witness does not replay: {e}")).with_cycle(labels));
                }
            }
            Ok(ReductionOutcome::Inconclusive { explored, .. }) => r.inconclusive.push(
                Finding::new(labels.clone(), format!("no contraction after {explored} steps")).with_cycle(labels),
            ),
            Err(e) => r.failures.push(Finding::new(labels.clone(), e.to_string()).with_cycle(labels)),
        }
    }
    r.finish(began)
}

/// Runs the two-dimensional criterion. "No conclusion" is inconclusive:
/// the criterion never shows that a complex is not contractible.
pub fn verify_contractible_2d(complex: &FlagComplex, bounds: VerifyBounds) -> ClaimReport {
    let began = Instant::now();
    let mut r = ClaimReport::start(
        "contractible_2d",
        "a connected, simply connected, locally 6-large complex of dimension at most 2 is contractible",
    );
    r.instances = 1;
    let report = contractibility_report_with(complex, bounds.homotopy());
    let dim = report.dimension.map_or("empty".to_owned(), |d| d.to_string());
    r.notes.push(format!(
        "dimension {dim}, connected {}, locally 6-large {}, H1 = {}, generators certified {}/{}",
        report.connected, report.locally_6_large, report.h1, report.generators_certified, report.generators
    ));
    r.notes.push(report.conclusion.describe().to_owned());
    if report.conclusion == Conclusion::NoConclusion {
        let mut finding = Finding::new(Vec::new(), report.conclusion.describe());
        if let Some(w) = report.local_witness {
            finding = finding.with_cycle(w.cycle);
            finding.subject = w.context;
        }
        if !report.h1.is_trivial() {
            finding = finding.with_h1(report.h1);
        }
        r.inconclusive.push(finding);
    }
    r.finish(began)
}
