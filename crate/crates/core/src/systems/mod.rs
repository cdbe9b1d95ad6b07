//! Surface systems: finite sets of Seifert surface classes with their
//! pairwise lift-intersection patterns.
//!
//! Patterns are stored once per unordered pair, for the pair in canonical
//! order (lexicographically smaller id first). Asking for the reversed pair
//! returns the dual pattern. An absent entry means the surfaces are
//! disjoint.

mod dcs;
mod file;
mod models;
mod reduction;

use std::collections::{BTreeMap, HashMap};
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, FlagComplex};
use crate::pattern::{self, covering_spread, dualize, intersection_number, OffsetPattern, PatternError};

pub use dcs::check_dcs_contract;
pub use models::{
    graph_id, graph_to_system, lattice_distance, lattice_model, lattice_window, line_id, line_model,
    random_connected_graph, LatticeWindow,
};
pub use reduction::{kakimizu_null_homotopy, step_budget, ReductionOutcome};

/// Lexicographically ordered pair standing in for the complexity of a
/// PL-minimal representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Complexity(pub u64, pub u64);

impl Add for Complexity {
    type Output = Complexity;

    fn add(self, rhs: Complexity) -> Complexity {
        Complexity(self.0 + rhs.0, self.1 + rhs.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub complexity: Complexity,
}

/// Which generator produced a system. Model systems know how to form double
/// curve sums; explicit ones do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    Explicit,
    Line { min: i64, max: i64 },
    Lattice { a_min: i64, a_max: i64, b_min: i64, b_max: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Capabilities {
    pub supports_dcs: bool,
    /// The double curve sum strictly lowers the summed complexity.
    pub strict_descent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("malformed system file: {0}")]
    Json(String),
    #[error("vertices[{index}].id: duplicate id {id:?}")]
    DuplicateVertex { index: usize, id: String },
    #[error("patterns[{index}].{field}: {message}")]
    Entry { index: usize, field: &'static str, message: String },
    #[error("model section does not match the listed vertices and patterns")]
    ModelMismatch,
    #[error("duplicate pattern for pair ({0}, {1})")]
    DuplicatePair(String, String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("a surface has no pattern with itself ({0:?})")]
    SamePair(String),
    #[error("this system has no double curve sum")]
    Unsupported,
    #[error("surfaces {0:?} and {1:?} are disjoint; there is nothing to sum")]
    NothingToSum(String, String),
    #[error("empty window")]
    EmptyWindow,
    #[error("lattice window must be at least 2x2, got {0}x{1}")]
    DegenerateWindow(u64, u64),
    #[error("graph is not connected")]
    Disconnected,
    #[error("double curve sum contract violated: {0}")]
    ContractBreach(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSystem {
    vertices: Vec<Vertex>,
    index: HashMap<String, usize>,
    /// Keyed by vertex indices `(i, j)` with `id(i) < id(j)`; only nonempty
    /// patterns are stored.
    patterns: BTreeMap<(usize, usize), OffsetPattern>,
    model: Model,
}

impl SurfaceSystem {
    /// Builds an explicit system. Patterns may be given for either order of a
    /// pair; empty patterns are dropped.
    pub fn new(
        vertices: Vec<Vertex>,
        patterns: impl IntoIterator<Item = (String, String, OffsetPattern)>,
    ) -> Result<Self, SystemError> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(SystemError::DuplicateVertex { index: i, id: v.id.clone() });
            }
        }
        let mut system = Self { vertices, index, patterns: BTreeMap::new(), model: Model::Explicit };
        for (u, v, p) in patterns {
            system.insert_pattern(&u, &v, p)?;
        }
        Ok(system)
    }

    fn insert_pattern(&mut self, u: &str, v: &str, p: OffsetPattern) -> Result<(), SystemError> {
        let (i, j) = (self.vertex(u)?, self.vertex(v)?);
        if i == j {
            return Err(SystemError::SamePair(u.to_owned()));
        }
        if let Some(violation) = pattern::validate_pattern(&p).into_iter().next() {
            return Err(PatternError::Normalization(violation).into());
        }
        let (key, p) = if u < v { ((i, j), p) } else { ((j, i), dualize(&p)) };
        if self.patterns.contains_key(&key) {
            return Err(SystemError::DuplicatePair(u.to_owned(), v.to_owned()));
        }
        if !p.is_empty() {
            self.patterns.insert(key, p);
        }
        Ok(())
    }

    pub(crate) fn with_model(mut self, model: Model) -> Self {
        self.model = model;
        self
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn capabilities(&self) -> Capabilities {
        let modelled = !matches!(self.model, Model::Explicit);
        Capabilities { supports_dcs: modelled, strict_descent: modelled }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn complexity(&self, v: usize) -> Complexity {
        self.vertices[v].complexity
    }

    pub fn vertex(&self, id: &str) -> Result<usize, SystemError> {
        self.index.get(id).copied().ok_or_else(|| SystemError::UnknownVertex(id.to_owned()))
    }

    /// Stored patterns in canonical order.
    pub fn stored_patterns(&self) -> impl Iterator<Item = (usize, usize, &OffsetPattern)> {
        let mut entries: Vec<_> = self.patterns.iter().map(|(&(i, j), p)| (i, j, p)).collect();
        entries.sort_by(|a, b| (self.id(a.0), self.id(a.1)).cmp(&(self.id(b.0), self.id(b.1))));
        entries.into_iter()
    }

    /// The pattern of the ordered pair `(u, v)`.
    pub fn pattern(&self, u: usize, v: usize) -> Result<OffsetPattern, SystemError> {
        if u >= self.len() || v >= self.len() {
            return Err(SystemError::UnknownVertex(format!("#{}", u.max(v))));
        }
        if u == v {
            return Err(SystemError::SamePair(self.id(u).to_owned()));
        }
        if self.id(u) < self.id(v) {
            Ok(self.patterns.get(&(u, v)).cloned().unwrap_or_default())
        } else {
            Ok(self.patterns.get(&(v, u)).map(dualize).unwrap_or_default())
        }
    }

    pub fn disjoint(&self, u: usize, v: usize) -> bool {
        u != v && !self.patterns.contains_key(&self.key(u, v))
    }

    fn key(&self, u: usize, v: usize) -> (usize, usize) {
        if self.id(u) < self.id(v) {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn covering_spread(&self, u: usize, v: usize) -> Result<u64, SystemError> {
        Ok(covering_spread(&self.pattern(u, v)?)?)
    }

    pub fn intersection_number(&self, u: usize, v: usize) -> Result<u64, SystemError> {
        Ok(intersection_number(&self.pattern(u, v)?))
    }

    /// Distance predicted from the patterns alone: covering spread plus one.
    pub fn spread_distance(&self, u: usize, v: usize) -> Result<u64, SystemError> {
        if u == v {
            self.vertex_check(u)?;
            return Ok(0);
        }
        Ok(self.covering_spread(u, v)? + 1)
    }

    fn vertex_check(&self, v: usize) -> Result<(), SystemError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(SystemError::UnknownVertex(format!("#{v}")))
        }
    }

    /// The Kakimizu complex: an edge wherever the pattern is empty, simplices
    /// materialized up to `max_dim`. Vertex `i` of the complex is vertex `i`
    /// of the system.
    pub fn build_complex(&self, max_dim: usize) -> FlagComplex {
        let n = self.len();
        let labels = self.vertices.iter().map(|v| v.id.clone()).collect();
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| self.disjoint(u, v));
        FlagComplex::from_edges(labels, edges.collect::<Vec<_>>(), max_dim)
    }

    pub fn load(text: &str) -> Result<Self, SystemError> {
        file::load(text)
    }

    pub fn save(&self) -> String {
        file::save(self)
    }

    /// Double curve sum of `u` and `v` along the curves in `S_{l_t}`:
    /// returns `(minus, plus)` where `minus` is disjoint from `v` and closer
    /// to `u`.
    pub fn double_curve_sum(&self, u: usize, v: usize) -> Result<(usize, usize), SystemError> {
        dcs::double_curve_sum(self, u, v)
    }

    /// A path from `v` to `u` with one edge more than the covering spread.
    pub fn geodesic(&self, u: usize, v: usize) -> Result<Vec<usize>, SystemError> {
        dcs::geodesic(self, u, v)
    }
}
