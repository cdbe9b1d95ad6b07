//! JSON system files.
//!
//! ```json
//! {
//!   "vertices": [{"id": "a", "complexity": [0, 0]}, {"id": "b", "complexity": [1, 0]}],
//!   "patterns": [{"u": "a", "v": "b", "support_start": 1, "counts": [2]}]
//! }
//! ```
//!
//! Each pair appears at most once, with `u < v`. An optional `model` object
//! records the generator of a model system so that it keeps its double curve
//! sum after a round trip.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{lattice_window, line_model, Complexity, Model, SurfaceSystem, SystemError, Vertex};
use crate::pattern::{validate_pattern, OffsetPattern};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    vertices: Vec<VertexEntry>,
    #[serde(default)]
    patterns: Vec<PatternEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    model: Option<Model>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    id: String,
    complexity: [u64; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternEntry {
    u: String,
    v: String,
    support_start: i64,
    counts: Vec<u32>,
}

fn entry(index: usize, field: &'static str, message: impl Into<String>) -> SystemError {
    SystemError::Entry { index, field, message: message.into() }
}

pub(super) fn load(text: &str) -> Result<SurfaceSystem, SystemError> {
    let raw: SystemFile = serde_json::from_str(text).map_err(|e| SystemError::Json(e.to_string()))?;

    let vertices: Vec<Vertex> = raw
        .vertices
        .into_iter()
        .map(|v| Vertex { id: v.id, complexity: Complexity(v.complexity[0], v.complexity[1]) })
        .collect();
    for (i, v) in vertices.iter().enumerate() {
        if v.id.is_empty() || v.id.contains(',') || v.id.chars().any(char::is_whitespace) {
            return Err(SystemError::Json(format!(
                "vertices[{i}].id: {:?} must be nonempty without commas or whitespace",
                v.id
            )));
        }
    }
    let mut system = SurfaceSystem::new(vertices, [])?;

    let mut seen = HashSet::new();
    for (index, p) in raw.patterns.into_iter().enumerate() {
        system.vertex(&p.u).map_err(|_| entry(index, "u", format!("unknown vertex {:?}", p.u)))?;
        system.vertex(&p.v).map_err(|_| entry(index, "v", format!("unknown vertex {:?}", p.v)))?;
        if p.u == p.v {
            return Err(entry(index, "v", "a pair needs two distinct vertices"));
        }
        if p.u > p.v {
            return Err(entry(index, "u", format!("pair ({}, {}) is not in canonical order", p.u, p.v)));
        }
        if !seen.insert((p.u.clone(), p.v.clone())) {
            return Err(entry(index, "u", format!("duplicate entry for pair ({}, {})", p.u, p.v)));
        }
        if p.counts.is_empty() {
            return Err(entry(index, "counts", "must be nonempty; omit the entry for a disjoint pair"));
        }
        let pattern = OffsetPattern::from_parts(p.support_start, p.counts);
        if let Some(violation) = validate_pattern(&pattern).into_iter().next() {
            let field = match violation {
                crate::pattern::Violation::ZeroCount => "counts",
                crate::pattern::Violation::SupportMissesOrigin => "support_start",
            };
            return Err(entry(index, field, violation.name()));
        }
        system.insert_pattern(&p.u, &p.v, pattern)?;
    }

    match raw.model {
        None | Some(Model::Explicit) => Ok(system),
        Some(model) => {
            let expected = match model {
                Model::Line { min, max } => line_model(min, max)?,
                Model::Lattice { a_min, a_max, b_min, b_max } => lattice_window(a_min, a_max, b_min, b_max)?,
                Model::Explicit => unreachable!(),
            };
            if expected.vertices != system.vertices || expected.patterns != system.patterns {
                return Err(SystemError::ModelMismatch);
            }
            Ok(system.with_model(model))
        }
    }
}

pub(super) fn save(system: &SurfaceSystem) -> String {
    let file = SystemFile {
        vertices: system
            .vertices
            .iter()
            .map(|v| VertexEntry { id: v.id.clone(), complexity: [v.complexity.0, v.complexity.1] })
            .collect(),
        patterns: system
            .stored_patterns()
            .map(|(u, v, p)| PatternEntry {
                u: system.id(u).to_owned(),
                v: system.id(v).to_owned(),
                support_start: p.support_start(),
                counts: p.counts().to_vec(),
            })
            .collect(),
        model: match system.model {
            Model::Explicit => None,
            m => Some(m),
        },
    };
    let mut out = serde_json::to_string_pretty(&file).expect("system files always serialize");
    out.push('\n');
    out
}
