//! JSON documents for complexes and embeddings.

use std::path::Path;
use std::sync::Arc;

use indef_core::{IndefiniteMetric, InputMode, Signature, SimplicialComplex, SimplicialMap};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;
/// Solver names, plus `manual` for hand-written maps.
pub const METHODS: [&str; 4] = ["greene", "spanning", "gluing", "manual"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Vertices {
    Count(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricMode {
    Length,
    Squared,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSection {
    pub mode: MetricMode,
    /// `[i, j, value]` triples.
    pub edges: Vec<(usize, usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub schema_version: u32,
    pub vertices: Vertices,
    /// Maximal simplices as vertex-index lists.
    pub simplices: Vec<Vec<usize>>,
    pub metric: MetricSection,
}

/// A parsed complex document.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    pub complex: Arc<SimplicialComplex>,
    pub metric: IndefiniteMetric<f64>,
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        check_schema(doc.schema_version)?;
        Ok(doc)
    }

    pub fn build(&self) -> Result<Polyhedron, CliError> {
        let count = match &self.vertices {
            Vertices::Count(n) => *n,
            Vertices::Labels(l) => l.len(),
        };
        let mut complex = SimplicialComplex::new(count, &self.simplices).map_err(CliError::from_core)?;
        if let Vertices::Labels(labels) = &self.vertices {
            complex = complex.with_labels(labels.clone()).map_err(CliError::from_core)?;
        }
        let entries = self.metric.edges.iter().copied();
        let metric = match self.metric.mode {
            MetricMode::Length => IndefiniteMetric::from_lengths(&complex, entries),
            MetricMode::Squared => IndefiniteMetric::from_squares(&complex, entries),
        }
        .map_err(CliError::from_core)?;
        Ok(Polyhedron {
            complex: Arc::new(complex),
            metric,
        })
    }

    /// Document describing an existing complex and metric; squared values
    /// are written verbatim unless the metric came from lengths.
    pub fn from_parts(c: &SimplicialComplex, m: &IndefiniteMetric<f64>) -> Self {
        let vertices = match c.labels() {
            Some(l) => Vertices::Labels(l.to_vec()),
            None => Vertices::Count(c.vertex_count()),
        };
        let (mode, values) = match m.input_mode() {
            InputMode::Lengths => (MetricMode::Length, m.signed_lengths()),
            InputMode::Squared => (MetricMode::Squared, m.squared().to_vec()),
        };
        Self {
            schema_version: SCHEMA_VERSION,
            vertices,
            simplices: c.maximal_simplices().to_vec(),
            metric: MetricSection {
                mode,
                edges: c
                    .edges()
                    .iter()
                    .zip(values)
                    .map(|(&(i, j), v)| (i, j, v))
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureSection {
    pub signs: Vec<i8>,
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDocument {
    pub schema_version: u32,
    pub method: String,
    pub mode: String,
    pub seed: u64,
    pub signature: SignatureSection,
    pub coordinates: Vec<Vec<f64>>,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_final: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<usize>>,
}

impl EmbeddingDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        check_schema(doc.schema_version)?;
        if !METHODS.contains(&doc.method.as_str()) {
            return Err(CliError::Parse(format!("unknown method `{}`", doc.method)));
        }
        doc.mode
            .parse::<indef_core::Mode>()
            .map_err(|e| CliError::Parse(e.to_string()))?;
        let sig = Signature::from_i8(&doc.signature.signs).map_err(CliError::from_core)?;
        if (sig.p(), sig.q()) != (doc.signature.p, doc.signature.q) {
            return Err(CliError::Parse(format!(
                "signature counts ({}, {}) disagree with the sign vector ({}, {})",
                doc.signature.p,
                doc.signature.q,
                sig.p(),
                sig.q()
            )));
        }
        if let Some(row) = doc.coordinates.iter().position(|r| r.len() != sig.dim()) {
            return Err(CliError::Parse(format!(
                "vertex {row} has {} coordinates, signature needs {}",
                doc.coordinates[row].len(),
                sig.dim()
            )));
        }
        Ok(doc)
    }

    /// Skeleton for a solved map; solver-specific fields start empty.
    pub fn from_map(method: &str, mode: &str, seed: u64, f: &SimplicialMap<f64>, residual: f64) -> Self {
        let sig = f.signature();
        Self {
            schema_version: SCHEMA_VERSION,
            method: method.to_string(),
            mode: mode.to_string(),
            seed,
            signature: SignatureSection {
                signs: sig.to_i8(),
                p: sig.p(),
                q: sig.q(),
            },
            coordinates: f.points().map(<[f64]>::to_vec).collect(),
            residual,
            lambda_final: None,
            alphas: None,
            partition: None,
            mu: None,
        }
    }

    /// The map this document describes, on the given complex.
    pub fn to_map(&self, complex: &Arc<SimplicialComplex>) -> Result<SimplicialMap<f64>, CliError> {
        if self.coordinates.len() != complex.vertex_count() {
            return Err(CliError::Input(format!(
                "embedding has {} vertices, complex has {}",
                self.coordinates.len(),
                complex.vertex_count()
            )));
        }
        let sig = Signature::from_i8(&self.signature.signs).map_err(CliError::from_core)?;
        SimplicialMap::from_points(Arc::clone(complex), sig, &self.coordinates).map_err(CliError::from_core)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

fn check_schema(v: u32) -> Result<(), CliError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(CliError::Parse(format!(
            "unsupported schema_version {v}, expected {SCHEMA_VERSION}"
        )))
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_complex(path: &Path) -> Result<Polyhedron, CliError> {
    ComplexDocument::parse(&read_file(path)?)?.build()
}
