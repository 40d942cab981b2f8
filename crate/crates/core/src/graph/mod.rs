//! Finite discrete graphs `E = (E^0, E^1, r, s)`.
//!
//! Direction convention: every edge carries a source `src` (the value of `s`)
//! and a range `rng` (the value of `r`). A path `a_1 ... a_n` satisfies
//! `s(a_i) = r(a_(i+1))`, so paths grow at the source end and prefixes sit on
//! the range side. Many texts use the opposite orientation; fixtures written
//! for those must swap `src` and `rng`.
//!
//! A vertex is regular when it receives at least one edge and no infinite
//! bundle, and singular otherwise.

mod cycles;
mod path;

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cycles::{CycleCount, SimpleCycles, Verdict};
pub use path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: VertexId,
    pub rng: VertexId,
}

/// Countably many parallel edges from `src` to `rng`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub src: VertexId,
    pub rng: VertexId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub rng: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub src: String,
    pub rng: String,
}

/// On-disk graph description.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub infinite_bundles: Vec<BundleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClassification {
    pub regular: Vec<VertexId>,
    pub singular: Vec<VertexId>,
}

#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeId>,
    bundles: Vec<Bundle>,
    in_edges: Vec<Vec<EdgeId>>,
    out_edges: Vec<Vec<EdgeId>>,
    regular: Vec<bool>,
    key: u64,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.to_doc() == other.to_doc()
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn from_doc(doc: &GraphDoc) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, name) in doc.vertices.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyId);
            }
            if vertex_index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateId(name.clone()));
            }
        }
        let lookup = |name: &str| {
            vertex_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::DanglingEndpoint(name.to_string()))
        };

        let mut edges = Vec::with_capacity(doc.edges.len());
        let mut edge_index = HashMap::new();
        for (i, e) in doc.edges.iter().enumerate() {
            if e.id.is_empty() {
                return Err(Error::EmptyId);
            }
            if edge_index.insert(e.id.clone(), EdgeId(i)).is_some() {
                return Err(Error::DuplicateId(e.id.clone()));
            }
            edges.push(Edge {
                id: e.id.clone(),
                src: lookup(&e.src)?,
                rng: lookup(&e.rng)?,
            });
        }

        let mut seen = HashSet::new();
        let mut bundles = Vec::with_capacity(doc.infinite_bundles.len());
        for b in &doc.infinite_bundles {
            let bundle = Bundle {
                src: lookup(&b.src)?,
                rng: lookup(&b.rng)?,
            };
            if !seen.insert((bundle.src, bundle.rng)) {
                return Err(Error::DuplicateBundle {
                    src: b.src.clone(),
                    rng: b.rng.clone(),
                });
            }
            bundles.push(bundle);
        }

        let n = doc.vertices.len();
        let mut in_edges = vec![Vec::new(); n];
        let mut out_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            in_edges[e.rng.0].push(EdgeId(i));
            out_edges[e.src.0].push(EdgeId(i));
        }
        let mut regular: Vec<bool> = in_edges.iter().map(|ins| !ins.is_empty()).collect();
        for b in &bundles {
            regular[b.rng.0] = false;
        }

        let mut hasher = DefaultHasher::new();
        doc.vertices.hash(&mut hasher);
        for e in &edges {
            (&e.id, e.src, e.rng).hash(&mut hasher);
        }
        for b in &bundles {
            (b.src, b.rng).hash(&mut hasher);
        }

        Ok(Self {
            vertices: doc.vertices.clone(),
            vertex_index,
            edges,
            edge_index,
            bundles,
            in_edges,
            out_edges,
            regular,
            key: hasher.finish(),
        })
    }

    /// Parses and validates a JSON graph document.
    pub fn parse(json: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    src: self.vertex_name(e.src).to_string(),
                    rng: self.vertex_name(e.rng).to_string(),
                })
                .collect(),
            infinite_bundles: self
                .bundles
                .iter()
                .map(|b| BundleDoc {
                    src: self.vertex_name(b.src).to_string(),
                    rng: self.vertex_name(b.rng).to_string(),
                })
                .collect(),
        }
    }

    /// Identity tag used to reject mixing objects built over different graphs.
    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn has_bundles(&self) -> bool {
        !self.bundles.is_empty()
    }

    /// Finite edges `e` with `r(e) = v`, in input order.
    pub fn edges_into(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    /// Finite edges `e` with `s(e) = v`, in input order.
    pub fn edges_from(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        self.regular[v.0]
    }

    pub fn classify_vertices(&self) -> VertexClassification {
        let (regular, singular) = self.vertex_ids().partition(|&v| self.is_regular(v));
        VertexClassification { regular, singular }
    }

    pub fn regular_vertices(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.is_regular(v)).collect()
    }

    pub fn singular_vertices(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| !self.is_regular(v)).collect()
    }

    pub(crate) fn require_finite(&self) -> Result<()> {
        if self.has_bundles() {
            Err(Error::NotEnumerable)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph with {} vertices, {} edges, {} infinite bundles",
            self.vertex_count(),
            self.edge_count(),
            self.bundles.len()
        )
    }
}
