use std::cmp::Ordering;

use super::{EdgeId, Graph, VertexId};
use crate::error::{Error, Result};

/// A finite path: either a vertex (length 0) or edges `a_1 ... a_n` with
/// `s(a_i) = r(a_(i+1))`.
///
/// Paths are ordered by length, then lexicographically by edge index, then by
/// base vertex. Edge indices follow input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    edges: Vec<EdgeId>,
    range: VertexId,
    source: VertexId,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Self {
            edges: Vec::new(),
            range: v,
            source: v,
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// `r(a) = r(a_1)`.
    pub fn range(&self) -> VertexId {
        self.range
    }

    /// `s(a) = s(a_n)`.
    pub fn source(&self) -> VertexId {
        self.source
    }

    /// Whether `self` is a range-side prefix of `other`. A vertex `v` is a
    /// prefix of every path with range `v`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        if self.is_vertex() {
            self.range == other.range
        } else {
            other.edges.starts_with(&self.edges)
        }
    }

    /// The path left after removing the prefix `prefix`; caller guarantees
    /// `prefix.is_prefix_of(self)`.
    pub(crate) fn strip_prefix(&self, prefix: &Path) -> Path {
        let k = prefix.len();
        if k == self.len() {
            Path::vertex(self.source)
        } else if k == 0 {
            self.clone()
        } else {
            Path {
                edges: self.edges[k..].to_vec(),
                range: prefix.source,
                source: self.source,
            }
        }
    }

    /// The first `k` edges (a vertex at `r` when `k = 0`).
    pub(crate) fn prefix(&self, graph: &Graph, k: usize) -> Path {
        if k == 0 {
            Path::vertex(self.range)
        } else if k >= self.len() {
            self.clone()
        } else {
            Path {
                edges: self.edges[..k].to_vec(),
                range: self.range,
                source: graph.edge(self.edges[k - 1]).src,
            }
        }
    }

    /// Concatenation assuming `s(self) = r(other)`.
    pub(crate) fn join(&self, other: &Path) -> Path {
        debug_assert_eq!(self.source, other.range);
        if self.is_vertex() {
            return other.clone();
        }
        if other.is_vertex() {
            return self.clone();
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path {
            edges,
            range: self.range,
            source: other.source,
        }
    }

    pub(crate) fn push_edge(&self, graph: &Graph, e: EdgeId) -> Path {
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            edges,
            range: self.range,
            source: graph.edge(e).src,
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.range.cmp(&other.range))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Graph {
    pub fn edge_path(&self, e: EdgeId) -> Path {
        let edge = self.edge(e);
        Path {
            edges: vec![e],
            range: edge.rng,
            source: edge.src,
        }
    }

    /// Validates an edge sequence as a path.
    pub fn path(&self, edges: &[EdgeId]) -> Result<Path> {
        let Some((&first, rest)) = edges.split_first() else {
            return Err(Error::Malformed("empty edge list; use a vertex path".into()));
        };
        let mut path = self.edge_path(first);
        for &e in rest {
            if self.edge(e).rng != path.source {
                return Err(Error::NotAPath {
                    left: self.edge(*path.edges.last().unwrap()).id.clone(),
                    right: self.edge(e).id.clone(),
                });
            }
            path = path.push_edge(self, e);
        }
        Ok(path)
    }

    pub fn path_from_names<S: AsRef<str>>(&self, ids: &[S]) -> Result<Path> {
        let edges = ids
            .iter()
            .map(|id| self.edge_by_name(id.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.path(&edges)
    }

    pub fn vertex_path(&self, name: &str) -> Result<Path> {
        Ok(Path::vertex(self.vertex(name)?))
    }

    /// `prefix` followed by `suffix`; requires `s(prefix) = r(suffix)`.
    pub fn concat(&self, prefix: &Path, suffix: &Path) -> Result<Path> {
        if prefix.source() != suffix.range() {
            return Err(Error::ConcatMismatch {
                source_vertex: self.vertex_name(prefix.source()).to_string(),
                range_vertex: self.vertex_name(suffix.range()).to_string(),
            });
        }
        Ok(prefix.join(suffix))
    }

    /// All paths of length `k` in lexicographic edge order; `k = 0` gives the
    /// vertices.
    pub fn enumerate_paths(&self, k: usize) -> Result<Vec<Path>> {
        self.require_finite()?;
        if k == 0 {
            return Ok(self.vertex_ids().map(Path::vertex).collect());
        }
        let mut paths: Vec<Path> = self.edge_ids().map(|e| self.edge_path(e)).collect();
        for _ in 1..k {
            paths = self.extend_at_source(&paths);
        }
        Ok(paths)
    }

    /// `{ p e : p in paths, r(e) = s(p) }`, preserving lexicographic order.
    pub(crate) fn extend_at_source(&self, paths: &[Path]) -> Vec<Path> {
        paths
            .iter()
            .flat_map(|p| self.edges_into(p.source()).iter().map(move |&e| p.push_edge(self, e)))
            .collect()
    }

    /// Edge ids, or `{"vertex": id}`-style name for length-0 paths.
    pub fn path_label(&self, path: &Path) -> String {
        if path.is_vertex() {
            self.vertex_name(path.range()).to_string()
        } else {
            path.edges()
                .iter()
                .map(|&e| self.edge(e).id.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    pub fn edge_names(&self, path: &Path) -> Vec<String> {
        path.edges().iter().map(|&e| self.edge(e).id.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn labels(g: &Graph, paths: &[Path]) -> Vec<String> {
        paths.iter().map(|p| g.path_label(p)).collect()
    }

    #[test]
    fn enumerates_paths() {
        let g = c3();
        assert_eq!(labels(&g, &g.enumerate_paths(2).unwrap()), ["a.c", "b.a", "c.b"]);
        let g = loop_graph();
        assert_eq!(labels(&g, &g.enumerate_paths(3).unwrap()), ["e.e.e"]);
        assert!(m2().enumerate_paths(2).unwrap().is_empty());
        assert_eq!(labels(&m2(), &m2().enumerate_paths(0).unwrap()), ["u", "v"]);
        assert_eq!(inf().enumerate_paths(1).unwrap_err(), Error::NotEnumerable);
    }

    #[test]
    fn path_attributes() {
        let g = c3();
        let p = g.path_from_names(&["a", "c"]).unwrap();
        assert_eq!(g.vertex_name(p.range()), "y");
        assert_eq!(g.vertex_name(p.source()), "z");
        assert_eq!(p.len(), 2);
        assert!(matches!(g.path_from_names(&["a", "b"]), Err(Error::NotAPath { .. })));
    }

    #[test]
    fn concatenation() {
        let g = c3();
        let a = g.path_from_names(&["a"]).unwrap();
        let b = g.path_from_names(&["b"]).unwrap();
        let c = g.path_from_names(&["c"]).unwrap();
        assert_eq!(g.concat(&a, &c).unwrap(), g.path_from_names(&["a", "c"]).unwrap());
        let y = g.vertex_path("y").unwrap();
        assert_eq!(g.concat(&y, &a).unwrap(), a);
        let x = g.vertex_path("x").unwrap();
        assert_eq!(g.concat(&a, &x).unwrap(), a);
        let err = g.concat(&a, &b).unwrap_err();
        assert_eq!(
            err,
            Error::ConcatMismatch {
                source_vertex: "x".into(),
                range_vertex: "z".into()
            }
        );
    }

    #[test]
    fn path_count_recursion() {
        for g in [loop_graph(), o2(), m2(), y(), fork(), fib(), c3()] {
            for k in 0..6 {
                let shorter = g.enumerate_paths(k).unwrap();
                let expected: usize = g
                    .edges()
                    .iter()
                    .map(|e| shorter.iter().filter(|p| p.source() == e.rng).count())
                    .sum();
                assert_eq!(g.enumerate_paths(k + 1).unwrap().len(), expected);
            }
        }
    }

    #[test]
    fn prefix_helpers() {
        let g = loop_graph();
        let eee = g.path_from_names(&["e", "e", "e"]).unwrap();
        let e = g.path_from_names(&["e"]).unwrap();
        let v = g.vertex_path("v").unwrap();
        assert!(e.is_prefix_of(&eee));
        assert!(v.is_prefix_of(&eee));
        assert_eq!(eee.strip_prefix(&e), g.path_from_names(&["e", "e"]).unwrap());
        assert_eq!(eee.strip_prefix(&eee), v);
        assert_eq!(eee.prefix(&g, 0), v);
        assert_eq!(eee.prefix(&g, 1), e);
    }
}
