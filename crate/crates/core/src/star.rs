//! Formal linear combinations of spanning elements `s_a s_b*` with
//! `s(a) = s(b)`, and trace evaluation on them.
//!
//! Products follow the Toeplitz matching rule for `s_b* s_c`:
//!
//! * `c = b c''`  gives `s_c''`,
//! * `b = c b''`  gives `s_b''*`,
//! * otherwise `0`,
//!
//! where a vertex `v` is a prefix of every path with range `v`, so the
//! length-0 terms `s_v s_v* = p_v` act as range projections. Equality is
//! syntactic: the covariance relation `p_v = Σ_{r(e)=v} s_e s_e*` is never
//! used for rewriting, which keeps [`covariance_defect`] a nonzero element
//! whose trace is a checkable quantity.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::rational::{format_rational, parse_rational, GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalElement {
    graph_key: u64,
    terms: BTreeMap<(Path, Path), GaussianRational>,
}

impl FormalElement {
    pub fn zero(graph: &Graph) -> Self {
        Self {
            graph_key: graph.key(),
            terms: BTreeMap::new(),
        }
    }

    /// `coeff · s_alpha s_beta*`.
    pub fn term(graph: &Graph, alpha: Path, beta: Path, coeff: GaussianRational) -> Result<Self> {
        if alpha.source() != beta.source() {
            return Err(Error::InvalidTerm);
        }
        let mut x = Self::zero(graph);
        x.add_term(alpha, beta, coeff);
        Ok(x)
    }

    /// `p_v`.
    pub fn projection(graph: &Graph, v: VertexId) -> Self {
        let p = Path::vertex(v);
        Self::term(graph, p.clone(), p, GaussianRational::one()).expect("same source")
    }

    /// `s_a = s_a p_(s(a))`.
    pub fn path_isometry(graph: &Graph, alpha: &Path) -> Self {
        let base = Path::vertex(alpha.source());
        Self::term(graph, alpha.clone(), base, GaussianRational::one()).expect("same source")
    }

    pub fn edge(graph: &Graph, e: EdgeId) -> Self {
        Self::path_isometry(graph, &graph.edge_path(e))
    }

    fn add_term(&mut self, alpha: Path, beta: Path, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let key = (alpha, beta);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Path, &GaussianRational)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_graph(&self, other: &Self) -> Result<()> {
        if self.graph_key == other.graph_key {
            Ok(())
        } else {
            Err(Error::CrossGraph)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_graph(other)?;
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        let mut out = Self {
            graph_key: self.graph_key,
            terms: BTreeMap::new(),
        };
        for (a, b, c) in self.terms() {
            out.add_term(a.clone(), b.clone(), c * factor);
        }
        out
    }

    pub fn display(&self, graph: &Graph) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let part = |p: &Path| {
            if p.is_vertex() {
                format!("p_{}", graph.vertex_name(p.range()))
            } else {
                format!("s_{}", graph.path_label(p))
            }
        };
        self.terms()
            .map(|(a, b, c)| {
                let body = match (a.is_vertex(), b.is_vertex()) {
                    (true, true) => part(a),
                    (false, true) => part(a),
                    (true, false) => format!("{}*", part(b)),
                    (false, false) => format!("{} {}*", part(a), part(b)),
                };
                format!("({c}) {body}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `(s_a s_b*)(s_c s_d*)` as a single term, or `None` when it vanishes.
fn term_product(alpha: &Path, beta: &Path, gamma: &Path, delta: &Path) -> Option<(Path, Path)> {
    if beta.is_prefix_of(gamma) {
        let rest = gamma.strip_prefix(beta);
        Some((alpha.join(&rest), delta.clone()))
    } else if gamma.is_prefix_of(beta) {
        let rest = beta.strip_prefix(gamma);
        Some((alpha.clone(), delta.join(&rest)))
    } else {
        None
    }
}

pub fn multiply(x: &FormalElement, y: &FormalElement) -> Result<FormalElement> {
    x.same_graph(y)?;
    let mut out = FormalElement {
        graph_key: x.graph_key,
        terms: BTreeMap::new(),
    };
    for (a, b, c1) in x.terms() {
        for (g, d, c2) in y.terms() {
            if let Some((left, right)) = term_product(a, b, g, d) {
                out.add_term(left, right, c1 * c2);
            }
        }
    }
    Ok(out)
}

/// `(c s_a s_b*)* = conj(c) s_b s_a*`.
pub fn adjoint(x: &FormalElement) -> FormalElement {
    let mut out = FormalElement {
        graph_key: x.graph_key,
        terms: BTreeMap::new(),
    };
    for (a, b, c) in x.terms() {
        out.add_term(b.clone(), a.clone(), c.conj());
    }
    out
}

/// Terms of gauge degree `|a| - |b| = n`.
pub fn degree_component(x: &FormalElement, n: i64) -> FormalElement {
    FormalElement {
        graph_key: x.graph_key,
        terms: x
            .terms
            .iter()
            .filter(|((a, b), _)| a.len() as i64 - b.len() as i64 == n)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect(),
    }
}

/// `Σ_{a = b} c · μ(s(a))`: the gauge-invariant trace attached to `μ`.
pub fn trace_eval(graph: &Graph, mu: &[Rational], x: &FormalElement) -> Result<GaussianRational> {
    if x.graph_key != graph.key() {
        return Err(Error::CrossGraph);
    }
    if mu.len() != graph.vertex_count() {
        let missing = graph.vertex_names().get(mu.len()).cloned().unwrap_or_default();
        return Err(Error::MissingVertex(missing));
    }
    Ok(x.terms()
        .filter(|(a, b, _)| a == b)
        .fold(GaussianRational::zero(), |acc, (a, _, c)| {
            acc + c.scale(&mu[a.source().0])
        }))
}

/// `p_v - Σ_{r(e)=v} s_e s_e*` for a regular vertex `v`.
pub fn covariance_defect(graph: &Graph, v: VertexId) -> Result<FormalElement> {
    if !graph.is_regular(v) {
        return Err(Error::SingularVertex(graph.vertex_name(v).to_string()));
    }
    let mut x = FormalElement::projection(graph, v);
    for &e in graph.edges_into(v) {
        let p = graph.edge_path(e);
        x.add_term(p.clone(), p, -GaussianRational::one());
    }
    Ok(x)
}

/// Path in an element document: edge ids, or `{"vertex": id}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PathDoc {
    Edges(Vec<String>),
    Vertex { vertex: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffDoc {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub alpha: PathDoc,
    pub beta: PathDoc,
    pub coeff: CoeffDoc,
}

pub fn path_from_doc(graph: &Graph, doc: &PathDoc) -> Result<Path> {
    match doc {
        PathDoc::Vertex { vertex } => graph.vertex_path(vertex),
        PathDoc::Edges(ids) => graph.path_from_names(ids),
    }
}

pub fn path_to_doc(graph: &Graph, path: &Path) -> PathDoc {
    if path.is_vertex() {
        PathDoc::Vertex {
            vertex: graph.vertex_name(path.range()).to_string(),
        }
    } else {
        PathDoc::Edges(graph.edge_names(path))
    }
}

pub fn coeff_to_doc(c: &GaussianRational) -> CoeffDoc {
    CoeffDoc {
        re: format_rational(&c.re),
        im: format_rational(&c.im),
    }
}

impl FormalElement {
    pub fn from_docs(graph: &Graph, docs: &[TermDoc]) -> Result<Self> {
        let mut x = Self::zero(graph);
        for t in docs {
            let alpha = path_from_doc(graph, &t.alpha)?;
            let beta = path_from_doc(graph, &t.beta)?;
            if alpha.source() != beta.source() {
                return Err(Error::InvalidTerm);
            }
            let coeff = GaussianRational::new(parse_rational(&t.coeff.re)?, parse_rational(&t.coeff.im)?);
            x.add_term(alpha, beta, coeff);
        }
        Ok(x)
    }

    pub fn parse(graph: &Graph, json: &str) -> Result<Self> {
        let docs: Vec<TermDoc> = serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_docs(graph, &docs)
    }

    pub fn to_docs(&self, graph: &Graph) -> Vec<TermDoc> {
        self.terms()
            .map(|(a, b, c)| TermDoc {
                alpha: path_to_doc(graph, a),
                beta: path_to_doc(graph, b),
                coeff: coeff_to_doc(c),
            })
            .collect()
    }
}

impl fmt::Display for FormalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "formal element with {} terms", self.len())
    }
}
