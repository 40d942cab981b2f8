//! Invariant measures (graph traces).
//!
//! A graph trace is a probability vector `μ` on the vertices with
//!
//! * `μ(v) = Σ_{r(e)=v} μ(s(e))` at every regular vertex,
//! * `μ(v) ≥ Σ_{r(e)=v} μ(s(e))` at every singular vertex,
//! * `μ(s) = 0` for the source of every infinite bundle.
//!
//! The set `T(E)` of graph traces is a polytope; its extreme points are the
//! extreme gauge-invariant tracial states of `C*(E)`.

mod certify;
mod simplex;
mod vertices;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::rational::Rational;

pub use certify::{certify_gauge_invariance, GaugeCertificate};
pub use simplex::{minimize, LpOutcome};
pub use vertices::{extreme_traces, extreme_traces_with};

/// Reads a `vertex -> value` map into vertex order; every vertex must be
/// present and no unknown vertex may appear.
pub fn measure_from_map(graph: &Graph, values: &BTreeMap<String, Rational>) -> Result<Vec<Rational>> {
    for name in values.keys() {
        graph.vertex(name)?;
    }
    graph
        .vertex_names()
        .iter()
        .map(|name| {
            values
                .get(name)
                .cloned()
                .ok_or_else(|| Error::MissingVertex(name.clone()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// `μ(v) - Σ_{r(e)=v} μ(s(e)) = 0`.
    Regular(VertexId),
    /// `μ(v) - Σ_{r(e)=v} μ(s(e)) ≥ 0`.
    Singular(VertexId),
    /// `μ(src) = 0` for an infinite bundle `src -> rng`.
    Bundle { src: VertexId, rng: VertexId },
    /// `Σ μ = 1`.
    Normalization,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub kind: RowKind,
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

/// Linear description of `T(E)`; variables are the vertex masses in vertex
/// order, all constrained to be nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub equalities: Vec<Row>,
    pub inequalities: Vec<Row>,
    pub normalization: Row,
}

impl ConstraintSystem {
    pub fn variables(&self) -> usize {
        self.normalization.coeffs.len()
    }

    /// Equalities followed by the normalization row.
    pub fn all_equalities(&self) -> impl Iterator<Item = &Row> {
        self.equalities.iter().chain(std::iter::once(&self.normalization))
    }
}

fn inflow_row(graph: &Graph, v: VertexId) -> Vec<Rational> {
    let mut coeffs = vec![Rational::zero(); graph.vertex_count()];
    coeffs[v.0] += Rational::one();
    for &e in graph.edges_into(v) {
        coeffs[graph.edge(e).src.0] -= Rational::one();
    }
    coeffs
}

pub fn constraint_system(graph: &Graph) -> ConstraintSystem {
    let n = graph.vertex_count();
    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();
    for v in graph.vertex_ids() {
        if graph.is_regular(v) {
            equalities.push(Row {
                kind: RowKind::Regular(v),
                coeffs: inflow_row(graph, v),
                rhs: Rational::zero(),
            });
        } else if !graph.edges_into(v).is_empty() {
            inequalities.push(Row {
                kind: RowKind::Singular(v),
                coeffs: inflow_row(graph, v),
                rhs: Rational::zero(),
            });
        }
    }
    for b in graph.bundles() {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[b.src.0] = Rational::one();
        equalities.push(Row {
            kind: RowKind::Bundle { src: b.src, rng: b.rng },
            coeffs,
            rhs: Rational::zero(),
        });
    }
    ConstraintSystem {
        equalities,
        inequalities,
        normalization: Row {
            kind: RowKind::Normalization,
            coeffs: vec![Rational::one(); n],
            rhs: Rational::one(),
        },
    }
}

/// Mass of `s*μ` on the edge space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mass {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Mass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mass::Finite(m) => write!(f, "{m}"),
            Mass::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Negative {
        vertex: VertexId,
        value: Rational,
    },
    Normalization {
        total: Rational,
    },
    Regular {
        vertex: VertexId,
        value: Rational,
        inflow: Rational,
    },
    Singular {
        vertex: VertexId,
        value: Rational,
        inflow: Rational,
    },
    Bundle {
        src: VertexId,
        rng: VertexId,
        value: Rational,
    },
}

impl Violation {
    pub fn describe(&self, graph: &Graph) -> String {
        let name = |v: &VertexId| graph.vertex_name(*v).to_string();
        match self {
            Violation::Negative { vertex, value } => format!("negative mass {value} at {}", name(vertex)),
            Violation::Normalization { total } => format!("total mass {total} != 1"),
            Violation::Regular { vertex, value, inflow } => {
                format!("regular vertex {}: {value} != {inflow}", name(vertex))
            }
            Violation::Singular { vertex, value, inflow } => {
                format!("singular vertex {}: {value} < {inflow}", name(vertex))
            }
            Violation::Bundle { src, rng, value } => format!(
                "infinite bundle {} -> {} needs mass 0 at {}, found {value}",
                name(src),
                name(rng),
                name(src)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub is_trace: bool,
    pub violations: Vec<Violation>,
    pub pushforward_mass: Mass,
}

/// `Σ_v μ(v) · #{e : s(e) = v}` with `0 · ∞ = 0` for bundles.
pub fn pushforward_mass(graph: &Graph, measure: &[Rational]) -> Mass {
    if graph.bundles().iter().any(|b| !measure[b.src.0].is_zero()) {
        return Mass::Infinite;
    }
    Mass::Finite(
        graph
            .vertex_ids()
            .map(|v| &measure[v.0] * Rational::from_integer(graph.edges_from(v).len().into()))
            .sum(),
    )
}

fn inflow(graph: &Graph, measure: &[Rational], v: VertexId) -> Rational {
    graph
        .edges_into(v)
        .iter()
        .map(|&e| measure[graph.edge(e).src.0].clone())
        .sum()
}

/// Exact verification of every defining constraint of `T(E)`.
pub fn check_invariant(graph: &Graph, measure: &[Rational]) -> Result<InvariantReport> {
    if measure.len() != graph.vertex_count() {
        let missing = graph.vertex_names().get(measure.len()).cloned().unwrap_or_default();
        return Err(Error::MissingVertex(missing));
    }
    let mut violations = Vec::new();
    for v in graph.vertex_ids() {
        if measure[v.0].is_negative() {
            violations.push(Violation::Negative {
                vertex: v,
                value: measure[v.0].clone(),
            });
        }
    }
    let total: Rational = measure.iter().sum();
    if !total.is_one() {
        violations.push(Violation::Normalization { total });
    }
    for v in graph.vertex_ids() {
        let value = measure[v.0].clone();
        let inflow = inflow(graph, measure, v);
        if graph.is_regular(v) {
            if value != inflow {
                violations.push(Violation::Regular {
                    vertex: v,
                    value,
                    inflow,
                });
            }
        } else if value < inflow {
            violations.push(Violation::Singular {
                vertex: v,
                value,
                inflow,
            });
        }
    }
    for b in graph.bundles() {
        if !measure[b.src.0].is_zero() {
            violations.push(Violation::Bundle {
                src: b.src,
                rng: b.rng,
                value: measure[b.src.0].clone(),
            });
        }
    }
    let pushforward_mass = pushforward_mass(graph, measure);
    let is_trace = violations.is_empty();
    if is_trace {
        match &pushforward_mass {
            Mass::Finite(m) if *m <= Rational::one() => {}
            other => {
                return Err(Error::Internal(format!(
                    "invariant measure with pushforward mass {other}"
                )))
            }
        }
    }
    Ok(InvariantReport {
        is_trace,
        violations,
        pushforward_mass,
    })
}

/// A verified invariant measure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphTrace {
    values: Vec<Rational>,
}

impl GraphTrace {
    pub fn new(graph: &Graph, values: Vec<Rational>) -> Result<Self> {
        let report = check_invariant(graph, &values)?;
        if !report.is_trace {
            let reasons: Vec<String> = report.violations.iter().map(|v| v.describe(graph)).collect();
            return Err(Error::NotInvariant(reasons.join("; ")));
        }
        Ok(Self { values })
    }

    pub(crate) fn new_unchecked(values: Vec<Rational>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, v: VertexId) -> &Rational {
        &self.values[v.0]
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    /// `{ v : μ(v) > 0 }`.
    pub fn support(&self) -> Vec<VertexId> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_positive())
            .map(|(i, _)| VertexId(i))
            .collect()
    }
}

/// Result of minimizing a linear functional over `T(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimumVerdict {
    EmptyTraceSpace,
    Minimum { value: Rational, argmin: GraphTrace },
}

/// Exact minimum of `Σ objective(v) μ(v)` over `T(E)`, solved with an exact
/// simplex method; the minimizer is an extreme point.
pub fn minimize_over_traces(graph: &Graph, objective: &[Rational]) -> Result<MinimumVerdict> {
    let n = graph.vertex_count();
    if objective.len() != n {
        let missing = graph.vertex_names().get(objective.len()).cloned().unwrap_or_default();
        return Err(Error::MissingVertex(missing));
    }
    let system = constraint_system(graph);
    let slacks = system.inequalities.len();
    let width = n + slacks;
    let pad = |coeffs: &[Rational]| {
        let mut row = coeffs.to_vec();
        row.resize(width, Rational::zero());
        row
    };
    let mut a = Vec::new();
    let mut b = Vec::new();
    for row in system.all_equalities() {
        a.push(pad(&row.coeffs));
        b.push(row.rhs.clone());
    }
    for (j, row) in system.inequalities.iter().enumerate() {
        let mut r = pad(&row.coeffs);
        r[n + j] = -Rational::one();
        a.push(r);
        b.push(row.rhs.clone());
    }
    let cost = pad(objective);
    match simplex::minimize(&a, &b, &cost) {
        LpOutcome::Infeasible => Ok(MinimumVerdict::EmptyTraceSpace),
        LpOutcome::Unbounded => Err(Error::Internal("trace polytope reported unbounded".into())),
        LpOutcome::Optimal { x, value } => {
            let argmin = GraphTrace::new(graph, x[..n].to_vec())
                .map_err(|e| Error::Internal(format!("simplex optimum is not a trace: {e}")))?;
            Ok(MinimumVerdict::Minimum { value, argmin })
        }
    }
}
