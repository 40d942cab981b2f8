//! Finite boundary levels `∂E_n` and the measures an invariant measure
//! induces on them.
//!
//! `∂E_n` holds the paths of length exactly `n` together with the shorter
//! paths whose source is singular; `∂E_0 = E^0`. Truncation `ρ_n` drops the
//! last (source-side) edge of a full-length path and fixes the rest; the
//! backwards shift `σ` drops the first (range-side) edge.
//!
//! Level measures are defined recursively: `μ̃_0 = μ`, and on `∂E_(n+1)`
//! a path `β` of positive length gets `μ̃_n(σβ)` while a singular vertex `v`
//! gets `μ(v) - Σ_{r(e)=v} μ(s(e))`.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, Path};
use crate::rational::Rational;
use crate::traces::{check_invariant, GraphTrace};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLevel {
    pub n: usize,
    /// Sorted by [`Path`] order.
    pub paths: Vec<Path>,
    /// Point masses aligned with `paths`.
    pub measure: Option<Vec<Rational>>,
}

impl BoundaryLevel {
    pub fn index_of(&self, path: &Path) -> Option<usize> {
        self.paths.binary_search(path).ok()
    }

    pub fn mass(&self, path: &Path) -> Option<&Rational> {
        let i = self.index_of(path)?;
        self.measure.as_ref().map(|m| &m[i])
    }

    pub fn total_mass(&self) -> Option<Rational> {
        self.measure.as_ref().map(|m| m.iter().sum())
    }
}

pub fn in_level(graph: &Graph, path: &Path, n: usize) -> bool {
    path.len() == n || (path.len() < n && !graph.is_regular(path.source()))
}

pub fn boundary_level(graph: &Graph, n: usize) -> Result<BoundaryLevel> {
    boundary_level_with_budget(graph, n, usize::MAX)
}

/// Fails with [`Error::BudgetExceeded`] once the level would exceed `budget`
/// paths.
pub fn boundary_level_with_budget(graph: &Graph, n: usize, budget: usize) -> Result<BoundaryLevel> {
    graph.require_finite()?;
    let exceeded = || Error::BudgetExceeded { level: n, budget };
    if n == 0 {
        if graph.vertex_count() > budget {
            return Err(exceeded());
        }
        return Ok(BoundaryLevel {
            n,
            paths: graph.vertex_ids().map(Path::vertex).collect(),
            measure: None,
        });
    }
    let mut paths: Vec<Path> = graph.singular_vertices().into_iter().map(Path::vertex).collect();
    let mut current: Vec<Path> = graph.edge_ids().map(|e| graph.edge_path(e)).collect();
    for k in 1..=n {
        if paths.len() + current.len() > budget {
            return Err(exceeded());
        }
        if k == n {
            paths.extend(current);
            break;
        }
        paths.extend(current.iter().filter(|p| !graph.is_regular(p.source())).cloned());
        current = graph.extend_at_source(&current);
    }
    paths.sort();
    Ok(BoundaryLevel {
        n,
        paths,
        measure: None,
    })
}

/// `ρ_n : ∂E_n -> ∂E_(n-1)`.
pub fn truncate(graph: &Graph, path: &Path, n: usize) -> Result<Path> {
    if n == 0 || !in_level(graph, path, n) {
        return Err(Error::NotInLevel(graph.path_label(path), n));
    }
    Ok(if path.len() == n {
        path.prefix(graph, n - 1)
    } else {
        path.clone()
    })
}

/// Backwards shift: `σ(a_1) = s(a_1)`, `σ(a_1 ... a_k) = a_2 ... a_k`.
pub fn shift(graph: &Graph, path: &Path) -> Result<Path> {
    if path.is_vertex() {
        return Err(Error::ShiftOfVertex);
    }
    let first = graph.edge_path(path.edges()[0]);
    Ok(path.strip_prefix(&first))
}

/// Levels `0..=n` with measures induced by the invariant measure `trace`.
pub fn boundary_measure(graph: &Graph, trace: &GraphTrace, n: usize) -> Result<Vec<BoundaryLevel>> {
    boundary_measure_with_budget(graph, trace, n, usize::MAX)
}

pub fn boundary_measure_with_budget(
    graph: &Graph,
    trace: &GraphTrace,
    n: usize,
    budget: usize,
) -> Result<Vec<BoundaryLevel>> {
    let report = check_invariant(graph, trace.values())?;
    if !report.is_trace {
        return Err(Error::NotInvariant(
            report
                .violations
                .iter()
                .map(|v| v.describe(graph))
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    induced_measures(graph, trace.values(), n, budget)
}

/// The recursion applied to an arbitrary vertex weighting. Only meaningful as
/// a probability measure when the weighting is invariant.
pub fn induced_measures(graph: &Graph, mu: &[Rational], n: usize, budget: usize) -> Result<Vec<BoundaryLevel>> {
    graph.require_finite()?;
    if mu.len() != graph.vertex_count() {
        let missing = graph.vertex_names().get(mu.len()).cloned().unwrap_or_default();
        return Err(Error::MissingVertex(missing));
    }
    let mut levels: Vec<BoundaryLevel> = Vec::with_capacity(n + 1);
    let mut base = boundary_level_with_budget(graph, 0, budget)?;
    base.measure = Some(mu.to_vec());
    levels.push(base);
    for m in 1..=n {
        let mut level = boundary_level_with_budget(graph, m, budget)?;
        let previous = &levels[m - 1];
        let masses = level
            .paths
            .iter()
            .map(|beta| {
                if beta.is_vertex() {
                    let v = beta.range();
                    let inflow: Rational = graph
                        .edges_into(v)
                        .iter()
                        .map(|&e| mu[graph.edge(e).src.0].clone())
                        .sum();
                    if !inflow.is_zero() {
                        return Err(Error::Internal(format!(
                            "singular vertex {} receives finite edges",
                            graph.vertex_name(v)
                        )));
                    }
                    Ok(&mu[v.0] - inflow)
                } else {
                    let shifted = shift(graph, beta)?;
                    previous.mass(&shifted).cloned().ok_or_else(|| {
                        Error::Internal(format!("shift of {} left level {}", graph.path_label(beta), m - 1))
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        level.measure = Some(masses);
        levels.push(level);
    }
    Ok(levels)
}

/// Where an identity failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub level: usize,
    /// Path or vertex label.
    pub at: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub failure: Option<Failure>,
}

impl Check {
    fn from_failures(failures: Vec<Option<Failure>>) -> Self {
        let failure = failures.into_iter().flatten().next();
        Self {
            holds: failure.is_none(),
            failure,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryReport {
    pub depth: usize,
    pub nonnegativity: Check,
    pub unit_mass: Check,
    pub rho_consistency: Check,
    pub range_identity: Check,
    pub cylinder_identity: Check,
    pub shift_identity: Check,
}

impl BoundaryReport {
    pub fn all_hold(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.holds)
    }

    pub fn checks(&self) -> [(&'static str, &Check); 6] {
        [
            ("nonnegativity", &self.nonnegativity),
            ("unit_mass", &self.unit_mass),
            ("rho_consistency", &self.rho_consistency),
            ("range_identity", &self.range_identity),
            ("cylinder_identity", &self.cylinder_identity),
            ("shift_identity", &self.shift_identity),
        ]
    }
}

fn masses(level: &BoundaryLevel) -> &[Rational] {
    level.measure.as_deref().expect("measured level")
}

pub fn verify_boundary_identities(graph: &Graph, mu: &[Rational], n: usize) -> Result<BoundaryReport> {
    verify_boundary_identities_with(graph, mu, n, usize::MAX, Exec::default())
}

/// Runs all six checks on levels `0..=n` of the measures induced by `mu`,
/// which need not be invariant.
pub fn verify_boundary_identities_with(
    graph: &Graph,
    mu: &[Rational],
    n: usize,
    budget: usize,
    exec: Exec,
) -> Result<BoundaryReport> {
    let levels = induced_measures(graph, mu, n, budget)?;
    Ok(verify_levels(graph, mu, &levels, exec))
}

pub fn verify_levels(graph: &Graph, mu: &[Rational], levels: &[BoundaryLevel], exec: Exec) -> BoundaryReport {
    let depth = levels.len().saturating_sub(1);
    let indices: Vec<usize> = (0..levels.len()).collect();
    let label = |p: &Path| graph.path_label(p);

    let nonnegativity = Check::from_failures(exec.map(indices.clone(), |m| {
        let level = &levels[m];
        level
            .paths
            .iter()
            .zip(masses(level))
            .find(|(_, x)| x.is_negative())
            .map(|(p, x)| Failure {
                level: m,
                at: label(p),
                lhs: x.clone(),
                rhs: Rational::zero(),
            })
    }));

    let unit_mass = Check::from_failures(exec.map(indices.clone(), |m| {
        let total: Rational = masses(&levels[m]).iter().sum();
        (total != num_traits::One::one()).then(|| Failure {
            level: m,
            at: "total".into(),
            lhs: total,
            rhs: num_traits::One::one(),
        })
    }));

    let rho_consistency = Check::from_failures(exec.map(indices[1..].to_vec(), |m| {
        let (lower, upper) = (&levels[m - 1], &levels[m]);
        let mut pushed = vec![Rational::zero(); lower.paths.len()];
        for (beta, x) in upper.paths.iter().zip(masses(upper)) {
            let Some(i) = truncate(graph, beta, m).ok().and_then(|p| lower.index_of(&p)) else {
                return Some(Failure {
                    level: m,
                    at: label(beta),
                    lhs: x.clone(),
                    rhs: Rational::zero(),
                });
            };
            pushed[i] += x;
        }
        lower
            .paths
            .iter()
            .zip(pushed)
            .zip(masses(lower))
            .find(|((_, lhs), rhs)| lhs != *rhs)
            .map(|((p, lhs), rhs)| Failure {
                level: m,
                at: label(p),
                lhs,
                rhs: rhs.clone(),
            })
    }));

    let range_identity = Check::from_failures(exec.map(indices.clone(), |m| {
        let level = &levels[m];
        let mut by_range = vec![Rational::zero(); graph.vertex_count()];
        for (beta, x) in level.paths.iter().zip(masses(level)) {
            by_range[beta.range().0] += x;
        }
        graph.vertex_ids().find(|v| by_range[v.0] != mu[v.0]).map(|v| Failure {
            level: m,
            at: graph.vertex_name(v).to_string(),
            lhs: by_range[v.0].clone(),
            rhs: mu[v.0].clone(),
        })
    }));

    let cylinder_identity = Check::from_failures(exec.map(indices[1..].to_vec(), |m| {
        let level = &levels[m];
        let mut cylinders: HashMap<Path, Rational> = HashMap::new();
        for (beta, x) in level.paths.iter().zip(masses(level)) {
            for k in 1..=beta.len() {
                *cylinders.entry(beta.prefix(graph, k)).or_insert_with(Rational::zero) += x;
            }
        }
        for k in 1..=m {
            let alphas = graph.enumerate_paths(k).expect("finite graph");
            for alpha in alphas {
                let lhs = cylinders.get(&alpha).cloned().unwrap_or_else(Rational::zero);
                let rhs = mu[alpha.source().0].clone();
                if lhs != rhs {
                    return Some(Failure {
                        level: m,
                        at: label(&alpha),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        None
    }));

    let shift_identity = Check::from_failures(exec.map(indices[1..].to_vec(), |m| {
        let level = &levels[m];
        for (beta, x) in level.paths.iter().zip(masses(level)) {
            let mut shifted = beta.clone();
            for k in 1..=beta.len() {
                shifted = shift(graph, &shifted).expect("positive length");
                let rhs = levels[m - k].mass(&shifted).cloned();
                if rhs.as_ref() != Some(x) {
                    return Some(Failure {
                        level: m,
                        at: format!("{} (k = {k})", label(beta)),
                        lhs: x.clone(),
                        rhs: rhs.unwrap_or_else(Rational::zero),
                    });
                }
            }
        }
        None
    }));

    BoundaryReport {
        depth,
        nonnegativity,
        unit_mass,
        rho_consistency,
        range_identity,
        cylinder_identity,
        shift_identity,
    }
}
