//! `K_0` and `K_1` of `C*(E)` for a finite discrete graph.
//!
//! With `ψ(f)(v) = Σ_{s(e)=v} f(r(e))`, the exact sequence
//! `0 -> K_1 -> Z^(E^0_reg) -(ι-ψ)-> Z^(E^0) -> K_0 -> 0` presents `K_0` as the
//! cokernel and `K_1` as the kernel of the integer matrix `ι - ψ`, whose entry
//! at row `w`, column `v` (regular) is `δ_wv - #{e : s(e) = w, r(e) = v}`.

mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::rational::Rational;
use crate::traces::{check_invariant, minimize_over_traces, GraphTrace, MinimumVerdict};

pub use snf::{smith_normal_form, IntMatrix, SmithDecomposition};

/// `ι - ψ` with its row (all vertices) and column (regular vertices) labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PvMatrix {
    pub matrix: IntMatrix,
    pub rows: Vec<VertexId>,
    pub columns: Vec<VertexId>,
}

pub fn pv_matrix(graph: &Graph) -> PvMatrix {
    let rows: Vec<VertexId> = graph.vertex_ids().collect();
    let columns = graph.regular_vertices();
    let mut matrix = IntMatrix::zeros(rows.len(), columns.len());
    for (j, &v) in columns.iter().enumerate() {
        matrix.set(v.0, j, BigInt::one());
        for &e in graph.edges_into(v) {
            let w = graph.edge(e).src;
            let entry = matrix.get(w.0, j) - 1;
            matrix.set(w.0, j, entry);
        }
    }
    PvMatrix { matrix, rows, columns }
}

/// Coordinates of a cokernel element: torsion coordinates reduced mod `d_i`,
/// then free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassCoords {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Group {
    pub free_rank: usize,
    /// Invariant factors greater than 1, in divisibility order.
    pub torsion: Vec<BigInt>,
    /// Class of `[δ_v]` for every vertex, in vertex order.
    pub generator_classes: Vec<ClassCoords>,
    /// Class of `Σ_v [δ_v]`, the unit.
    pub order_unit_class: ClassCoords,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K1Group {
    pub free_rank: usize,
    /// Kernel basis of `ι - ψ`, vectors indexed by regular vertices.
    pub kernel_basis: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGroups {
    pub pv: PvMatrix,
    pub smith: SmithDecomposition,
    pub k0: K0Group,
    pub k1: K1Group,
}

pub fn k_groups(graph: &Graph) -> KGroups {
    let pv = pv_matrix(graph);
    let mut smith = smith_normal_form(&pv.matrix);
    let m = pv.matrix.rows();
    let rank = smith.rank();
    let factors = smith.invariant_factors();

    let unit_image = |u: &IntMatrix, i: usize| -> BigInt { u.row(i).iter().sum() };
    // Free coordinates are only defined up to sign; orient each so the unit
    // has a nonnegative coordinate. Rows of D past the rank are zero, so this
    // keeps U·M·V = D.
    for i in rank..m {
        if unit_image(&smith.u, i).is_negative() {
            smith.u.negate_row(i);
        }
    }

    let coords = |column: &dyn Fn(usize) -> BigInt| ClassCoords {
        torsion: (0..rank)
            .filter(|&i| !factors[i].is_one())
            .map(|i| column(i).mod_floor(&factors[i]))
            .collect(),
        free: (rank..m).map(column).collect(),
    };
    let generator_classes = (0..m).map(|w| coords(&|i| smith.u.get(i, w).clone())).collect();
    let order_unit_class = coords(&|i| unit_image(&smith.u, i));

    let cols = pv.matrix.cols();
    let kernel_basis = (rank..cols).map(|j| smith.v.column(j)).collect();

    KGroups {
        k0: K0Group {
            free_rank: m - rank,
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
            generator_classes,
            order_unit_class,
        },
        k1: K1Group {
            free_rank: cols - rank,
            kernel_basis,
        },
        pv,
        smith,
    }
}

/// State on `K_0` induced by a trace: its values on the classes `[δ_v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0State {
    pub values: Vec<Rational>,
    pub order_unit_value: Rational,
}

pub fn state_from_trace(graph: &Graph, trace: &GraphTrace) -> Result<K0State> {
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
    let pv = pv_matrix(graph);
    for (j, &v) in pv.columns.iter().enumerate() {
        let pairing: Rational = (0..pv.matrix.rows())
            .map(|i| &trace.values()[i] * Rational::from_integer(pv.matrix.get(i, j).clone()))
            .sum();
        if !pairing.is_zero() {
            return Err(Error::Internal(format!(
                "trace does not annihilate the column of {}",
                graph.vertex_name(v)
            )));
        }
    }
    let order_unit_value: Rational = trace.values().iter().sum();
    if !order_unit_value.is_one() {
        return Err(Error::Internal("state is not normalized".into()));
    }
    Ok(K0State {
        values: trace.values().to_vec(),
        order_unit_value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    EmptyTraceSpace,
    Nonnegative { min: Rational, argmin: GraphTrace },
    NegativeWitness { min: Rational, trace: GraphTrace },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventualPositivity {
    pub verdict: Positivity,
    /// Always `false`: minimality of the graph and compactness of the vertex
    /// space, under which a nonnegative minimum certifies that a multiple of
    /// the class is positive, are left to the caller.
    pub hypotheses_checked: bool,
}

/// Minimizes `Σ a(v) μ(v)` over all traces.
pub fn eventually_positive(graph: &Graph, a: &[BigInt]) -> Result<EventualPositivity> {
    let objective: Vec<Rational> = a.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let verdict = match minimize_over_traces(graph, &objective)? {
        MinimumVerdict::EmptyTraceSpace => Positivity::EmptyTraceSpace,
        MinimumVerdict::Minimum { value, argmin } if !value.is_negative() => {
            Positivity::Nonnegative { min: value, argmin }
        }
        MinimumVerdict::Minimum { value, argmin } => Positivity::NegativeWitness {
            min: value,
            trace: argmin,
        },
    };
    Ok(EventualPositivity {
        verdict,
        hypotheses_checked: false,
    })
}
