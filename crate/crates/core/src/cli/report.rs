//! JSON output documents. Rationals are `"p/q"` strings; integers are JSON
//! numbers when they fit in an `i64` and decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::boundary::{BoundaryLevel, BoundaryReport, Check};
use crate::error::Result;
use crate::graph::{CycleCount, Graph, Path, Verdict, VertexId};
use crate::ktheory::{ClassCoords, EventualPositivity, K0State, KGroups, Positivity};
use crate::rational::{format_rational, GaussianRational, Rational};
use crate::star::{self, FormalElement};
use crate::traces::{
    ConstraintSystem, GaugeCertificate, GraphTrace, InvariantReport, MinimumVerdict, Row, RowKind, Violation,
};

pub const SCHEMA_VERSION: u64 = 1;

/// Pretty-printed with a trailing newline; parsing and re-serializing the
/// output reproduces it byte for byte.
pub fn canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub(super) struct Doc(Map<String, Value>);

impl Doc {
    pub fn new(command: &str) -> Self {
        let mut map = Map::new();
        map.insert("schema_version".into(), SCHEMA_VERSION.into());
        map.insert("command".into(), command.into());
        Doc(map)
    }

    pub fn put(&mut self, key: &str, value: Value) {
        self.0.insert(key.into(), value);
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.0)
    }
}

fn rational(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn integer(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => i.into(),
        None => Value::String(x.to_string()),
    }
}

fn integers(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(integer).collect())
}

fn name(g: &Graph, v: VertexId) -> Value {
    g.vertex_name(v).into()
}

fn names(g: &Graph, vs: &[VertexId]) -> Value {
    Value::Array(vs.iter().map(|&v| name(g, v)).collect())
}

pub(super) fn path(g: &Graph, p: &Path) -> Value {
    serde_json::to_value(star::path_to_doc(g, p)).expect("serializable")
}

fn vertex_map(g: &Graph, values: &[Rational]) -> Value {
    Value::Object(
        g.vertex_names()
            .iter()
            .zip(values)
            .map(|(k, x)| (k.clone(), rational(x)))
            .collect(),
    )
}

pub(super) fn trace_list(g: &Graph, traces: &[GraphTrace]) -> Value {
    Value::Array(traces.iter().map(|t| vertex_map(g, t.values())).collect())
}

pub(super) fn gaussian(c: &GaussianRational) -> Value {
    json!({"re": format_rational(&c.re), "im": format_rational(&c.im)})
}

pub(super) fn element(g: &Graph, x: &FormalElement) -> Value {
    serde_json::to_value(x.to_docs(g)).expect("serializable")
}

fn cycle_count(c: CycleCount) -> Value {
    match c {
        CycleCount::Zero => "0",
        CycleCount::One => "1",
        CycleCount::AtLeastTwo => ">=2",
    }
    .into()
}

fn verdict(g: &Graph, v: &Verdict) -> Value {
    match v {
        Verdict::Satisfied => json!({"satisfied": true}),
        Verdict::Fails { vertex, witness } => json!({
            "satisfied": false,
            "vertex": name(g, *vertex),
            "witness": path(g, witness),
        }),
    }
}

pub(super) fn info(doc: &mut Doc, g: &Graph) -> Result<()> {
    let classes = g.classify_vertices();
    doc.put("vertices", g.vertex_names().into());
    doc.put("edge_count", g.edge_count().into());
    doc.put("infinite_bundle_count", g.bundles().len().into());
    doc.put("regular", names(g, &classes.regular));
    doc.put("singular", names(g, &classes.singular));
    doc.put("cycle_sources", names(g, &g.cycle_sources()));
    if g.has_bundles() {
        doc.put("condition_k", json!({"undecided": "graph has infinite bundles"}));
        return Ok(());
    }
    doc.put("condition_k", verdict(g, &g.condition_k()?));
    let mut cycles = Map::new();
    for v in g.vertex_ids() {
        let c = g.simple_cycles_at(v, g.witness_cap())?;
        cycles.insert(
            g.vertex_name(v).to_string(),
            json!({
                "count": cycle_count(c.count),
                "witnesses": c.witnesses.iter().map(|w| path(g, w)).collect::<Vec<_>>(),
            }),
        );
    }
    doc.put("simple_cycles", Value::Object(cycles));
    Ok(())
}

fn row(g: &Graph, r: &Row) -> Value {
    let kind = match &r.kind {
        RowKind::Regular(v) => json!({"regular": name(g, *v)}),
        RowKind::Singular(v) => json!({"singular": name(g, *v)}),
        RowKind::Bundle { src, rng } => json!({"bundle": {"src": name(g, *src), "rng": name(g, *rng)}}),
        RowKind::Normalization => json!("normalization"),
    };
    json!({"kind": kind, "coeffs": vertex_map(g, &r.coeffs), "rhs": rational(&r.rhs)})
}

pub(super) fn constraints(g: &Graph, s: &ConstraintSystem) -> Value {
    json!({
        "equalities": s.equalities.iter().map(|r| row(g, r)).collect::<Vec<_>>(),
        "inequalities": s.inequalities.iter().map(|r| row(g, r)).collect::<Vec<_>>(),
        "normalization": row(g, &s.normalization),
        "nonnegative": true,
    })
}

fn violation(g: &Graph, v: &Violation) -> Value {
    json!({"description": v.describe(g)})
}

pub(super) fn invariant(g: &Graph, r: &InvariantReport) -> Value {
    json!({
        "is_trace": r.is_trace,
        "violations": r.violations.iter().map(|v| violation(g, v)).collect::<Vec<_>>(),
        "pushforward_mass": r.pushforward_mass.to_string(),
    })
}

pub(super) fn minimum(g: &Graph, m: &MinimumVerdict) -> Value {
    match m {
        MinimumVerdict::EmptyTraceSpace => json!({"status": "empty_trace_space"}),
        MinimumVerdict::Minimum { value, argmin } => json!({
            "status": "minimum",
            "value": rational(value),
            "argmin": vertex_map(g, argmin.values()),
        }),
    }
}

fn coords(c: &ClassCoords) -> Value {
    json!({"torsion": integers(&c.torsion), "free": integers(&c.free)})
}

pub(super) fn k_groups(doc: &mut Doc, g: &Graph, k: &KGroups) {
    let m = &k.pv.matrix;
    doc.put(
        "matrix",
        json!({
            "rows": names(g, &k.pv.rows),
            "columns": names(g, &k.pv.columns),
            "entries": (0..m.rows()).map(|i| integers(m.row(i))).collect::<Vec<_>>(),
        }),
    );
    doc.put("invariant_factors", integers(&k.smith.invariant_factors()));
    doc.put(
        "K0",
        json!({"free_rank": k.k0.free_rank, "torsion": integers(&k.k0.torsion)}),
    );
    let unit = &k.k0.order_unit_class;
    let unit = match (unit.torsion.as_slice(), unit.free.as_slice()) {
        ([], [x]) => integer(x),
        _ => coords(unit),
    };
    doc.put("order_unit", unit);
    doc.put(
        "generator_classes",
        Value::Object(
            g.vertex_names()
                .iter()
                .zip(&k.k0.generator_classes)
                .map(|(v, c)| (v.clone(), coords(c)))
                .collect(),
        ),
    );
    doc.put(
        "K1",
        json!({
            "free_rank": k.k1.free_rank,
            "kernel_basis": k.k1.kernel_basis.iter().map(|b| integers(b)).collect::<Vec<_>>(),
        }),
    );
}

pub(super) fn states(g: &Graph, states: &[K0State]) -> Value {
    Value::Array(
        states
            .iter()
            .map(|s| json!({"values": vertex_map(g, &s.values), "order_unit_value": rational(&s.order_unit_value)}))
            .collect(),
    )
}

pub(super) fn levels(g: &Graph, levels: &[BoundaryLevel]) -> Value {
    Value::Array(
        levels
            .iter()
            .map(|l| {
                let mut m = Map::new();
                m.insert("n".into(), l.n.into());
                m.insert(
                    "paths".into(),
                    Value::Array(l.paths.iter().map(|p| path(g, p)).collect()),
                );
                if let Some(masses) = &l.measure {
                    m.insert("masses".into(), Value::Array(masses.iter().map(rational).collect()));
                }
                Value::Object(m)
            })
            .collect(),
    )
}

fn check(c: &Check) -> Value {
    match &c.failure {
        None => json!({"holds": true}),
        Some(f) => json!({
            "holds": false,
            "witness": {"level": f.level, "at": f.at, "lhs": rational(&f.lhs), "rhs": rational(&f.rhs)},
        }),
    }
}

pub(super) fn boundary_report(r: &BoundaryReport) -> Value {
    let mut m = Map::new();
    for (key, c) in r.checks() {
        m.insert(key.into(), check(c));
    }
    m.insert("all_hold".into(), r.all_hold().into());
    Value::Object(m)
}

pub(super) fn positivity(doc: &mut Doc, g: &Graph, p: &EventualPositivity) {
    match &p.verdict {
        Positivity::EmptyTraceSpace => doc.put("verdict", "empty_trace_space".into()),
        Positivity::Nonnegative { min, argmin } => {
            doc.put("verdict", "nonnegative".into());
            doc.put("min", rational(min));
            doc.put("trace", vertex_map(g, argmin.values()));
        }
        Positivity::NegativeWitness { min, trace } => {
            doc.put("verdict", "negative_witness".into());
            doc.put("min", rational(min));
            doc.put("trace", vertex_map(g, trace.values()));
        }
    }
    doc.put("hypotheses_checked", p.hypotheses_checked.into());
    doc.put(
        "note",
        "a nonnegative minimum certifies eventual positivity only for minimal graphs with compact vertex space; not checked"
            .into(),
    );
}

pub(super) fn certificates(g: &Graph, certs: &[GaugeCertificate]) -> Value {
    Value::Array(
        certs
            .iter()
            .map(|c| match c {
                GaugeCertificate::NoCycleInSupport { cycle_sources, support } => json!({
                    "kind": "NoCycleInSupport",
                    "cycle_sources": names(g, cycle_sources),
                    "support": names(g, support),
                }),
                GaugeCertificate::ConditionK => json!({"kind": "ConditionK"}),
                GaugeCertificate::Unknown {
                    cycle_sources_in_support,
                    condition_k,
                } => json!({
                    "kind": "Unknown",
                    "cycle_sources_in_support": names(g, cycle_sources_in_support),
                    "condition_k": condition_k.as_ref().map(|v| verdict(g, v)),
                }),
            })
            .collect(),
    )
}
