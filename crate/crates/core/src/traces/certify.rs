//! Sufficient conditions for every trace (or a given trace) to be gauge
//! invariant.

use crate::error::{Error, Result};
use crate::graph::{Graph, Verdict, VertexId};

use super::{check_invariant, GraphTrace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeCertificate {
    /// No cycle has its source in the support. For the "all traces" query the
    /// support is every vertex, so this is the no-cycles case.
    NoCycleInSupport {
        cycle_sources: Vec<VertexId>,
        support: Vec<VertexId>,
    },
    /// The graph satisfies condition (K).
    ConditionK,
    /// Neither certificate applies. This does not assert that a
    /// non-gauge-invariant trace exists.
    Unknown {
        cycle_sources_in_support: Vec<VertexId>,
        condition_k: Option<Verdict>,
    },
}

/// `trace = None` asks about every tracial state.
pub fn certify_gauge_invariance(graph: &Graph, trace: Option<&GraphTrace>) -> Result<Vec<GaugeCertificate>> {
    if let Some(t) = trace {
        let report = check_invariant(graph, t.values())?;
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
    }
    let cycle_sources = graph.cycle_sources();
    let support: Vec<VertexId> = match trace {
        Some(t) => t.support(),
        None => graph.vertex_ids().collect(),
    };
    let blocking: Vec<VertexId> = cycle_sources.iter().copied().filter(|v| support.contains(v)).collect();
    // Condition (K) is only decided for graphs without infinite bundles.
    let condition_k = graph.condition_k().ok();

    let mut certificates = Vec::new();
    if blocking.is_empty() {
        certificates.push(GaugeCertificate::NoCycleInSupport { cycle_sources, support });
    }
    if condition_k.as_ref().is_some_and(Verdict::is_satisfied) {
        certificates.push(GaugeCertificate::ConditionK);
    }
    if certificates.is_empty() {
        certificates.push(GaugeCertificate::Unknown {
            cycle_sources_in_support: blocking,
            condition_k,
        });
    }
    Ok(certificates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::rational::{int, rat};

    #[test]
    fn certificates_for_fixtures() {
        let g = m2();
        let certs = certify_gauge_invariance(&g, None).unwrap();
        assert_eq!(certs.len(), 2);
        assert!(
            matches!(&certs[0], GaugeCertificate::NoCycleInSupport { cycle_sources, .. } if cycle_sources.is_empty())
        );
        assert_eq!(certs[1], GaugeCertificate::ConditionK);

        let g = loop_graph();
        let t = GraphTrace::new(&g, vec![int(1)]).unwrap();
        let certs = certify_gauge_invariance(&g, Some(&t)).unwrap();
        assert!(matches!(
            &certs[..],
            [GaugeCertificate::Unknown { cycle_sources_in_support, condition_k: Some(Verdict::Fails { .. }) }]
                if cycle_sources_in_support == &vec![VertexId(0)]
        ));

        assert_eq!(
            certify_gauge_invariance(&o2(), None).unwrap(),
            vec![GaugeCertificate::ConditionK]
        );
    }

    #[test]
    fn support_avoiding_cycles() {
        // The loop at w lies outside the support {u, v}.
        let g = build(&["u", "v", "w"], &[("e", "u", "v"), ("l", "w", "w")], &[]);
        let t = GraphTrace::new(&g, vec![rat(1, 2), rat(1, 2), int(0)]).unwrap();
        let certs = certify_gauge_invariance(&g, Some(&t)).unwrap();
        assert!(matches!(&certs[0], GaugeCertificate::NoCycleInSupport { .. }));
        assert_eq!(certs.len(), 1);
    }

    #[test]
    fn rejects_non_invariant_measure() {
        let g = m2();
        let bogus = GraphTrace::new_unchecked(vec![int(1), int(0)]);
        assert!(matches!(
            certify_gauge_invariance(&g, Some(&bogus)),
            Err(Error::NotInvariant(_))
        ));
    }
}
