mod common;

use std::collections::BTreeSet;

use gtrace::boundary::{boundary_level, verify_boundary_identities};
use gtrace::graph::{BundleDoc, EdgeDoc, GraphDoc};
use gtrace::ktheory::{k_groups, smith_normal_form, IntMatrix};
use gtrace::linalg::dot;
use gtrace::rational::{format_rational, int, parse_rational, rat};
use gtrace::traces::{check_invariant, extreme_traces_with, minimize_over_traces, MinimumVerdict};
use gtrace::{Exec, Graph, Rational};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..n), 0..=6),
                prop::collection::btree_set((0..n, 0..n), 0..=1),
            )
        })
        .prop_map(|(n, edges, bundles)| {
            let name = |i: usize| format!("v{i}");
            let doc = GraphDoc {
                vertices: (0..n).map(name).collect(),
                edges: edges
                    .iter()
                    .enumerate()
                    .map(|(k, &(s, r))| EdgeDoc {
                        id: format!("e{k}"),
                        src: name(s),
                        rng: name(r),
                    })
                    .collect(),
                infinite_bundles: bundles
                    .iter()
                    .map(|&(s, r)| BundleDoc {
                        src: name(s),
                        rng: name(r),
                    })
                    .collect(),
            };
            Graph::from_doc(&doc).unwrap()
        })
}

fn finite_graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=6)))
        .prop_map(|(n, edges)| common::graph_from_pairs(n, &edges))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn document_round_trip(g in graph_strategy()) {
        let back = Graph::from_doc(&g.to_doc()).unwrap();
        prop_assert_eq!(back.to_doc(), g.to_doc());
    }

    #[test]
    fn path_counts_follow_source_recursion(g in finite_graph_strategy(), k in 0usize..5) {
        let paths = g.enumerate_paths(k).unwrap();
        let longer = g.enumerate_paths(k + 1).unwrap().len();
        let expected: usize = g
            .edges()
            .iter()
            .map(|e| paths.iter().filter(|p| p.range() == e.src).count())
            .sum();
        prop_assert_eq!(longer, expected);
        prop_assert!(paths.iter().all(|p| p.len() == k));
    }

    #[test]
    fn execution_policies_agree(g in graph_strategy()) {
        prop_assert_eq!(extreme_traces_with(&g, Exec::Sequential), extreme_traces_with(&g, Exec::Parallel));
    }

    #[test]
    fn extreme_traces_are_invariant_and_distinct(g in graph_strategy()) {
        let traces = extreme_traces_with(&g, Exec::Sequential);
        let distinct: BTreeSet<_> = traces.iter().map(|t| t.values().to_vec()).collect();
        prop_assert_eq!(distinct.len(), traces.len());
        for t in &traces {
            prop_assert!(check_invariant(&g, t.values()).unwrap().is_trace);
        }
    }

    #[test]
    fn simplex_minimum_matches_vertex_enumeration(
        g in graph_strategy(),
        weights in prop::collection::vec(-5i64..=5, 4),
    ) {
        let objective: Vec<Rational> = weights[..g.vertex_count()].iter().map(|&w| int(w)).collect();
        let traces = extreme_traces_with(&g, Exec::Sequential);
        match minimize_over_traces(&g, &objective).unwrap() {
            MinimumVerdict::EmptyTraceSpace => prop_assert!(traces.is_empty()),
            MinimumVerdict::Minimum { value, argmin } => {
                let best = traces.iter().map(|t| dot(&objective, t.values())).min().unwrap();
                prop_assert_eq!(&value, &best);
                prop_assert_eq!(dot(&objective, argmin.values()), best);
                prop_assert!(check_invariant(&g, argmin.values()).unwrap().is_trace);
            }
        }
    }

    #[test]
    fn boundary_identities_hold_for_random_traces(g in finite_graph_strategy(), depth in 0usize..4) {
        for t in extreme_traces_with(&g, Exec::Sequential) {
            let report = verify_boundary_identities(&g, t.values(), depth).unwrap();
            prop_assert!(report.all_hold(), "{:?}", report);
        }
    }

    #[test]
    fn boundary_levels_are_ordered_and_unique(g in finite_graph_strategy(), n in 0usize..4) {
        let level = boundary_level(&g, n).unwrap();
        prop_assert!(level.paths.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn k0_rank_matches_smith_rank(g in graph_strategy()) {
        let k = k_groups(&g);
        let rank = k.smith.rank();
        prop_assert_eq!(k.k0.free_rank, g.vertex_count() - rank);
        prop_assert_eq!(k.k1.free_rank, k.pv.columns.len() - rank);
    }

    #[test]
    fn smith_reconstructs(rows in prop::collection::vec(prop::collection::vec(-20i64..=20, 4), 1..=5)) {
        let m = IntMatrix::from_i64(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn rational_text_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let x = rat(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
}
