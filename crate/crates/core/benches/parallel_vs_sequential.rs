use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gtrace::boundary::verify_boundary_identities_with;
use gtrace::graph::{EdgeDoc, GraphDoc};
use gtrace::traces::extreme_traces_with;
use gtrace::{Exec, Graph};

/// `sources` singular vertices feeding a chain of regular vertices, with a
/// few cross edges.
fn layered(sources: usize, chain: usize) -> Graph {
    let name = |i: usize| format!("v{i}");
    let n = sources + chain;
    let mut edges = Vec::new();
    let mut push = |s: usize, r: usize| {
        let id = format!("e{}", edges.len());
        edges.push(EdgeDoc {
            id,
            src: name(s),
            rng: name(r),
        });
    };
    for s in 0..sources {
        push(s, sources + s % chain);
        push(s, sources + (s + 1) % chain);
    }
    for c in 1..chain {
        push(sources + c - 1, sources + c);
    }
    Graph::from_doc(&GraphDoc {
        vertices: (0..n).map(name).collect(),
        edges,
        infinite_bundles: Vec::new(),
    })
    .unwrap()
}

fn fib() -> Graph {
    Graph::parse(
        r#"{"vertices":["1","2"],"edges":[
            {"id":"e11","src":"1","rng":"1"},{"id":"e21","src":"2","rng":"1"},{"id":"e12","src":"1","rng":"2"}]}"#,
    )
    .unwrap()
}

fn policies() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn bench_extreme_traces(c: &mut Criterion) {
    let g = layered(7, 5);
    let mut group = c.benchmark_group("extreme_traces");
    for (label, exec) in policies() {
        group.bench_with_input(BenchmarkId::new(label, "layered-7x5"), &g, |b, g| {
            b.iter(|| extreme_traces_with(black_box(g), exec))
        });
    }
    group.finish();
}

fn bench_boundary(c: &mut Criterion) {
    let g = layered(3, 4);
    let mu = extreme_traces_with(&g, Exec::Sequential).remove(0).into_values();
    let f = fib();
    let mut group = c.benchmark_group("verify_boundary_identities");
    for (label, exec) in policies() {
        group.bench_with_input(BenchmarkId::new(label, "layered-3x4-depth8"), &g, |b, g| {
            b.iter(|| verify_boundary_identities_with(black_box(g), &mu, 8, usize::MAX, exec).unwrap())
        });
        // fib is traceless; its induced measures still exercise every check.
        let nu = vec![gtrace::rational::rat(1, 2), gtrace::rational::rat(1, 2)];
        group.bench_with_input(BenchmarkId::new(label, "fib-depth14"), &f, |b, f| {
            b.iter(|| verify_boundary_identities_with(black_box(f), &nu, 14, usize::MAX, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_extreme_traces, bench_boundary
}
criterion_main!(benches);
