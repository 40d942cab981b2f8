#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use gtrace::graph::{EdgeDoc, GraphDoc};
use gtrace::rational::{int, rat};
use gtrace::star::FormalElement;
use gtrace::{GaussianRational, Graph, Path, Rational, VertexId};
use num_traits::{Signed, Zero};
use rand::Rng;

pub const FIXTURES: [&str; 8] = ["loop", "o2", "m2", "y", "fork", "fib", "c3", "inf"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Graph {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture present");
    Graph::parse(&text).expect("fixture parses")
}

pub fn named(g: &Graph, values: &[Rational]) -> BTreeMap<String, Rational> {
    g.vertex_names().iter().cloned().zip(values.iter().cloned()).collect()
}

pub fn measure(pairs: &[(&str, i64, i64)]) -> BTreeMap<String, Rational> {
    pairs.iter().map(|&(v, p, q)| (v.to_string(), rat(p, q))).collect()
}

/// Every multigraph on 1..=4 vertices with at most 5 edges, one per multiset
/// of (src, rng) pairs. Loops and parallel edges included.
pub fn small_graphs() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |r| (s, r))).collect();
        let mut chosen = Vec::new();
        multisets(&pairs, 0, 5, &mut chosen, &mut |edges| {
            out.push(graph_from_pairs(n, edges))
        });
    }
    out
}

type Pair = (usize, usize);

fn multisets(pairs: &[Pair], start: usize, left: usize, chosen: &mut Vec<Pair>, emit: &mut dyn FnMut(&[Pair])) {
    emit(chosen);
    if left == 0 {
        return;
    }
    for i in start..pairs.len() {
        chosen.push(pairs[i]);
        multisets(pairs, i, left - 1, chosen, emit);
        chosen.pop();
    }
}

pub fn graph_from_pairs(n: usize, edges: &[(usize, usize)]) -> Graph {
    let doc = GraphDoc {
        vertices: (0..n).map(|i| format!("v{i}")).collect(),
        edges: edges
            .iter()
            .enumerate()
            .map(|(k, &(s, r))| EdgeDoc {
                id: format!("e{k}"),
                src: format!("v{s}"),
                rng: format!("v{r}"),
            })
            .collect(),
        infinite_bundles: Vec::new(),
    };
    Graph::from_doc(&doc).expect("generated graph is valid")
}

fn reduce(rows: &mut [Vec<Rational>], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for x in rows[rank].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Unique solution of the augmented system `[A | b]`, if there is one.
fn unique_solution(mut rows: Vec<Vec<Rational>>, cols: usize) -> Option<Vec<Rational>> {
    let rank = reduce(&mut rows, cols);
    if rows[rank..].iter().any(|r| !r[cols].is_zero()) || rank < cols {
        return None;
    }
    Some((0..cols).map(|i| rows[i][cols].clone()).collect())
}

/// Basic feasible solutions of the trace polytope, written out from the edge
/// list alone: every choice of active inequalities that pins down a point.
pub fn polytope_oracle(g: &Graph) -> BTreeSet<Vec<Rational>> {
    let n = g.vertex_count();
    let mut inflow = vec![vec![0i64; n]; n];
    let mut receives = vec![false; n];
    for e in g.edges() {
        inflow[e.rng.0][e.src.0] += 1;
        receives[e.rng.0] = true;
    }
    let row = |v: usize| -> Vec<Rational> {
        let mut r: Vec<Rational> = (0..n).map(|w| int(-inflow[v][w])).collect();
        r[v] += int(1);
        r.push(int(0));
        r
    };
    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();
    for v in 0..n {
        if receives[v] {
            equalities.push(row(v));
        } else {
            let mut r = vec![int(0); n + 1];
            r[v] = int(1);
            inequalities.push(r);
        }
    }
    for v in 0..n {
        if receives[v] {
            let mut r = vec![int(0); n + 1];
            r[v] = int(1);
            inequalities.push(r);
        }
    }
    let mut total = vec![int(1); n + 1];
    total[n] = int(1);
    equalities.push(total);

    let mut probe = equalities.clone();
    let free = n - reduce(&mut probe, n);
    let mut found = BTreeSet::new();
    let mut pick = Vec::new();
    subsets(inequalities.len(), free, 0, &mut pick, &mut |idx| {
        let mut rows = equalities.clone();
        rows.extend(idx.iter().map(|&i| inequalities[i].clone()));
        if let Some(x) = unique_solution(rows, n) {
            let feasible = x.iter().all(|t| !t.is_negative())
                && (0..n).all(|v| {
                    let r = row(v);
                    let lhs: Rational = (0..n).map(|w| &r[w] * &x[w]).sum();
                    !lhs.is_negative()
                });
            if feasible {
                found.insert(x);
            }
        }
    });
    found
}

fn subsets(len: usize, k: usize, start: usize, pick: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for i in start..len {
        pick.push(i);
        subsets(len, k, i + 1, pick, f);
        pick.pop();
    }
}

/// Number of first-return cycles at `v` of length at most `cap`, saturated at 2.
pub fn first_returns(g: &Graph, v: VertexId, cap: usize) -> usize {
    fn walk(g: &Graph, at: VertexId, home: VertexId, depth: usize, cap: usize, count: &mut usize) {
        if *count >= 2 || depth == cap {
            return;
        }
        for &e in g.edges_from(at) {
            let next = g.edge(e).rng;
            if next == home {
                *count += 1;
            } else {
                walk(g, next, home, depth + 1, cap, count);
            }
            if *count >= 2 {
                return;
            }
        }
    }
    let mut count = 0;
    walk(g, v, v, 0, cap, &mut count);
    count.min(2)
}

/// Finite paths of length at most `max_len`, grouped by source. Built edge by
/// edge so graphs with infinite bundles are covered too.
pub fn paths_by_source(g: &Graph, max_len: usize) -> Vec<Vec<Path>> {
    let mut by_source = vec![Vec::new(); g.vertex_count()];
    let mut frontier: Vec<Vec<gtrace::EdgeId>> = g.edge_ids().map(|e| vec![e]).collect();
    for v in g.vertex_ids() {
        by_source[v.0].push(Path::vertex(v));
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for edges in frontier {
            let p = g.path(&edges).expect("valid path");
            for &f in g.edges_into(p.source()) {
                let mut longer = edges.clone();
                longer.push(f);
                next.push(longer);
            }
            by_source[p.source().0].push(p);
        }
        frontier = next;
    }
    by_source
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_coeff(rng: &mut impl Rng) -> GaussianRational {
    loop {
        let c = GaussianRational::new(small_rational(rng), small_rational(rng));
        if !c.is_zero() {
            return c;
        }
    }
}

/// Up to five terms `c s_α s_β*` with `|α|, |β| ≤ 4`.
pub fn random_element(g: &Graph, by_source: &[Vec<Path>], rng: &mut impl Rng) -> FormalElement {
    let mut x = FormalElement::zero(g);
    for _ in 0..rng.gen_range(1..=5) {
        let w = rng.gen_range(0..g.vertex_count());
        let pool = &by_source[w];
        let alpha = pool[rng.gen_range(0..pool.len())].clone();
        let beta = pool[rng.gen_range(0..pool.len())].clone();
        let term = FormalElement::term(g, alpha, beta, random_coeff(rng)).expect("sources agree");
        x = x.add(&term).expect("same graph");
    }
    x
}
