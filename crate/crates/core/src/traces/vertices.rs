//! Extreme points of `T(E)` by basic-solution enumeration.
//!
//! The equality rows are solved once, parametrizing their solution set as
//! `x0 + N t`. In those `d` coordinates every vertex of the polytope is the
//! unique solution of `d` tight inequality rows (singular-vertex rows and
//! nonnegativity bounds). Each `d`-subset is solved independently, which is
//! the data-parallel loop.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{constraint_system, GraphTrace};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::linalg::{dot, solve_affine, solve_square};
use crate::rational::Rational;

const CHUNK: usize = 2048;

/// Lexicographic `k`-subsets of `0..n`, produced in chunks.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }

    fn next_chunk(&mut self, size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(size);
        while out.len() < size {
            let Some(cur) = self.current.as_mut() else { break };
            out.push(cur.clone());
            let k = cur.len();
            let mut i = k;
            loop {
                if i == 0 {
                    self.current = None;
                    break;
                }
                i -= 1;
                if cur[i] < self.n - k + i {
                    cur[i] += 1;
                    for j in i + 1..k {
                        cur[j] = cur[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        out
    }
}

/// Sorted largest-first in lexicographic vertex order.
pub fn extreme_traces(graph: &Graph) -> Vec<GraphTrace> {
    extreme_traces_with(graph, Exec::default())
}

pub fn extreme_traces_with(graph: &Graph, exec: Exec) -> Vec<GraphTrace> {
    let n = graph.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let system = constraint_system(graph);
    let (a, b): (Vec<_>, Vec<_>) = system
        .all_equalities()
        .map(|r| (r.coeffs.clone(), r.rhs.clone()))
        .unzip();
    let Some(affine) = solve_affine(&a, &b, n) else {
        return Vec::new();
    };

    // Inequalities g·x ≥ h: singular rows, then x_v ≥ 0.
    let mut ineqs: Vec<(Vec<Rational>, Rational)> = system
        .inequalities
        .iter()
        .map(|r| (r.coeffs.clone(), r.rhs.clone()))
        .collect();
    for v in 0..n {
        let mut unit = vec![Rational::zero(); n];
        unit[v] = num_traits::One::one();
        ineqs.push((unit, Rational::zero()));
    }
    // In parameter space: (g·N) t ≥ h - g·x0.
    let reduced: Vec<(Vec<Rational>, Rational)> = ineqs
        .iter()
        .map(|(g, h)| {
            let row = affine.basis.iter().map(|dir| dot(g, dir)).collect();
            (row, h - dot(g, &affine.particular))
        })
        .collect();
    let feasible = |x: &[Rational]| ineqs.iter().all(|(g, h)| dot(g, x) >= *h);

    let d = affine.dimension();
    let mut found = BTreeSet::new();
    if d == 0 {
        if feasible(&affine.particular) {
            found.insert(affine.particular.clone());
        }
    } else {
        let mut combos = Combinations::new(reduced.len(), d);
        loop {
            let chunk = combos.next_chunk(CHUNK);
            if chunk.is_empty() {
                break;
            }
            let points = exec.filter_map(chunk, |subset| {
                let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| reduced[i].0.clone()).collect();
                let rhs: Vec<Rational> = subset.iter().map(|&i| reduced[i].1.clone()).collect();
                let t = solve_square(&rows, &rhs)?;
                let x = affine.point(&t);
                feasible(&x).then_some(x)
            });
            found.extend(points);
        }
    }
    debug_assert!(found.iter().all(|x| x.iter().all(|xi| !xi.is_negative())));
    found.into_iter().rev().map(GraphTrace::new_unchecked).collect()
}
