//! Cycle structure and condition (K).
//!
//! A cycle is a path `a` with `|a| >= 1` and `s(a) = r(a)`; it is simple when
//! its last edge does not occur earlier. Counting simple cycles at `v` reduces
//! to counting first-return cycles (cycles whose intermediate vertices avoid
//! `v`): every first-return cycle is simple, and when exactly one exists every
//! cycle at `v` is a power of it, and no proper power is simple.
//!
//! The count is therefore decided by the strongly connected component of `v`
//! in the walk digraph (arcs `src -> rng`): a component whose vertices each
//! have exactly one outgoing arc inside the component is a lone cycle; any
//! branching gives every vertex at least two first-return cycles.

use std::collections::VecDeque;

use super::{Graph, Path, VertexId};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CycleCount {
    Zero,
    One,
    AtLeastTwo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCycles {
    pub count: CycleCount,
    /// One witness for `One`, two for `AtLeastTwo` (when they fit the cap).
    pub witnesses: Vec<Path>,
}

/// Outcome of the condition (K) decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Fails { vertex: VertexId, witness: Path },
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Satisfied)
    }
}

impl Graph {
    /// Arc targets of the walk digraph, finite edges then bundles.
    fn walk_arcs(&self) -> Vec<Vec<usize>> {
        let mut arcs = vec![Vec::new(); self.vertex_count()];
        for e in self.edges() {
            arcs[e.src.0].push(e.rng.0);
        }
        for b in self.bundles() {
            arcs[b.src.0].push(b.rng.0);
        }
        arcs
    }

    /// Component label per vertex (Tarjan, iterative).
    fn components(&self, arcs: &[Vec<usize>]) -> Vec<usize> {
        let n = arcs.len();
        const UNSEEN: usize = usize::MAX;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![UNSEEN; n];
        let mut stack = Vec::new();
        let mut next_index = 0;
        let mut next_comp = 0;

        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut child)) = call.last_mut() {
                if let Some(&w) = arcs[v].get(*child) {
                    *child += 1;
                    if index[w] == UNSEEN {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                }
            }
        }
        comp
    }

    /// Per vertex: number of arcs leaving it that stay in its component, or
    /// `None` when the component carries no arc at all.
    fn internal_out_degrees(&self) -> Vec<Option<usize>> {
        let arcs = self.walk_arcs();
        let comp = self.components(&arcs);
        let mut comp_has_arc = vec![false; self.vertex_count()];
        let mut degree = vec![0usize; self.vertex_count()];
        for (v, targets) in arcs.iter().enumerate() {
            for &w in targets {
                if comp[v] == comp[w] {
                    comp_has_arc[comp[v]] = true;
                    degree[v] += 1;
                }
            }
        }
        (0..self.vertex_count())
            .map(|v| comp_has_arc[comp[v]].then_some(degree[v]))
            .collect()
    }

    /// Vertices that are the source of some cycle. Bundles count as one edge.
    pub fn cycle_sources(&self) -> Vec<VertexId> {
        self.internal_out_degrees()
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_some())
            .map(|(v, _)| VertexId(v))
            .collect()
    }

    fn cycle_counts(&self) -> Vec<CycleCount> {
        let arcs = self.walk_arcs();
        let comp = self.components(&arcs);
        let degrees = self.internal_out_degrees();
        let n = self.vertex_count();
        let mut branching = vec![false; n];
        for v in 0..n {
            if degrees[v].is_some_and(|d| d >= 2) {
                branching[comp[v]] = true;
            }
        }
        (0..n)
            .map(|v| match degrees[v] {
                None => CycleCount::Zero,
                Some(_) if branching[comp[v]] => CycleCount::AtLeastTwo,
                Some(_) => CycleCount::One,
            })
            .collect()
    }

    /// Classifies the number of simple cycles with source `v` and produces
    /// witnesses of length at most `cap`.
    pub fn simple_cycles_at(&self, v: VertexId, cap: usize) -> Result<SimpleCycles> {
        self.require_finite()?;
        let count = self.cycle_counts()[v.0];
        let want = match count {
            CycleCount::Zero => 0,
            CycleCount::One => 1,
            CycleCount::AtLeastTwo => 2,
        };
        let witnesses = self.first_return_witnesses(v, cap, want);
        Ok(SimpleCycles { count, witnesses })
    }

    /// Default witness cap `2|E^0| + 1`.
    pub fn witness_cap(&self) -> usize {
        2 * self.vertex_count() + 1
    }

    /// Decides condition (K): no vertex is the source of exactly one simple
    /// cycle. Reports the first failing vertex in vertex order.
    pub fn condition_k(&self) -> Result<Verdict> {
        self.require_finite()?;
        let counts = self.cycle_counts();
        match counts.iter().position(|&c| c == CycleCount::One) {
            None => Ok(Verdict::Satisfied),
            Some(v) => {
                let v = VertexId(v);
                let witness = self
                    .first_return_witnesses(v, self.witness_cap(), 1)
                    .pop()
                    .expect("a lone cycle is shorter than the vertex count");
                Ok(Verdict::Fails { vertex: v, witness })
            }
        }
    }

    /// Up to `want` first-return cycles at `v` of length at most `cap`, found
    /// by depth-first search along the walk digraph pruned by the distance
    /// back to `v`.
    fn first_return_witnesses(&self, v: VertexId, cap: usize, want: usize) -> Vec<Path> {
        if want == 0 {
            return Vec::new();
        }
        // dist[w]: fewest edges on a walk from w to v that does not pass v earlier.
        let n = self.vertex_count();
        let mut dist = vec![usize::MAX; n];
        dist[v.0] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &e in self.edges_into(u) {
                let w = self.edge(e).src;
                if dist[w.0] == usize::MAX {
                    dist[w.0] = dist[u.0] + 1;
                    if w != v {
                        queue.push_back(w);
                    }
                }
            }
        }

        let mut found = Vec::new();
        // Edges in walk order: the first pushed is a_n (source v).
        let mut walk = Vec::new();
        self.witness_search(v, v, cap, &dist, &mut walk, &mut found, want);
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn witness_search(
        &self,
        target: VertexId,
        at: VertexId,
        cap: usize,
        dist: &[usize],
        walk: &mut Vec<super::EdgeId>,
        found: &mut Vec<Path>,
        want: usize,
    ) {
        for &e in self.edges_from(at) {
            if found.len() >= want {
                return;
            }
            let next = self.edge(e).rng;
            let used = walk.len() + 1;
            if next == target {
                if used <= cap {
                    walk.push(e);
                    let edges: Vec<_> = walk.iter().rev().copied().collect();
                    found.push(self.path(&edges).expect("walk is a path"));
                    walk.pop();
                }
            } else if dist[next.0] != usize::MAX && used + dist[next.0] <= cap {
                walk.push(e);
                self.witness_search(target, next, cap, dist, walk, found, want);
                walk.pop();
            }
        }
    }
}
