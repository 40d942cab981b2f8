//! Two-phase primal simplex over exact rationals with Bland's rule.
//!
//! Solves `min c·x` subject to `A x = b`, `x ≥ 0`. Bland's rule rules out
//! cycling, so termination does not depend on perturbation.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    /// `x` is a basic feasible solution.
    Optimal {
        x: Vec<Rational>,
        value: Rational,
    },
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry is minus the objective value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = c;
    }

    /// Iterates to optimality over columns `< allowed`. Returns `false` when
    /// unbounded.
    fn run(&mut self, allowed: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

pub fn minimize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m + 1;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut t = vec![Rational::zero(); width];
        for (j, x) in row.iter().enumerate() {
            t[j] = if flip { -x.clone() } else { x.clone() };
        }
        t[n + i] = Rational::one();
        t[width - 1] = if flip { -rhs.clone() } else { rhs.clone() };
        rows.push(t);
    }
    // Phase 1: minimize the sum of artificials.
    let mut cost = vec![Rational::zero(); width];
    for row in &rows {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    let mut tab = Tableau {
        rows,
        cost,
        basis: (n..n + m).collect(),
    };
    tab.run(n + m);
    if !tab.cost[width - 1].is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase 2.
    let mut cost = vec![Rational::zero(); width];
    cost[..n].clone_from_slice(c);
    for (row, &bj) in tab.rows.iter().zip(&tab.basis) {
        let cb = c[bj].clone();
        if cb.is_zero() {
            continue;
        }
        for (x, t) in cost.iter_mut().zip(row) {
            *x -= &cb * t;
        }
    }
    tab.cost = cost;
    if !tab.run(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bj) in tab.rows.iter().zip(&tab.basis) {
        x[bj] = row[width - 1].clone();
    }
    let value = -tab.cost[width - 1].clone();
    LpOutcome::Optimal { x, value }
}
