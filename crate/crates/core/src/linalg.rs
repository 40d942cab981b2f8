//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Solution set `{ particular + Σ t_j basis[j] }` of a consistent system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

impl AffineSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn point(&self, params: &[Rational]) -> Vec<Rational> {
        let mut x = self.particular.clone();
        for (t, dir) in params.iter().zip(&self.basis) {
            if t.is_zero() {
                continue;
            }
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi += t * di;
            }
        }
        x
    }
}

/// Reduces the augmented matrix `rows` (last column = right-hand side) to
/// reduced row echelon form in place and returns the pivot columns.
fn rref(rows: &mut [Vec<Rational>], columns: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..columns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// General solution of `a x = b`, or `None` when inconsistent.
pub fn solve_affine(a: &[Vec<Rational>], b: &[Rational], columns: usize) -> Option<AffineSolution> {
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows, columns);
    if rows[pivots.len()..].iter().any(|row| !row[columns].is_zero()) {
        return None;
    }
    let mut particular = vec![Rational::zero(); columns];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][columns].clone();
    }
    let free: Vec<usize> = (0..columns).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut dir = vec![Rational::zero(); columns];
            dir[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                dir[c] = -rows[r][f].clone();
            }
            dir
        })
        .collect();
    Some(AffineSolution { particular, basis })
}

/// The unique solution of a square system, or `None` when singular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let sol = solve_affine(a, b, n)?;
    (sol.dimension() == 0).then_some(sol.particular)
}

pub fn rank(a: &[Vec<Rational>], columns: usize) -> usize {
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.push(Rational::zero());
            r
        })
        .collect();
    rref(&mut rows, columns).len()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}
