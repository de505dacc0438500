//! Exact linear feasibility: find `w >= 0` with `A w = b`.
//!
//! Phase one of the simplex method on a dense rational tableau with Bland's
//! rule, so it terminates and never rounds.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `columns[j]` is column `j` of `A`; all columns have `b.len()` entries.
/// Returns a nonnegative solution if one exists.
pub fn nonnegative_solution(
    columns: &[Vec<BigRational>],
    b: &[BigRational],
) -> Option<Vec<BigRational>> {
    let rows = b.len();
    let k = columns.len();
    let width = k + rows + 1; // originals, artificials, right-hand side
    let rhs = width - 1;

    let mut t: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = vec![BigRational::zero(); width];
            for j in 0..k {
                row[j] = if flip {
                    -columns[j][i].clone()
                } else {
                    columns[j][i].clone()
                };
            }
            row[k + i] = BigRational::from_integer(1.into());
            row[rhs] = if flip { -b[i].clone() } else { b[i].clone() };
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + rows).collect();

    // Phase-one objective row: reduced costs of minimising the artificials.
    let mut cost = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..k {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }

    while let Some(enter) = (0..k + rows).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (r, _) = leave.expect("phase one objective is bounded");
        let pivot = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (v, p) in cost.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
        basis[r] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut w = vec![BigRational::zero(); k];
    for (i, &j) in basis.iter().enumerate() {
        if j < k {
            w[j] = t[i][rhs].clone();
        }
    }
    Some(w)
}
