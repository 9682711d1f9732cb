//! Small dense linear algebra over the rationals.

use num_traits::Zero;

use crate::Rational;

pub(crate) type Matrix = Vec<Vec<Rational>>;

/// Rank by fraction-exact Gaussian elimination.
pub(crate) fn rank(matrix: &Matrix) -> usize {
    let mut m = matrix.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[rank][col];
            for c in col..cols {
                let delta = &factor * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}
