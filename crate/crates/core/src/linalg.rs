//! Exact rank computation over the rationals, shared by the homology and
//! integer-matrix modules.

use num::BigRational;
use num::Zero;

/// Rank of a row-major rational matrix, by Gaussian elimination.
#[allow(clippy::needless_range_loop)] // row updates read the pivot row while writing another
pub(crate) fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    debug_assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &lead;
            for c in col..ncols {
                let sub = &rows[rank][c] * &factor;
                rows[r][c] = &rows[r][c] - sub;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
