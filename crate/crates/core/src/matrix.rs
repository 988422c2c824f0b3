//! Small exact integer matrices: ranks, Gram products, and total
//! unimodularity, used to represent matroids by signed incidence matrices
//! and to sanity-check the quadratic-form cones they span.

use crate::linalg::rational_rank;
use itertools::Itertools;
use num::BigRational;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("all rows must have the same length")]
pub struct ShapeError;

/// A dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, ShapeError> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(ShapeError);
        }
        Ok(Self {
            rows: rows.len(),
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    fn rational_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| BigRational::from_integer(self.get(r, c).into()))
                    .collect()
            })
            .collect()
    }

    /// Rank of the column space (equal to the row rank), computed exactly.
    pub fn column_rank(&self) -> usize {
        rational_rank(self.rational_rows())
    }

    /// Rank of the column submatrix selected by `cols`.
    pub fn column_subset_rank(&self, cols: &[usize]) -> usize {
        let rows = (0..self.rows)
            .map(|r| {
                cols.iter()
                    .map(|&c| BigRational::from_integer(self.get(r, c).into()))
                    .collect()
            })
            .collect();
        rational_rank(rows)
    }

    /// The Gram product `A·Aᵀ`.
    pub fn gram(&self) -> IntegerMatrix {
        let mut g = IntegerMatrix::zero(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                let mut acc: i128 = 0;
                for c in 0..self.cols {
                    acc += self.get(i, c) as i128 * self.get(j, c) as i128;
                }
                g.set(i, j, i64::try_from(acc).expect("Gram entry overflows i64"));
            }
        }
        g
    }

    /// Whether every square minor has determinant in `{-1, 0, 1}`.
    pub fn is_totally_unimodular(&self) -> bool {
        if self.data.iter().any(|&v| v.abs() > 1) {
            return false;
        }
        let max = self.rows.min(self.cols);
        for k in 2..=max {
            for row_set in (0..self.rows).combinations(k) {
                for col_set in (0..self.cols).combinations(k) {
                    let sub: Vec<Vec<i128>> = row_set
                        .iter()
                        .map(|&r| col_set.iter().map(|&c| self.get(r, c) as i128).collect())
                        .collect();
                    if det_bareiss(sub).abs() > 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the Gram product has the same rank as the matrix itself.
    pub fn cone_rank_check(&self) -> bool {
        self.gram().column_rank() == self.column_rank()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
fn det_bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    debug_assert!(
        m.iter().all(|r| r.len() == n),
        "determinant needs a square matrix"
    );
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}
