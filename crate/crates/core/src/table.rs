//! Tables of observed outcome frequencies: one row per input setting, one
//! column per measurement outcome.

use thiserror::Error;

use crate::mvee::PointSet;

#[derive(Debug, Error, PartialEq)]
pub enum TableError {
    #[error("table must have at least one row and one column")]
    Empty,
    #[error("row {0} has {1} entries, expected {2}")]
    RaggedRow(usize, usize, usize),
    #[error("non-finite entry at row {0}")]
    NonFinite(usize),
    #[error("row {0} sums to {1:.6}, cannot renormalize")]
    ZeroRowSum(usize, f64),
}

/// m×n matrix of outcome frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbTable {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl ProbTable {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, TableError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(TableError::Empty);
        }
        let cols = rows[0].len();
        let mut values = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(TableError::RaggedRow(i, row.len(), cols));
            }
            if !row.iter().all(|x| x.is_finite()) {
                return Err(TableError::NonFinite(i));
            }
            values.extend_from_slice(row);
        }
        Ok(ProbTable {
            rows: rows.len(),
            cols,
            values,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Scales every row to unit sum.
    pub fn renormalized(&self) -> Result<ProbTable, TableError> {
        let mut out = self.clone();
        for i in 0..self.rows {
            let sum: f64 = self.row(i).iter().sum();
            if sum.abs() < 1e-12 {
                return Err(TableError::ZeroRowSum(i, sum));
            }
            for j in 0..self.cols {
                out.values[i * self.cols + j] /= sum;
            }
        }
        Ok(out)
    }

    /// The rows viewed as points in outcome-distribution space.
    pub fn to_point_set(&self) -> PointSet {
        let pts: Vec<Vec<f64>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        PointSet::new(pts).expect("a validated table yields a valid point set")
    }
}
