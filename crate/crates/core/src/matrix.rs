//! Dense row-major storage for the observed data and the binary coefficients.

use crate::error::{Error, Result};

/// Real `rows x cols` matrix with finite entries, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DataMatrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        check_shape(rows, cols, data.len())?;
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let (n, p, data) = flatten(rows)?;
        Self::from_row_major(n, p, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        check_shape(rows, cols, rows * cols)?;
        Ok(Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        })
    }

    /// Builds a matrix whose entries are produced by `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_row_major(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &DataMatrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Coefficient matrix with entries in {0, 1}, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl BinaryMatrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        check_shape(rows, cols, data.len())?;
        if let Some(i) = data.iter().position(|&v| v > 1) {
            return Err(Error::NotBinary {
                index: i,
                value: f64::from(data[i]),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let (n, p, data) = flatten(rows)?;
        Self::from_row_major(n, p, data)
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        check_shape(rows, cols, rows * cols)?;
        Ok(Self {
            rows,
            cols,
            data: vec![1; rows * cols],
        })
    }

    /// Assembles a matrix from column vectors.
    pub fn from_columns(columns: &[Vec<u8>]) -> Result<Self> {
        let p = columns.len();
        let n = columns.first().map_or(0, Vec::len);
        check_shape(n, p, n * p)?;
        let mut data = vec![0u8; n * p];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: col.len(),
                });
            }
            for (i, &v) in col.iter().enumerate() {
                data[i * p + j] = v;
            }
        }
        Self::from_row_major(n, p, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    pub fn to_data_matrix(&self) -> DataMatrix {
        DataMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f64::from(v)).collect(),
        }
    }

    /// Fraction of entries equal to one.
    pub fn density(&self) -> f64 {
        let ones: usize = self.data.iter().map(|&v| usize::from(v)).sum();
        ones as f64 / self.data.len() as f64
    }

    /// Number of entries that differ from `other`.
    pub fn mismatches(&self, other: &BinaryMatrix) -> Result<usize> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(self.data.iter().zip(&other.data).filter(|(a, b)| a != b).count())
    }
}

fn check_shape(rows: usize, cols: usize, len: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyMatrix { rows, cols });
    }
    if rows * cols != len {
        return Err(Error::DimensionMismatch {
            expected: rows * cols,
            found: len,
        });
    }
    Ok(())
}

fn flatten<T: Copy>(rows: &[Vec<T>]) -> Result<(usize, usize, Vec<T>)> {
    let n = rows.len();
    let p = rows.first().map_or(0, Vec::len);
    let mut data = Vec::with_capacity(n * p);
    for r in rows {
        if r.len() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: r.len(),
            });
        }
        data.extend_from_slice(r);
    }
    Ok((n, p, data))
}
