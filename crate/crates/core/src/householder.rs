//! Householder reflections `H = I - 2 u u^T`, kept implicit in their generator `u`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, DataMatrix};

/// Largest norm deviation accepted when a caller hands in a supposedly unit vector.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-9;

/// Inputs already this close to unit norm are stored unchanged.
const EXACT_NORM_TOLERANCE: f64 = 1e-12;

/// Largest dimension for which [`Householder::to_dense`] materializes the matrix.
pub const DENSE_LIMIT: usize = 64;

/// A generator vector of Euclidean norm one, dimension at least 2.
///
/// The stored entries are renormalized at construction, so the norm is one to
/// within rounding even when the input was only accurate to
/// [`UNIT_NORM_TOLERANCE`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnitVector(Vec<f64>);

impl UnitVector {
    /// Accepts `entries` if their norm is within [`UNIT_NORM_TOLERANCE`] of one.
    ///
    /// Entries within `1e-12` of unit norm are kept bit-for-bit, so a vector
    /// written out and read back reproduces the same reflection exactly.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        let norm = checked_norm(&entries)?;
        let deviation = (norm - 1.0).abs();
        if deviation > UNIT_NORM_TOLERANCE {
            return Err(Error::NotUnitNorm {
                norm,
                tolerance: UNIT_NORM_TOLERANCE,
            });
        }
        if deviation <= EXACT_NORM_TOLERANCE {
            return Ok(Self(entries));
        }
        Ok(Self(scale(entries, norm)))
    }

    /// Scales any nonzero finite vector to unit norm.
    pub fn normalize(entries: Vec<f64>) -> Result<Self> {
        let norm = checked_norm(&entries)?;
        if norm == 0.0 {
            return Err(Error::NotUnitNorm {
                norm,
                tolerance: UNIT_NORM_TOLERANCE,
            });
        }
        Ok(Self(scale(entries, norm)))
    }

    /// The standard basis vector `e_index` in dimension `n`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: index + 1,
            });
        }
        let mut e = vec![0.0; n];
        e[index] = 1.0;
        Self::new(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// `c`, the sum of the entries.
    pub fn entry_sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|v| -v).collect())
    }

    /// Flips the sign so that the first entry with magnitude above `tol` is positive.
    pub fn canonical(&self, tol: f64) -> Self {
        match self.0.iter().find(|v| v.abs() > tol) {
            Some(&v) if v < 0.0 => self.negated(),
            _ => self.clone(),
        }
    }
}

fn checked_norm(entries: &[f64]) -> Result<f64> {
    if entries.len() < 2 {
        return Err(Error::DimensionTooSmall(entries.len()));
    }
    if let Some(i) = entries.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    Ok(entries.iter().map(|v| v * v).sum::<f64>().sqrt())
}

fn scale(mut entries: Vec<f64>, norm: f64) -> Vec<f64> {
    if norm != 1.0 {
        entries.iter_mut().for_each(|v| *v /= norm);
    }
    entries
}

/// The reflection `H = I - 2 u u^T`. Symmetric, orthogonal and an involution.
///
/// Only the generator is stored; every application costs `O(n m)` for an
/// `n x m` operand.
#[derive(Debug, Clone, PartialEq)]
pub struct Householder {
    generator: UnitVector,
}

impl Householder {
    pub fn new(generator: UnitVector) -> Self {
        Self { generator }
    }

    /// Builds the reflection from raw generator entries, rejecting non-unit input.
    pub fn from_generator(entries: &[f64]) -> Result<Self> {
        UnitVector::new(entries.to_vec()).map(Self::new)
    }

    pub fn generator(&self) -> &UnitVector {
        &self.generator
    }

    pub fn dim(&self) -> usize {
        self.generator.len()
    }

    /// Returns `M - 2 u (u^T M)`.
    pub fn apply(&self, m: &DataMatrix) -> Result<DataMatrix> {
        let mut out = m.clone();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }

    pub fn apply_in_place(&self, m: &mut DataMatrix) -> Result<()> {
        self.check_rows(m.rows())?;
        let cols = m.cols();
        let u = self.generator.as_slice();
        let data = m.as_mut_slice();
        let w = project(u, data, cols);
        for (row, &ui) in data.chunks_exact_mut(cols).zip(u) {
            let s = 2.0 * ui;
            for (v, &wj) in row.iter_mut().zip(&w) {
                *v -= s * wj;
            }
        }
        Ok(())
    }

    /// Forward model `Y = H X` for a binary coefficient matrix.
    pub fn apply_binary(&self, x: &BinaryMatrix) -> Result<DataMatrix> {
        self.apply(&x.to_data_matrix())
    }

    pub fn apply_vector(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_rows(x.len())?;
        let u = self.generator.as_slice();
        let dot: f64 = u.iter().zip(x).map(|(a, b)| a * b).sum();
        Ok(x.iter().zip(u).map(|(xi, ui)| xi - 2.0 * ui * dot).collect())
    }

    /// Dense `n x n` matrix, available for `n <= DENSE_LIMIT`.
    pub fn to_dense(&self) -> Result<DataMatrix> {
        let n = self.dim();
        if n > DENSE_LIMIT {
            return Err(Error::InvalidParameter(format!(
                "dense materialization is limited to n <= {DENSE_LIMIT}, got {n}"
            )));
        }
        let u = self.generator.as_slice();
        DataMatrix::from_fn(n, n, |i, k| {
            let delta = if i == k { 1.0 } else { 0.0 };
            delta - 2.0 * u[i] * u[k]
        })
    }

    fn check_rows(&self, rows: usize) -> Result<()> {
        if rows != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rows,
            });
        }
        Ok(())
    }
}

/// `u^T M` for a row-major `M` with `cols` columns.
pub(crate) fn project(u: &[f64], data: &[f64], cols: usize) -> Vec<f64> {
    let mut w = vec![0.0; cols];
    for (row, &ui) in data.chunks_exact(cols).zip(u) {
        for (acc, &v) in w.iter_mut().zip(row) {
            *acc += ui * v;
        }
    }
    w
}

/// `min(max_i |u_i - v_i|, max_i |u_i + v_i|)`.
///
/// `u` and `-u` generate the same reflection, so the error is folded over sign.
pub fn linf_error_up_to_sign(u: &UnitVector, v: &UnitVector) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    let (mut minus, mut plus) = (0.0f64, 0.0f64);
    for (a, b) in u.as_slice().iter().zip(v.as_slice()) {
        minus = minus.max((a - b).abs());
        plus = plus.max((a + b).abs());
    }
    Ok(minus.min(plus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn dense(u: &[f64]) -> Vec<Vec<f64>> {
        Householder::from_generator(u)
            .unwrap()
            .to_dense()
            .unwrap()
            .to_rows()
    }

    fn assert_matrix_eq(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) {
        for (ra, rb) in a.iter().zip(b) {
            for (x, y) in ra.iter().zip(rb) {
                assert_abs_diff_eq!(x, y, epsilon = tol);
            }
        }
    }

    #[test]
    fn axis_reflection() {
        assert_matrix_eq(
            &dense(&[1.0, 0.0]),
            &[vec![-1.0, 0.0], vec![0.0, 1.0]],
            0.0,
        );
    }

    #[test]
    fn counterexample_matrices() {
        let r2 = 2f64.sqrt();
        assert_matrix_eq(
            &dense(&[(1.0f64 / 3.0).sqrt(), (2.0f64 / 3.0).sqrt()]),
            &[
                vec![1.0 / 3.0, -2.0 * r2 / 3.0],
                vec![-2.0 * r2 / 3.0, -1.0 / 3.0],
            ],
            1e-15,
        );
        assert_matrix_eq(
            &dense(&[1.0 / r2, 1.0 / r2]),
            &[vec![0.0, -1.0], vec![-1.0, 0.0]],
            1e-15,
        );
    }

    #[test]
    fn rejects_non_unit_generator() {
        assert!(matches!(
            Householder::from_generator(&[1.0, 1e-4]),
            Err(Error::NotUnitNorm { .. })
        ));
        // within 1e-9 of unit norm is accepted and renormalized
        let h = Householder::from_generator(&[1.0 + 5e-10, 0.0]).unwrap();
        assert_abs_diff_eq!(h.generator().norm(), 1.0, epsilon = 1e-15);
        assert_eq!(
            Householder::from_generator(&[1.0]),
            Err(Error::DimensionTooSmall(1))
        );
    }

    #[test]
    fn apply_axis_example() {
        let h = Householder::from_generator(&[1.0, 0.0]).unwrap();
        let m = DataMatrix::from_rows(&[vec![1.0], vec![1.0]]).unwrap();
        assert_eq!(h.apply(&m).unwrap().to_rows(), vec![vec![-1.0], vec![1.0]]);
    }

    #[test]
    fn apply_counterexample_column() {
        let h = Householder::from_generator(&[(1.0f64 / 3.0).sqrt(), (2.0f64 / 3.0).sqrt()]).unwrap();
        let y = h
            .apply_vector(&[2.0 * 2f64.sqrt() / 3.0, 1.0 / 3.0])
            .unwrap();
        assert_abs_diff_eq!(y[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(y[1], -1.0, epsilon = 1e-15);
    }

    #[test]
    fn apply_rejects_wrong_rows() {
        let h = Householder::from_generator(&[1.0, 0.0]).unwrap();
        let m = DataMatrix::zeros(3, 2).unwrap();
        assert_eq!(
            h.apply(&m),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn dense_is_limited() {
        let u = UnitVector::basis(DENSE_LIMIT + 1, 0).unwrap();
        assert!(Householder::new(u).to_dense().is_err());
    }

    #[test]
    fn sign_folded_error_examples() {
        let u = UnitVector::new(vec![0.6, 0.8]).unwrap();
        assert_eq!(linf_error_up_to_sign(&u, &u).unwrap(), 0.0);
        assert_eq!(linf_error_up_to_sign(&u, &u.negated()).unwrap(), 0.0);
        let e1 = UnitVector::basis(2, 0).unwrap();
        let e2 = UnitVector::basis(2, 1).unwrap();
        // both branches evaluate to 1
        assert_eq!(linf_error_up_to_sign(&e1, &e2).unwrap(), 1.0);
        let e3 = UnitVector::basis(3, 0).unwrap();
        assert!(linf_error_up_to_sign(&e1, &e3).is_err());
    }

    #[test]
    fn canonical_sign() {
        let u = UnitVector::new(vec![0.0, -0.6, 0.8]).unwrap();
        assert_eq!(u.canonical(1e-9).as_slice(), &[0.0, 0.6, -0.8]);
    }
}
