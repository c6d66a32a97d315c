//! Polynomial-time recovery: theta from the energy of `Y`, then the generator
//! from row sums, then `X` by hard thresholding `H^T Y`.
//!
//! Every stage is a single pass (or two) over the `n x p` data, so the whole
//! pipeline costs `O(n p)`.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::householder::UnitVector;
use crate::matrix::{BinaryMatrix, DataMatrix};

/// Hard-threshold level used by [`recover_factors`].
pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Below this norm the row statistics `k` carry no direction.
const ZERO_K_NORM: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    /// The raw energy ratio fell outside [0, 1] and was clamped.
    pub clamped_theta: bool,
    /// The `c^2` estimate was negative and was clamped to 0.
    pub clamped_c_squared: bool,
    pub threshold: f64,
    /// `sum(k)` was not positive; the generator fell back to `k / |k|`.
    pub negative_k_sum: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    pub u_hat: UnitVector,
    pub x_hat: BinaryMatrix,
    pub theta_hat: f64,
    pub c_squared_hat: f64,
    pub k: Vec<f64>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CSquaredEstimate {
    pub value: f64,
    pub clamped: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorEstimate {
    pub u_hat: UnitVector,
    pub k: Vec<f64>,
    pub negative_k_sum: bool,
}

/// Columns per block when thresholding; a block of a 1000-row matrix fits in L2.
const COLUMN_BLOCK: usize = 128;

fn energy_ratio(y: &DataMatrix) -> f64 {
    let energy: f64 = y.as_slice().iter().map(|v| v * v).sum();
    energy / (y.rows() * y.cols()) as f64
}

/// Row sums and the mean squared entry, in one pass.
fn row_stats(y: &DataMatrix) -> (Vec<f64>, f64) {
    let mut energy = 0.0;
    let sums = (0..y.rows())
        .map(|i| {
            let row = y.row(i);
            energy += row.iter().map(|v| v * v).sum::<f64>();
            row.iter().sum()
        })
        .collect();
    (sums, energy / (y.rows() * y.cols()) as f64)
}

/// `sum_ij Y_ij^2 / (n p)`, clamped to [0, 1].
///
/// For `Y = V X` with orthogonal `V` the column norms of `Y` and `X` agree, and
/// `X_ij^2 = X_ij` for binary entries.
pub fn estimate_theta(y: &DataMatrix) -> f64 {
    energy_ratio(y).clamp(0.0, 1.0)
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(invalid(format!("theta must be positive, got {theta}")));
    }
    Ok(())
}

fn row_sums(y: &DataMatrix) -> Vec<f64> {
    (0..y.rows()).map(|i| y.row(i).iter().sum()).collect()
}

/// `-(1/2) (sum_ij Y_ij / (p theta) - n)`; negative values are clamped to 0.
pub fn estimate_c_squared(y: &DataMatrix, theta: f64) -> Result<CSquaredEstimate> {
    check_theta(theta)?;
    let total: f64 = row_sums(y).iter().sum();
    Ok(c_squared_from_total(total, y.rows(), y.cols(), theta))
}

fn c_squared_from_total(total: f64, n: usize, p: usize, theta: f64) -> CSquaredEstimate {
    let raw = -0.5 * (total / (p as f64 * theta) - n as f64);
    if raw < 0.0 {
        CSquaredEstimate {
            value: 0.0,
            clamped: true,
        }
    } else {
        CSquaredEstimate {
            value: raw,
            clamped: false,
        }
    }
}

/// Estimates the generator from row sums.
///
/// `k_i = -(1/2) (sum_j Y_ij / (p theta) - 1)` has expectation `u_i c`, so
/// `k / sqrt(sum(k))` estimates `u` with the sign of `c` absorbed. The result is
/// renormalized to unit length.
pub fn recover_unit_vector(y: &DataMatrix, theta: f64) -> Result<GeneratorEstimate> {
    check_theta(theta)?;
    generator_from_row_sums(&row_sums(y), y.cols(), theta)
}

fn generator_from_row_sums(sums: &[f64], p: usize, theta: f64) -> Result<GeneratorEstimate> {
    let scale = p as f64 * theta;
    let k: Vec<f64> = sums.iter().map(|s| -0.5 * (s / scale - 1.0)).collect();
    let k_norm = k.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(k_norm > ZERO_K_NORM) {
        return Err(Error::Unrecoverable);
    }
    let k_sum: f64 = k.iter().sum();
    let negative_k_sum = !(k_sum > 0.0);
    let raw = if negative_k_sum {
        k.clone()
    } else {
        let root = k_sum.sqrt();
        k.iter().map(|v| v / root).collect()
    };
    let u_hat = UnitVector::normalize(raw)?;
    Ok(GeneratorEstimate {
        u_hat,
        k,
        negative_k_sum,
    })
}

/// Hard-thresholds `X' = H^T Y` at `threshold`; entries equal to the threshold map to 1.
pub fn recover_coefficients(y: &DataMatrix, u_hat: &UnitVector, threshold: f64) -> Result<BinaryMatrix> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(invalid(format!("threshold must lie in (0, 1), got {threshold}")));
    }
    if u_hat.len() != y.rows() {
        return Err(Error::DimensionMismatch {
            expected: y.rows(),
            found: u_hat.len(),
        });
    }
    let (n, p) = (y.rows(), y.cols());
    let u = u_hat.as_slice();
    let data = y.as_slice();
    let mut out = vec![0u8; n * p];
    let mut w = vec![0.0; COLUMN_BLOCK];
    // project and threshold one block of columns while it is still in cache
    for j0 in (0..p).step_by(COLUMN_BLOCK) {
        let j1 = (j0 + COLUMN_BLOCK).min(p);
        let w = &mut w[..j1 - j0];
        w.fill(0.0);
        for (i, &ui) in u.iter().enumerate() {
            for (acc, &v) in w.iter_mut().zip(&data[i * p + j0..i * p + j1]) {
                *acc += ui * v;
            }
        }
        for (i, &ui) in u.iter().enumerate() {
            let s = 2.0 * ui;
            for ((bit, &v), wj) in out[i * p + j0..i * p + j1].iter_mut().zip(&data[i * p + j0..i * p + j1]).zip(&*w) {
                *bit = u8::from(v - s * wj >= threshold);
            }
        }
    }
    BinaryMatrix::from_row_major(y.rows(), p, out)
}

/// Full pipeline with the default threshold 0.5.
pub fn recover_factors(y: &DataMatrix) -> Result<RecoveryResult> {
    recover_factors_with(y, DEFAULT_THRESHOLD)
}

pub fn recover_factors_with(y: &DataMatrix, threshold: f64) -> Result<RecoveryResult> {
    let (sums, raw_theta) = row_stats(y);
    let theta_hat = raw_theta.clamp(0.0, 1.0);
    if theta_hat == 0.0 {
        return Err(Error::DegenerateInput);
    }
    let (n, p) = (y.rows(), y.cols());
    let total: f64 = sums.iter().sum();
    let c2 = c_squared_from_total(total, n, p, theta_hat);
    let generator = generator_from_row_sums(&sums, p, theta_hat)?;
    let x_hat = recover_coefficients(y, &generator.u_hat, threshold)?;
    Ok(RecoveryResult {
        u_hat: generator.u_hat,
        x_hat,
        theta_hat,
        c_squared_hat: c2.value,
        k: generator.k,
        diagnostics: Diagnostics {
            clamped_theta: raw_theta != theta_hat,
            clamped_c_squared: c2.clamped,
            threshold,
            negative_k_sum: generator.negative_k_sum,
        },
    })
}
