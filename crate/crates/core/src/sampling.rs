//! Seeded generators for ground-truth instances.
//!
//! Every sampler takes an explicit `u64` seed and draws from ChaCha8, whose
//! output stream is fixed across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::householder::{Householder, UnitVector};
use crate::matrix::{BinaryMatrix, DataMatrix};

/// Rejection draws allowed before [`sample_unit_vector`] gives up.
pub const MAX_REJECTIONS: usize = 10_000;

/// Default lower bound on `|sum(u)|` for benchmark instances.
pub const DEFAULT_MIN_ABS_C: f64 = 0.1;

/// Bernoulli sparsity parameter, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BernoulliParams {
    theta: f64,
}

impl BernoulliParams {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(invalid(format!("theta must lie in (0, 1), got {theta}")));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with a trial index and a stream tag (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, index: u64, stream: u64) -> u64 {
    let mut z = seed
        ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ stream.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw from the unit sphere in `R^n`, conditioned on `|sum(u)| >= min_abs_c`.
pub fn sample_unit_vector(n: usize, seed: u64, min_abs_c: f64) -> Result<UnitVector> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if !(min_abs_c >= 0.0) || !min_abs_c.is_finite() {
        return Err(invalid(format!("min_abs_c must be >= 0, got {min_abs_c}")));
    }
    let max_abs_c = (n as f64).sqrt();
    let give_up = || Error::RejectionLimit {
        min_abs_c,
        attempts: MAX_REJECTIONS,
        max_abs_c,
    };
    // |sum(u)| <= sqrt(n) by Cauchy-Schwarz
    if min_abs_c > max_abs_c {
        return Err(give_up());
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..MAX_REJECTIONS {
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let Ok(u) = UnitVector::normalize(g) else {
            continue;
        };
        if u.entry_sum().abs() >= min_abs_c {
            return Ok(u);
        }
    }
    Err(give_up())
}

/// I.i.d. Bernoulli(theta) entries.
///
/// Entries are drawn column by column, so for a fixed seed the first `p`
/// columns do not depend on the total column count.
pub fn sample_binary_matrix(n: usize, p: usize, params: BernoulliParams, seed: u64) -> Result<BinaryMatrix> {
    if n == 0 || p == 0 {
        return Err(Error::EmptyMatrix { rows: n, cols: p });
    }
    let mut rng = rng_from_seed(seed);
    let theta = params.theta();
    let mut data = vec![0u8; n * p];
    for j in 0..p {
        for i in 0..n {
            data[i * p + j] = u8::from(rng.random::<f64>() < theta);
        }
    }
    BinaryMatrix::from_row_major(n, p, data)
}

/// A ground-truth triple `(u, X, Y = H X)`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub u: UnitVector,
    pub x: BinaryMatrix,
    pub y: DataMatrix,
}

impl Instance {
    pub fn from_factors(u: UnitVector, x: BinaryMatrix) -> Result<Self> {
        let y = Householder::new(u.clone()).apply_binary(&x)?;
        Ok(Self { u, x, y })
    }

    /// Samples `u` and `X` from independent streams derived from `seed`.
    pub fn sample(n: usize, p: usize, params: BernoulliParams, min_abs_c: f64, seed: u64) -> Result<Self> {
        let u = sample_unit_vector(n, derive_seed(seed, 0, 1), min_abs_c)?;
        let x = sample_binary_matrix(n, p, params, derive_seed(seed, 0, 2))?;
        Self::from_factors(u, x)
    }
}
