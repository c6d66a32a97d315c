//! Zero-error recovery by exhaustive search over binary column guesses.
//!
//! For a guess `x` of a column and its observation `y = x - 2 u (u^T x)`, the
//! difference `d = x - y = 2 u (u^T x)` is parallel to `u`. Substituting
//! `u = d / |d|` shows a solution exists iff `|d|^2 = 2 d^T x`, so each guess
//! is checked in `O(n)`. Candidates from two distinct columns are intersected
//! up to sign; the survivor is unique for binary coefficients.

use crate::error::{Error, Result};
use crate::householder::{linf_error_up_to_sign, Householder, UnitVector};
use crate::matrix::{BinaryMatrix, DataMatrix};

pub const DEFAULT_N_MAX: usize = 20;

/// Tolerance for the consistency identity, candidate matching and binarity checks.
pub const MATCH_TOLERANCE: f64 = 1e-8;

/// Masks are `u64`; this caps any user-supplied limit.
const HARD_N_LIMIT: usize = 63;

/// A generator consistent with one observed column under one binary guess.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnGuessSolution {
    /// Sign-canonical: first nonzero entry positive. For a degenerate guess this
    /// is only one member of the hyperplane `u^T x = 0`.
    pub u_candidate: UnitVector,
    pub guess: Vec<u8>,
    /// The guess equals the observation, which pins only `u^T x = 0`.
    pub degenerate: bool,
}

/// Solves `y = (I - 2 u u^T) x` for `u` given the binary guess `x`.
///
/// Returns `Ok(None)` when no unit vector is consistent with the pair.
pub fn solve_u_from_column(y: &[f64], x: &[u8]) -> Result<Option<ColumnGuessSolution>> {
    if y.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: y.len(),
            found: x.len(),
        });
    }
    if y.len() < 2 {
        return Err(Error::DimensionTooSmall(y.len()));
    }
    if let Some(i) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    if let Some(i) = x.iter().position(|&v| v > 1) {
        return Err(Error::NotBinary {
            index: i,
            value: f64::from(x[i]),
        });
    }
    Ok(solve_unchecked(y, x))
}

fn solve_unchecked(y: &[f64], x: &[u8]) -> Option<ColumnGuessSolution> {
    let d: Vec<f64> = x.iter().zip(y).map(|(&xi, yi)| f64::from(xi) - yi).collect();
    if d.iter().all(|v| v.abs() <= MATCH_TOLERANCE) {
        return degenerate_solution(x);
    }
    let d_sq: f64 = d.iter().map(|v| v * v).sum();
    let d_dot_x: f64 = d.iter().zip(x).map(|(di, &xi)| di * f64::from(xi)).sum();
    if (d_sq - 2.0 * d_dot_x).abs() > MATCH_TOLERANCE * d_sq.max(1.0) {
        return None;
    }
    let u = UnitVector::normalize(d).ok()?.canonical(MATCH_TOLERANCE);
    Some(ColumnGuessSolution {
        u_candidate: u,
        guess: x.to_vec(),
        degenerate: false,
    })
}

/// A representative of `{u : u^T x = 0}`; `None` only when no such unit
/// vector is simple to write down (never for `n >= 2`).
fn degenerate_solution(x: &[u8]) -> Option<ColumnGuessSolution> {
    let n = x.len();
    let ones: Vec<usize> = (0..n).filter(|&i| x[i] == 1).collect();
    let mut v = vec![0.0; n];
    match (ones.len(), (0..n).find(|&i| x[i] == 0)) {
        (0, _) => v[0] = 1.0,
        (_, Some(z)) => v[z] = 1.0,
        (1, None) => unreachable!("n >= 2 leaves room for a zero or a second one"),
        (_, None) => {
            v[ones[0]] = 1.0;
            v[ones[1]] = -1.0;
        }
    }
    Some(ColumnGuessSolution {
        u_candidate: UnitVector::normalize(v).ok()?.canonical(MATCH_TOLERANCE),
        guess: x.to_vec(),
        degenerate: true,
    })
}

fn check_size(n: usize, n_max: usize) -> Result<()> {
    if n > n_max.min(HARD_N_LIMIT) {
        return Err(Error::TooLarge { n, n_max });
    }
    Ok(())
}

/// Tries all `2^n` binary guesses for one column and keeps the non-degenerate
/// consistent ones, deduplicated up to sign. Output follows guess order, with
/// bit `i` of the guess index giving entry `i`.
pub fn enumerate_column_candidates(y: &[f64], n_max: usize) -> Result<Vec<ColumnGuessSolution>> {
    let n = y.len();
    check_size(n, n_max)?;
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if let Some(i) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let mut out: Vec<ColumnGuessSolution> = Vec::new();
    let mut guess = vec![0u8; n];
    for mask in 0u64..(1u64 << n) {
        for (i, g) in guess.iter_mut().enumerate() {
            *g = ((mask >> i) & 1) as u8;
        }
        let Some(sol) = solve_unchecked(y, &guess) else {
            continue;
        };
        if sol.degenerate || out.iter().any(|s| same_up_to_sign(&s.u_candidate, &sol.u_candidate)) {
            continue;
        }
        out.push(sol);
    }
    Ok(out)
}

fn same_up_to_sign(a: &UnitVector, b: &UnitVector) -> bool {
    linf_error_up_to_sign(a, b).is_ok_and(|e| e <= MATCH_TOLERANCE)
}

/// Generators consistent with both columns, up to sign.
///
/// A pinned candidate of one column is kept when its reflection maps the other
/// column to a binary vector. For two non-degenerate columns this is exactly the
/// intersection of the two candidate sets; checking both directions also keeps
/// the generator when `u^T x = 0` for one of the columns.
pub fn candidate_intersection(y1: &[f64], y2: &[f64], n_max: usize) -> Result<Vec<UnitVector>> {
    if y1.len() != y2.len() {
        return Err(Error::DimensionMismatch {
            expected: y1.len(),
            found: y2.len(),
        });
    }
    let first = enumerate_column_candidates(y1, n_max)?;
    let second = enumerate_column_candidates(y2, n_max)?;
    let mut out: Vec<UnitVector> = Vec::new();
    let crossed = first
        .into_iter()
        .filter(|s| maps_to_binary(&s.u_candidate, y2))
        .chain(second.into_iter().filter(|s| maps_to_binary(&s.u_candidate, y1)));
    for s in crossed {
        if !out.iter().any(|u| same_up_to_sign(u, &s.u_candidate)) {
            out.push(s.u_candidate);
        }
    }
    Ok(out)
}

fn maps_to_binary(u: &UnitVector, y: &[f64]) -> bool {
    Householder::new(u.clone())
        .apply_vector(y)
        .is_ok_and(|x| x.iter().all(|&v| binarize(v).is_some()))
}

fn binarize(v: f64) -> Option<u8> {
    if v.abs() <= MATCH_TOLERANCE {
        Some(0)
    } else if (v - 1.0).abs() <= MATCH_TOLERANCE {
        Some(1)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactRecovery {
    pub u_hat: UnitVector,
    pub x_hat: BinaryMatrix,
    /// Indices of the two columns whose candidate sets were intersected.
    pub columns: (usize, usize),
    /// Size of the sign-folded candidate intersection.
    pub matched_candidates: usize,
}

/// First two columns that are nonzero and differ from each other.
///
/// Non-binary columns are preferred: for those `x != y`, so the true generator
/// is pinned by the column rather than only constrained to a hyperplane.
fn pick_distinct_columns(y: &DataMatrix) -> Option<(usize, usize)> {
    let columns: Vec<Vec<f64>> = (0..y.cols()).map(|j| y.column(j)).collect();
    let mut order: Vec<usize> = (0..y.cols())
        .filter(|&j| columns[j].iter().any(|v| v.abs() > MATCH_TOLERANCE))
        .collect();
    order.sort_by_key(|&j| columns[j].iter().all(|&v| binarize(v).is_some()));
    let first = *order.first()?;
    let second = order[1..].iter().copied().find(|&j| {
        columns[j]
            .iter()
            .zip(&columns[first])
            .any(|(a, b)| (a - b).abs() > MATCH_TOLERANCE)
    })?;
    Some((first, second))
}

/// Inverts every column with `x = H y` and accepts only binary results.
fn reconstruct(y: &DataMatrix, u: &UnitVector) -> Result<Option<BinaryMatrix>> {
    let x_real = Householder::new(u.clone()).apply(y)?;
    let Some(bits) = x_real.as_slice().iter().map(|&v| binarize(v)).collect::<Option<Vec<u8>>>() else {
        return Ok(None);
    };
    BinaryMatrix::from_row_major(y.rows(), y.cols(), bits).map(Some)
}

/// Recovers `(u, X)` exactly from `Y = H X` with binary `X`.
///
/// Returns `Ok(None)` when no generator reproduces every column with binary
/// coefficients.
pub fn exact_recover(y: &DataMatrix, n_max: usize) -> Result<Option<ExactRecovery>> {
    check_size(y.rows(), n_max)?;
    if y.cols() < 2 {
        return Err(Error::NeedsDistinctColumns);
    }
    let (a, b) = pick_distinct_columns(y).ok_or(Error::NeedsDistinctColumns)?;
    let matches = candidate_intersection(&y.column(a), &y.column(b), n_max)?;
    let mut verified = Vec::new();
    for u in &matches {
        if let Some(x) = reconstruct(y, u)? {
            verified.push((u.clone(), x));
        }
    }
    match verified.len() {
        0 => Ok(None),
        1 => {
            let (u_hat, x_hat) = verified.pop().expect("one element");
            Ok(Some(ExactRecovery {
                u_hat,
                x_hat,
                columns: (a, b),
                matched_candidates: matches.len(),
            }))
        }
        count => Err(Error::Ambiguous { count }),
    }
}

/// Two reflections and two columns with `H1 x1 = H2 x2 = [0, -1]^T`, where
/// `x1` is not binary: without the binary constraint the factorization is not
/// unique.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub u1: UnitVector,
    pub x1: Vec<f64>,
    pub u2: UnitVector,
    pub x2: Vec<f64>,
    pub y: Vec<f64>,
}

pub fn non_binary_counterexample() -> Counterexample {
    let u1 = UnitVector::new(vec![(1.0f64 / 3.0).sqrt(), (2.0f64 / 3.0).sqrt()]).expect("unit");
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let u2 = UnitVector::new(vec![r, r]).expect("unit");
    Counterexample {
        u1,
        x1: vec![2.0 * std::f64::consts::SQRT_2 / 3.0, 1.0 / 3.0],
        u2,
        x2: vec![1.0, 0.0],
        y: vec![0.0, -1.0],
    }
}
