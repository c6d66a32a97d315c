//! Concentration bounds for the estimators and the Monte-Carlo harness that
//! checks them.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::estimators::{estimate_theta, recover_factors};
use crate::householder::{linf_error_up_to_sign, UnitVector};
use crate::matrix::DataMatrix;
use crate::sampling::{derive_seed, sample_binary_matrix, sample_unit_vector, BernoulliParams, Instance};

/// Error threshold used by [`sweep_columns`] when counting failures.
pub const DEFAULT_SWEEP_T: f64 = 0.05;

/// Recorded for a trial whose pipeline refused the data; no pair of unit
/// vectors is further apart than this in the max norm.
pub const REFUSED_TRIAL_ERROR: f64 = 2.0;

fn check_dims(n: usize, p: usize) -> Result<()> {
    if n == 0 || p == 0 {
        return Err(invalid(format!("n and p must be >= 1, got n={n}, p={p}")));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(invalid(format!("t must be positive, got {t}")));
    }
    Ok(())
}

fn check_c(c: f64) -> Result<()> {
    if c == 0.0 || !c.is_finite() {
        return Err(invalid("c = sum(u) must be nonzero and finite"));
    }
    Ok(())
}

/// `min(1, 2 exp(-2 t^2 n p))`: tail bound for `|theta_hat - theta| > t`.
pub fn theta_bound(n: usize, p: usize, t: f64) -> Result<f64> {
    check_dims(n, p)?;
    check_t(t)?;
    Ok((2.0 * (-2.0 * t * t * n as f64 * p as f64).exp()).min(1.0))
}

/// `min(1, 2 n exp(-8 t^2 c^2 theta^2 p))`: union bound for `|u - u_hat|_inf > t`.
pub fn u_recovery_bound(n: usize, p: usize, theta: f64, c: f64, t: f64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    BernoulliParams::new(theta)?;
    check_c(c)?;
    check_t(t)?;
    let rate = 8.0 * t * t * c * c * theta * theta;
    Ok((2.0 * n as f64 * (-rate * p as f64).exp()).min(1.0))
}

/// `min(1, 2 exp(-8 t^2 theta^2 n p))`: tail bound for the `c^2 / n` statistic.
pub fn c_squared_bound(n: usize, p: usize, theta: f64, t: f64) -> Result<f64> {
    check_dims(n, p)?;
    BernoulliParams::new(theta)?;
    check_t(t)?;
    Ok((2.0 * (-8.0 * t * t * theta * theta * n as f64 * p as f64).exp()).min(1.0))
}

/// Smallest `p` with `2 n exp(-8 t^2 c^2 theta^2 p) <= 1/n`, i.e.
/// `ceil(ln(2 n^2) / (8 t^2 theta^2 c^2))`.
pub fn plan_columns(n: usize, theta: f64, c: f64, t: f64) -> Result<usize> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    BernoulliParams::new(theta)?;
    check_c(c)?;
    check_t(t)?;
    let nf = n as f64;
    let p = (2.0 * nf * nf).ln() / (8.0 * t * t * theta * theta * c * c);
    Ok(p.ceil() as usize)
}

/// Parameters of one bound evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundSpec {
    pub n: usize,
    pub p: usize,
    pub theta: f64,
    pub c: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub theta_bound: f64,
    pub c_squared_bound: f64,
    pub u_recovery_bound: f64,
    pub planned_columns: usize,
}

impl BoundSpec {
    pub fn evaluate(&self) -> Result<BoundReport> {
        Ok(BoundReport {
            theta_bound: theta_bound(self.n, self.p, self.t)?,
            c_squared_bound: c_squared_bound(self.n, self.p, self.theta, self.t)?,
            u_recovery_bound: u_recovery_bound(self.n, self.p, self.theta, self.c, self.t)?,
            planned_columns: plan_columns(self.n, self.theta, self.c, self.t)?,
        })
    }
}

/// Outcome of a batch of seeded trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub trials: usize,
    pub failures: usize,
    pub empirical_rate: f64,
    pub bound_value: f64,
    /// Mean of `per_trial_errors`: `|theta_hat - theta|` for theta trials, the
    /// sign-folded max-norm error of `u_hat` for generator trials.
    pub mean_linf_error: f64,
    pub per_trial_errors: Vec<f64>,
    /// Smallest `|sum(u)|` over the sampled generators.
    pub min_abs_c: f64,
    pub wall_time_ns: u64,
}

impl TrialReport {
    /// `bound + 3 sqrt(bound (1 - bound) / trials)`, the one-sided acceptance level.
    pub fn bound_with_slack(&self) -> f64 {
        let b = self.bound_value;
        b + 3.0 * (b * (1.0 - b) / self.trials as f64).sqrt()
    }

    /// Equality on everything except the wall time.
    pub fn same_outcome(&self, other: &TrialReport) -> bool {
        TrialReport {
            wall_time_ns: 0,
            ..self.clone()
        } == TrialReport {
            wall_time_ns: 0,
            ..other.clone()
        }
    }
}

#[cfg(not(target_arch = "wasm32"))]
struct Stopwatch(std::time::Instant);

#[cfg(not(target_arch = "wasm32"))]
impl Stopwatch {
    fn start() -> Self {
        Self(std::time::Instant::now())
    }

    fn elapsed_ns(&self) -> u64 {
        u64::try_from(self.0.elapsed().as_nanos()).unwrap_or(u64::MAX)
    }
}

// no monotonic clock on wasm32-unknown-unknown
#[cfg(target_arch = "wasm32")]
struct Stopwatch;

#[cfg(target_arch = "wasm32")]
impl Stopwatch {
    fn start() -> Self {
        Self
    }

    fn elapsed_ns(&self) -> u64 {
        0
    }
}

/// Instance for trial `index`. The generator and coefficient streams depend only
/// on `(seed, index)`, so runs that differ in `p` or `theta` share randomness.
fn trial_instance(n: usize, p: usize, params: BernoulliParams, min_abs_c: f64, seed: u64, index: usize) -> Result<Instance> {
    let index = index as u64;
    let u = sample_unit_vector(n, derive_seed(seed, index, 1), min_abs_c)?;
    let x = sample_binary_matrix(n, p, params, derive_seed(seed, index, 2))?;
    Instance::from_factors(u, x)
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(invalid("trials must be >= 1"));
    }
    Ok(())
}

fn summarize(errors: Vec<f64>, t: f64, bound_value: f64, min_abs_c: f64, clock: Stopwatch) -> TrialReport {
    let trials = errors.len();
    let failures = errors.iter().filter(|&&e| e > t).count();
    TrialReport {
        trials,
        failures,
        empirical_rate: failures as f64 / trials as f64,
        bound_value,
        mean_linf_error: errors.iter().sum::<f64>() / trials as f64,
        per_trial_errors: errors,
        min_abs_c,
        wall_time_ns: clock.elapsed_ns(),
    }
}

/// Empirical `P(|theta_hat - theta| > t)` against [`theta_bound`].
pub fn run_theta_trials(n: usize, p: usize, theta: f64, t: f64, trials: usize, seed: u64) -> Result<TrialReport> {
    let params = BernoulliParams::new(theta)?;
    check_trials(trials)?;
    let bound = theta_bound(n, p, t)?;
    let clock = Stopwatch::start();
    let mut errors = Vec::with_capacity(trials);
    let mut min_c = f64::INFINITY;
    for i in 0..trials {
        let inst = trial_instance(n, p, params, 0.0, seed, i)?;
        min_c = min_c.min(inst.u.entry_sum().abs());
        errors.push((estimate_theta(&inst.y) - theta).abs());
    }
    Ok(summarize(errors, t, bound, min_c, clock))
}

/// Sign-folded error of the full pipeline on `y` against the truth `u`.
pub fn pipeline_error(u: &UnitVector, y: &DataMatrix) -> Result<f64> {
    match recover_factors(y) {
        Ok(r) => linf_error_up_to_sign(u, &r.u_hat),
        Err(_) => Ok(REFUSED_TRIAL_ERROR),
    }
}

/// Empirical `P(|u - u_hat|_inf > t)` against [`u_recovery_bound`], evaluated at
/// the smallest `|c|` seen across the trials.
pub fn run_u_trials(
    n: usize,
    p: usize,
    theta: f64,
    min_abs_c: f64,
    t: f64,
    trials: usize,
    seed: u64,
) -> Result<TrialReport> {
    let params = BernoulliParams::new(theta)?;
    check_trials(trials)?;
    check_t(t)?;
    if !(min_abs_c > 0.0) {
        return Err(invalid(format!("min_abs_c must be positive, got {min_abs_c}")));
    }
    let clock = Stopwatch::start();
    let mut errors = Vec::with_capacity(trials);
    let mut min_c = f64::INFINITY;
    for i in 0..trials {
        let inst = trial_instance(n, p, params, min_abs_c, seed, i)?;
        min_c = min_c.min(inst.u.entry_sum().abs());
        errors.push(pipeline_error(&inst.u, &inst.y)?);
    }
    let bound = u_recovery_bound(n, p, theta, min_c, t)?;
    Ok(summarize(errors, t, bound, min_c, clock))
}

/// One point of the error-versus-columns curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: usize,
    pub theta: f64,
    pub mean_linf_error: f64,
    pub empirical_rate: f64,
    pub bound_value: f64,
}

/// [`run_u_trials`] for each column count, with the default `min_abs_c` and `t`.
pub fn sweep_columns(n: usize, theta: f64, p_values: &[usize], trials: usize, seed: u64) -> Result<Vec<SweepRow>> {
    sweep_columns_with(
        n,
        theta,
        p_values,
        trials,
        seed,
        crate::sampling::DEFAULT_MIN_ABS_C,
        DEFAULT_SWEEP_T,
    )
}

pub fn sweep_columns_with(
    n: usize,
    theta: f64,
    p_values: &[usize],
    trials: usize,
    seed: u64,
    min_abs_c: f64,
    t: f64,
) -> Result<Vec<SweepRow>> {
    if p_values.is_empty() {
        return Err(invalid("p_values must be nonempty"));
    }
    if p_values.windows(2).any(|w| w[0] >= w[1]) || p_values[0] == 0 {
        return Err(invalid("p_values must be positive and strictly ascending"));
    }
    p_values
        .iter()
        .map(|&p| {
            let r = run_u_trials(n, p, theta, min_abs_c, t, trials, seed)?;
            Ok(SweepRow {
                p,
                theta,
                mean_linf_error: r.mean_linf_error,
                empirical_rate: r.empirical_rate,
                bound_value: r.bound_value,
            })
        })
        .collect()
}

/// `count` column counts spaced evenly in log scale over `[lo, hi]`, rounded and deduplicated.
pub fn log_spaced(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    if count <= 1 || lo >= hi {
        return vec![lo.max(1)];
    }
    let (a, b) = ((lo.max(1) as f64).ln(), (hi as f64).ln());
    let mut out: Vec<usize> = (0..count)
        .map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp().round() as usize)
        .collect();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn theta_bound_values() {
        assert_relative_eq!(theta_bound(50, 20, 0.05).unwrap(), 2.0 * (-5.0f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(theta_bound(50, 20, 0.05).unwrap(), 0.013476, max_relative = 1e-4);
        assert!(theta_bound(1, 1, 100.0).unwrap() < 1e-300);
        assert_eq!(theta_bound(1, 1, 1e-3).unwrap(), 1.0);
        assert!(theta_bound(1, 1, 0.0).is_err());
    }

    #[test]
    fn u_bound_values() {
        let b = u_recovery_bound(1000, 10_000, 0.4, 1.0, 0.05).unwrap();
        assert_relative_eq!(b, 2000.0 * (-32.0f64).exp(), max_relative = 1e-12);
        assert_relative_eq!(b, 2.5e-11, max_relative = 0.02);
        assert_eq!(u_recovery_bound(1000, 0, 0.4, 1.0, 0.05).unwrap(), 1.0);
        assert!(u_recovery_bound(10, 10, 0.4, 0.0, 0.05).is_err());
    }

    #[test]
    fn doubling_p_squares_exponential_factor() {
        let (n, theta, c, t) = (50, 0.3, 0.7, 0.2);
        let f = |p| u_recovery_bound(n, p, theta, c, t).unwrap() / (2.0 * n as f64);
        assert_relative_eq!(f(2000), f(1000) * f(1000), max_relative = 1e-10);
    }

    #[test]
    fn planner_values() {
        // ln(2e6) / 0.0032 = 4533.96
        assert_eq!(plan_columns(1000, 0.4, 1.0, 0.05).unwrap(), 4534);
        assert_eq!(plan_columns(100, 0.4, 0.5, 0.1).unwrap(), 3095);
        // the planned count is the first p whose bound reaches 1/n
        assert!(u_recovery_bound(1000, 4534, 0.4, 1.0, 0.05).unwrap() <= 1e-3);
        assert!(u_recovery_bound(1000, 4533, 0.4, 1.0, 0.05).unwrap() > 1e-3);
        let p = plan_columns(1000, 0.4, 1.0, 0.05).unwrap();
        let q = plan_columns(1000, 0.4, 1.0, 0.1).unwrap();
        assert!((p as f64 / 4.0 - q as f64).abs() <= 1.0);
        assert!(plan_columns(10, 0.4, 0.0, 0.1).is_err());
    }

    #[test]
    fn planner_is_tight() {
        for &(n, theta, c, t) in &[(1000, 0.4, 1.0, 0.05), (100, 0.4, 0.5, 0.1), (7, 0.2, 1.3, 0.3), (2, 0.9, 0.05, 0.5)] {
            let p = plan_columns(n, theta, c, t).unwrap();
            assert!(u_recovery_bound(n, p, theta, c, t).unwrap() <= 1.0 / n as f64);
            if p > 1 {
                let rate = 8.0 * t * t * c * c * theta * theta;
                assert!(2.0 * n as f64 * (-rate * (p - 1) as f64).exp() > 1.0 / n as f64);
            }
        }
    }

    #[test]
    fn theta_trials_with_t_one_never_fail() {
        let r = run_theta_trials(10, 5, 0.3, 1.0, 50, 1).unwrap();
        assert_eq!(r.failures, 0);
        assert_eq!(r.per_trial_errors.len(), 50);
    }

    #[test]
    fn trials_are_deterministic() {
        let a = run_u_trials(30, 200, 0.3, 0.2, 0.1, 10, 99).unwrap();
        let b = run_u_trials(30, 200, 0.3, 0.2, 0.1, 10, 99).unwrap();
        assert!(a.same_outcome(&b));
        let c = run_theta_trials(30, 20, 0.3, 0.05, 10, 99).unwrap();
        assert!(c.same_outcome(&run_theta_trials(30, 20, 0.3, 0.05, 10, 99).unwrap()));
    }

    #[test]
    fn sweep_shapes() {
        let rows = sweep_columns(20, 0.4, &[2], 3, 5).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].p, 2);
        assert!(sweep_columns(20, 0.4, &[], 3, 5).is_err());
        assert!(sweep_columns(20, 0.4, &[4, 2], 3, 5).is_err());
        assert_eq!(sweep_columns(20, 0.4, &[2, 8], 3, 5).unwrap(), sweep_columns(20, 0.4, &[2, 8], 3, 5).unwrap());
    }

    #[test]
    fn log_spacing() {
        assert_eq!(log_spaced(2, 4096, 12), vec![2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096]);
        assert_eq!(log_spaced(5, 5, 3), vec![5]);
    }

    #[test]
    fn bound_spec_evaluates() {
        let r = BoundSpec { n: 1000, p: 10_000, theta: 0.4, c: 1.0, t: 0.05 }.evaluate().unwrap();
        assert_eq!(r.planned_columns, 4534);
        assert!(r.u_recovery_bound < 1e-10);
    }
}
