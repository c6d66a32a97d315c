//! Seeded Monte-Carlo checks of the polynomial-time estimators. Expected values
//! come from the generating model, never from the estimator under test.

use hhf_core::analysis::{run_theta_trials, run_u_trials};
use hhf_core::estimators::{estimate_c_squared, estimate_theta, recover_factors};
use hhf_core::sampling::{derive_seed, sample_binary_matrix, sample_unit_vector, BernoulliParams, Instance};
use hhf_core::{linf_error_up_to_sign, Householder, UnitVector};

#[test]
fn theta_estimate_is_unbiased_on_small_instances() {
    let params = BernoulliParams::new(0.3).unwrap();
    let mean: f64 = (0..200u64)
        .map(|s| estimate_theta(&Instance::sample(50, 40, params, 0.0, s).unwrap().y))
        .sum::<f64>()
        / 200.0;
    assert!((mean - 0.3).abs() < 0.02, "mean theta_hat {mean}");
}

/// Unit vector with entry sum exactly `c`: `c / sqrt(n)` along the all-ones
/// direction plus a random orthogonal component.
fn unit_vector_with_sum(n: usize, c: f64, seed: u64) -> UnitVector {
    let g = sample_unit_vector(n, seed, 0.0).unwrap().into_vec();
    let mean = g.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = g.iter().map(|v| v - mean).collect();
    let norm = centered.iter().map(|v| v * v).sum::<f64>().sqrt();
    let along = c / (n as f64).sqrt();
    let across = (1.0 - along * along).sqrt();
    let u = UnitVector::new(
        centered
            .iter()
            .map(|v| along / (n as f64).sqrt() + across * v / norm)
            .collect(),
    )
    .unwrap();
    assert!((u.entry_sum() - c).abs() < 1e-12);
    u
}

#[test]
fn c_squared_estimate_centers_on_truth() {
    let params = BernoulliParams::new(0.2).unwrap();
    let mut total = 0.0;
    for s in 0..100u64 {
        let u = unit_vector_with_sum(100, 0.8, derive_seed(5, s, 1));
        let x = sample_binary_matrix(100, 5000, params, derive_seed(5, s, 2)).unwrap();
        let y = Householder::new(u).apply_binary(&x).unwrap();
        total += estimate_c_squared(&y, estimate_theta(&y)).unwrap().value;
    }
    let mean = total / 100.0;
    assert!((mean - 0.64).abs() < 0.05, "mean c^2 estimate {mean}");
}

#[test]
fn generator_recovery_at_five_thousand_columns() {
    let r = run_u_trials(1000, 5000, 0.4, 0.5, 0.05, 100, 11).unwrap();
    assert!(r.failures <= 5, "{} of 100 trials above 0.05", r.failures);
}

#[test]
fn generator_recovery_at_two_thousand_columns() {
    // the 0.05 level holds in the typical trial, and in all but a few once |c| >= 1
    let typical = run_u_trials(1000, 2000, 0.4, 0.5, 0.05, 40, 12).unwrap();
    let mut errs = typical.per_trial_errors.clone();
    errs.sort_by(f64::total_cmp);
    assert!(errs[errs.len() / 2] < 0.05, "median {}", errs[errs.len() / 2]);

    let strong = run_u_trials(1000, 2000, 0.4, 1.0, 0.05, 40, 13).unwrap();
    assert!(strong.failures <= 2, "{} of 40 above 0.05", strong.failures);
}

#[test]
fn coefficients_are_nearly_exact() {
    let params = BernoulliParams::new(0.3).unwrap();
    let (mut wrong, mut total) = (0usize, 0usize);
    for s in 0..10u64 {
        let inst = Instance::sample(200, 1000, params, 0.5, s).unwrap();
        let r = recover_factors(&inst.y).unwrap();
        wrong += r.x_hat.mismatches(&inst.x).unwrap();
        total += 200 * 1000;
    }
    assert!((wrong as f64) < 0.01 * total as f64, "{wrong} of {total} entries wrong");
}

#[test]
fn sign_of_ground_truth_is_irrelevant() {
    let params = BernoulliParams::new(0.4).unwrap();
    let inst = Instance::sample(60, 800, params, 0.3, 21).unwrap();
    let flipped = Instance::from_factors(inst.u.negated(), inst.x.clone()).unwrap();
    assert_eq!(inst.y, flipped.y);
    let a = recover_factors(&inst.y).unwrap();
    let b = recover_factors(&flipped.y).unwrap();
    assert_eq!(
        linf_error_up_to_sign(&inst.u, &a.u_hat).unwrap(),
        linf_error_up_to_sign(&flipped.u, &b.u_hat).unwrap()
    );
}

#[test]
fn theta_failures_stay_under_the_bound() {
    let r = run_theta_trials(50, 20, 0.3, 0.05, 2000, 31).unwrap();
    assert!(r.empirical_rate <= r.bound_with_slack(), "{} > {}", r.empirical_rate, r.bound_with_slack());
}

#[test]
fn failure_rates_respect_bounds_on_a_grid() {
    // one-sided: the bounds may be loose by orders of magnitude
    for &(n, p, theta, t) in &[(10, 10, 0.2, 0.1), (20, 5, 0.5, 0.15), (40, 10, 0.7, 0.05)] {
        let r = run_theta_trials(n, p, theta, t, 1000, 41).unwrap();
        assert!(r.empirical_rate <= r.bound_with_slack(), "theta grid ({n},{p},{theta},{t})");
    }
    for &(n, p, theta, t) in &[(20, 4000, 0.4, 0.15), (50, 3000, 0.5, 0.2), (10, 6000, 0.3, 0.2)] {
        let r = run_u_trials(n, p, theta, 0.5, t, 1000, 43).unwrap();
        assert!(r.empirical_rate <= r.bound_with_slack(), "u grid ({n},{p},{theta},{t}): {} vs {}", r.empirical_rate, r.bound_value);
    }
}
