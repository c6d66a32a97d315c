//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export returns a JSON string; the page parses it and draws on a
//! canvas. The JSON builders are plain functions so they can be tested natively.

use hhf_core::analysis::{log_spaced, plan_columns, sweep_columns_with, u_recovery_bound, SweepRow};
use hhf_core::estimators::{recover_factors, Diagnostics};
use hhf_core::{linf_error_up_to_sign, BernoulliParams, Instance};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Upper limit on `n * p` accepted from the page, to keep the tab responsive.
pub const MAX_CELLS: usize = 20_000_000;

#[derive(Debug, Serialize)]
pub struct RecoveryView {
    pub u: Vec<f64>,
    /// Sign-aligned with `u`.
    pub u_hat: Vec<f64>,
    pub c: f64,
    pub theta_hat: f64,
    pub c_squared_hat: f64,
    pub linf_error: f64,
    pub x_bit_error_rate: f64,
    pub diagnostics: Diagnostics,
}

fn check_size(n: usize, p: usize) -> Result<(), String> {
    if n.saturating_mul(p) > MAX_CELLS {
        return Err(format!("n * p = {} exceeds the demo limit {MAX_CELLS}", n.saturating_mul(p)));
    }
    Ok(())
}

/// Samples one instance and runs the polynomial-time pipeline on it.
pub fn recovery_view(n: usize, p: usize, theta: f64, min_abs_c: f64, seed: u64) -> Result<RecoveryView, String> {
    check_size(n, p)?;
    let params = BernoulliParams::new(theta).map_err(|e| e.to_string())?;
    let inst = Instance::sample(n, p, params, min_abs_c, seed).map_err(|e| e.to_string())?;
    let r = recover_factors(&inst.y).map_err(|e| e.to_string())?;
    let linf_error = linf_error_up_to_sign(&inst.u, &r.u_hat).map_err(|e| e.to_string())?;
    let dot: f64 = inst.u.as_slice().iter().zip(r.u_hat.as_slice()).map(|(a, b)| a * b).sum();
    let u_hat = if dot < 0.0 { r.u_hat.negated() } else { r.u_hat.clone() };
    let wrong = r.x_hat.mismatches(&inst.x).map_err(|e| e.to_string())?;
    Ok(RecoveryView {
        c: inst.u.entry_sum(),
        u: inst.u.into_vec(),
        u_hat: u_hat.into_vec(),
        theta_hat: r.theta_hat,
        c_squared_hat: r.c_squared_hat,
        linf_error,
        x_bit_error_rate: wrong as f64 / (n * p) as f64,
        diagnostics: r.diagnostics,
    })
}

#[derive(Debug, Serialize)]
pub struct SweepView {
    pub p_values: Vec<usize>,
    pub curves: Vec<Vec<SweepRow>>,
}

/// Error-versus-columns curves, one per theta, over powers of two up to `p_max`.
pub fn sweep_view(n: usize, thetas: &[f64], p_max: usize, trials: usize, seed: u64) -> Result<SweepView, String> {
    check_size(n, p_max.saturating_mul(trials))?;
    let p_values: Vec<usize> = std::iter::successors(Some(2usize), |&p| Some(p * 2))
        .take_while(|&p| p <= p_max.max(2))
        .collect();
    let curves = thetas
        .iter()
        .map(|&theta| sweep_columns_with(n, theta, &p_values, trials, seed, 0.1, 0.05))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(SweepView { p_values, curves })
}

#[derive(Debug, Serialize)]
pub struct BoundView {
    pub p_values: Vec<usize>,
    pub bound: Vec<f64>,
    pub planned_columns: usize,
}

/// The union bound on the generator error as a function of `p`.
pub fn bound_view(n: usize, theta: f64, c: f64, t: f64, p_max: usize, points: usize) -> Result<BoundView, String> {
    let planned_columns = plan_columns(n, theta, c, t).map_err(|e| e.to_string())?;
    let p_values = log_spaced(1, p_max.max(2), points.max(2));
    let bound = p_values
        .iter()
        .map(|&p| u_recovery_bound(n, p, theta, c, t))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(BoundView {
        p_values,
        bound,
        planned_columns,
    })
}

fn to_json<T: Serialize>(r: Result<T, String>) -> Result<String, String> {
    r.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
}

#[wasm_bindgen]
pub fn recover_instance(n: usize, p: usize, theta: f64, min_abs_c: f64, seed: u32) -> Result<String, JsError> {
    to_json(recovery_view(n, p, theta, min_abs_c, u64::from(seed))).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sweep(n: usize, thetas: Vec<f64>, p_max: usize, trials: usize, seed: u32) -> Result<String, JsError> {
    to_json(sweep_view(n, &thetas, p_max, trials, u64::from(seed))).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bound_curve(n: usize, theta: f64, c: f64, t: f64, p_max: usize, points: usize) -> Result<String, JsError> {
    to_json(bound_view(n, theta, c, t, p_max, points)).map_err(|e| JsError::new(&e))
}
