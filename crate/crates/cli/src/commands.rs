use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use hhf_core::analysis::{sweep_columns_with, BoundReport, BoundSpec};
use hhf_core::estimators::{recover_factors_with, Diagnostics};
use hhf_core::exact::exact_recover;
use hhf_core::{linf_error_up_to_sign, BernoulliParams, BinaryMatrix, Instance, UnitVector};
use serde::Serialize;

use crate::failure::Failure;
use crate::io;
use crate::{BenchmarkArgs, BoundsArgs, ExactArgs, GenerateArgs, RecoverArgs};

type CmdResult = Result<(), Failure>;

#[derive(Serialize)]
struct Meta {
    n: usize,
    p: usize,
    theta: f64,
    seed: u64,
    min_abs_c: f64,
    c: f64,
}

pub fn generate(a: &GenerateArgs) -> CmdResult {
    let params = BernoulliParams::new(a.theta)?;
    let inst = Instance::sample(a.n, a.p, params, a.min_abs_c, a.seed)?;
    create_dir(&a.out)?;
    io::write_unit_vector(&a.out.join("U.csv"), &inst.u)?;
    io::write_binary_matrix(&a.out.join("X.csv"), &inst.x)?;
    io::write_data_matrix(&a.out.join("Y.csv"), &inst.y)?;
    io::write_json(
        &a.out.join("meta.json"),
        &Meta {
            n: a.n,
            p: a.p,
            theta: a.theta,
            seed: a.seed,
            min_abs_c: a.min_abs_c,
            c: inst.u.entry_sum(),
        },
    )?;
    println!("wrote n={} p={} instance (c = {}) to {}", a.n, a.p, inst.u.entry_sum(), a.out.display());
    Ok(())
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create directory {}", dir.display()))
        .map_err(Failure::Io)
}

/// `--in` may name Y.csv itself or the directory holding it.
fn resolve_input(input: &Path) -> (PathBuf, PathBuf) {
    if input.is_dir() {
        (input.to_path_buf(), input.join("Y.csv"))
    } else {
        let dir = input
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map_or_else(|| PathBuf::from("."), Path::to_path_buf);
        (dir, input.to_path_buf())
    }
}

#[derive(Serialize)]
struct Truth {
    linf_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    x_bit_error_rate: Option<f64>,
}

fn compare_with_truth(dir: &Path, u_hat: &UnitVector, x_hat: &BinaryMatrix) -> Result<Option<Truth>, Failure> {
    let u_path = dir.join("U.csv");
    if !u_path.exists() {
        return Ok(None);
    }
    let u = io::read_unit_vector(&u_path)?;
    let linf_error = linf_error_up_to_sign(&u, u_hat)
        .with_context(|| format!("{} does not match the dimension of Y", u_path.display()))?;
    let x_path = dir.join("X.csv");
    let x_bit_error_rate = if x_path.exists() {
        let x = io::read_binary_matrix(&x_path)?;
        let wrong = x
            .mismatches(x_hat)
            .with_context(|| format!("{} does not match the shape of Y", x_path.display()))?;
        Some(wrong as f64 / (x.rows() * x.cols()) as f64)
    } else {
        None
    };
    Ok(Some(Truth {
        linf_error,
        x_bit_error_rate,
    }))
}

#[derive(Serialize)]
struct RecoverReport<'a> {
    n: usize,
    p: usize,
    theta_hat: f64,
    c_squared_hat: f64,
    u_hat: &'a [f64],
    diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    truth: Option<Truth>,
}

pub fn recover(a: &RecoverArgs) -> CmdResult {
    if !(a.zeta > 0.0 && a.zeta < 1.0) {
        return Err(Failure::InvalidParams(format!("--zeta must lie in (0, 1), got {}", a.zeta)));
    }
    let (dir, y_path) = resolve_input(&a.input);
    let y = io::read_data_matrix(&y_path)?;
    let r = recover_factors_with(&y, a.zeta)?;
    let truth = compare_with_truth(&dir, &r.u_hat, &r.x_hat)?;
    let out = a.out.clone().unwrap_or(dir);
    create_dir(&out)?;
    if let Some(t) = &truth {
        println!("sign-folded linf error {}", t.linf_error);
    }
    io::write_json(
        &out.join("result.json"),
        &RecoverReport {
            n: y.rows(),
            p: y.cols(),
            theta_hat: r.theta_hat,
            c_squared_hat: r.c_squared_hat,
            u_hat: r.u_hat.as_slice(),
            diagnostics: r.diagnostics,
            truth,
        },
    )?;
    io::write_binary_matrix(&out.join("X_hat.csv"), &r.x_hat)?;
    println!("theta_hat {} c_squared_hat {}", r.theta_hat, r.c_squared_hat);
    Ok(())
}

#[derive(Serialize)]
struct ExactReport<'a> {
    n: usize,
    p: usize,
    u_hat: &'a [f64],
    columns: [usize; 2],
    matched_candidates: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    truth: Option<Truth>,
}

pub fn exact(a: &ExactArgs) -> CmdResult {
    let (dir, y_path) = resolve_input(&a.input);
    let y = io::read_data_matrix(&y_path)?;
    let found = exact_recover(&y, a.n_max)?.ok_or(Failure::ExactNone)?;
    let truth = compare_with_truth(&dir, &found.u_hat, &found.x_hat)?;
    let out = a.out.clone().unwrap_or(dir);
    create_dir(&out)?;
    io::write_json(
        &out.join("exact.json"),
        &ExactReport {
            n: y.rows(),
            p: y.cols(),
            u_hat: found.u_hat.as_slice(),
            columns: [found.columns.0, found.columns.1],
            matched_candidates: found.matched_candidates,
            truth,
        },
    )?;
    io::write_binary_matrix(&out.join("X_hat.csv"), &found.x_hat)?;
    println!("exact recovery succeeded using columns {} and {}", found.columns.0, found.columns.1);
    Ok(())
}

#[derive(Serialize)]
struct BoundsOutput {
    #[serde(flatten)]
    spec: BoundSpec,
    #[serde(flatten)]
    report: BoundReport,
}

pub fn bounds(a: &BoundsArgs) -> CmdResult {
    let spec = BoundSpec {
        n: a.n,
        p: a.p,
        theta: a.theta,
        c: a.c,
        t: a.t,
    };
    let report = spec.evaluate()?;
    let output = BoundsOutput { spec, report };
    let text = serde_json::to_string_pretty(&output).context("serializing bounds")?;
    println!("{text}");
    if let Some(path) = &a.out {
        io::write_json(path, &output)?;
    }
    Ok(())
}

pub fn benchmark(a: &BenchmarkArgs) -> CmdResult {
    if a.theta.is_empty() {
        return Err(Failure::InvalidParams("--theta needs at least one value".into()));
    }
    let mut rows = Vec::new();
    for &theta in &a.theta {
        eprintln!("sweeping theta = {theta} over {} column counts", a.p_values.len());
        rows.extend(sweep_columns_with(
            a.n,
            theta,
            &a.p_values,
            a.trials,
            a.seed,
            a.min_abs_c,
            a.t,
        )?);
    }
    create_dir(&a.out)?;
    let path = a.out.join("figure1.csv");
    let mut w = csv::Writer::from_path(&path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    w.write_record(["p", "theta", "mean_linf_error", "empirical_rate", "bound_value"])
        .context("writing figure1.csv")?;
    for r in &rows {
        w.write_record([
            r.p.to_string(),
            r.theta.to_string(),
            r.mean_linf_error.to_string(),
            r.empirical_rate.to_string(),
            r.bound_value.to_string(),
        ])
        .context("writing figure1.csv")?;
    }
    w.flush().context("writing figure1.csv")?;
    println!("wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}
