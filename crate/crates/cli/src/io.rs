//! Headerless row-major CSV for matrices and JSON for structured results.
//!
//! Reals are written with Rust's shortest round-trip formatting, so a value read
//! back parses to the identical `f64`.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hhf_core::{BinaryMatrix, DataMatrix, UnitVector};
use serde::Serialize;

fn write_rows<I, R>(path: &Path, rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn read_rows(path: &Path) -> Result<Vec<Vec<String>>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.with_context(|| format!("malformed CSV in {}", path.display()))?;
        rows.push(record.iter().map(str::to_owned).collect());
    }
    if rows.is_empty() {
        bail!("{} is empty", path.display());
    }
    Ok(rows)
}

fn parse_real(field: &str, path: &Path, row: usize) -> Result<f64> {
    field
        .parse::<f64>()
        .with_context(|| format!("{}: row {}: not a number: {field:?}", path.display(), row + 1))
}

pub fn write_data_matrix(path: &Path, m: &DataMatrix) -> Result<()> {
    write_rows(
        path,
        (0..m.rows()).map(|i| m.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    )
}

pub fn read_data_matrix(path: &Path) -> Result<DataMatrix> {
    let rows = read_rows(path)?;
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().map(|f| parse_real(f, path, i)).collect::<Result<Vec<f64>>>())
        .collect::<Result<Vec<_>>>()?;
    DataMatrix::from_rows(&parsed).with_context(|| format!("invalid matrix in {}", path.display()))
}

pub fn write_binary_matrix(path: &Path, m: &BinaryMatrix) -> Result<()> {
    write_rows(
        path,
        (0..m.rows()).map(|i| m.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    )
}

pub fn read_binary_matrix(path: &Path) -> Result<BinaryMatrix> {
    let rows = read_rows(path)?;
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .map(|f| match f.as_str() {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    other => bail!("{}: row {}: expected 0 or 1, found {other:?}", path.display(), i + 1),
                })
                .collect::<Result<Vec<u8>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    BinaryMatrix::from_rows(&parsed).with_context(|| format!("invalid binary matrix in {}", path.display()))
}

/// A unit vector stored as a single CSV row.
pub fn write_unit_vector(path: &Path, u: &UnitVector) -> Result<()> {
    write_rows(path, [u.as_slice().iter().map(|v| v.to_string()).collect::<Vec<_>>()])
}

pub fn read_unit_vector(path: &Path) -> Result<UnitVector> {
    let rows = read_rows(path)?;
    if rows.len() != 1 {
        bail!("{}: expected one row, found {}", path.display(), rows.len());
    }
    let v = rows[0]
        .iter()
        .map(|f| parse_real(f, path, 0))
        .collect::<Result<Vec<f64>>>()?;
    UnitVector::new(v).with_context(|| format!("invalid unit vector in {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}
