//! Triplet-file ingestion and emission.
//!
//! Two formats carry (prediction, uncertainty, observation) rows:
//!
//! - CSV with the exact header `y_hat,sigma,y_true`, one record per line,
//!   plain decimal-point reals, UTF-8, no quoting;
//! - JSONL with one object per line holding those three numeric keys.
//!
//! Floats are emitted with Rust's shortest round-trip formatting, so an
//! emit/ingest cycle reproduces every value bit for bit.

use std::fs;
use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::metric::{EvalSet, Sample};

/// Expected first line of a triplet CSV.
pub const CSV_HEADER: &str = "y_hat,sigma,y_true";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripletFormat {
    Csv,
    Jsonl,
}

/// A triplet file on disk with its wire format.
#[derive(Debug, Clone, PartialEq)]
pub struct TripletFile {
    pub path: PathBuf,
    pub format: TripletFormat,
}

impl TripletFile {
    /// Infers the format from the extension: `.jsonl`/`.ndjson` are JSONL,
    /// anything else is CSV.
    pub fn new(path: impl Into<PathBuf>) -> TripletFile {
        let path = path.into();
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("ndjson") => TripletFormat::Jsonl,
            _ => TripletFormat::Csv,
        };
        TripletFile { path, format }
    }

    pub fn with_format(path: impl Into<PathBuf>, format: TripletFormat) -> TripletFile {
        TripletFile {
            path: path.into(),
            format,
        }
    }
}

/// Reads and parses a triplet file, preserving row order. Parse errors name
/// the 1-based line.
pub fn ingest(file: &TripletFile) -> Result<EvalSet> {
    let text = fs::read_to_string(&file.path)?;
    match file.format {
        TripletFormat::Csv => parse_csv(&text),
        TripletFormat::Jsonl => parse_jsonl(&text),
    }
}

pub fn parse_csv(text: &str) -> Result<EvalSet> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(Error::parse(
                1,
                format!("expected header `{CSV_HEADER}`, found `{header}`"),
            ))
        }
        None => return Err(Error::parse(1, format!("expected header `{CSV_HEADER}`"))),
    }

    let mut samples = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.trim_end_matches('\r');
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                line_no,
                format!("expected 3 comma-separated fields, found {}", fields.len()),
            ));
        }
        let mut values = [0.0f64; 3];
        for (slot, (field, name)) in values
            .iter_mut()
            .zip(fields.iter().zip(["y_hat", "sigma", "y_true"]))
        {
            *slot = field.trim().parse().map_err(|_| {
                Error::parse(line_no, format!("cannot parse {name} value `{field}`"))
            })?;
        }
        samples.push(validated_sample(line_no, values[0], values[1], values[2])?);
    }
    EvalSet::new(samples)
}

pub fn parse_jsonl(text: &str) -> Result<EvalSet> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Row {
        y_hat: f64,
        sigma: f64,
        y_true: f64,
    }

    let mut samples = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let row: Row = serde_json::from_str(line)
            .map_err(|e| Error::parse(line_no, format!("invalid JSON object: {e}")))?;
        samples.push(validated_sample(line_no, row.y_hat, row.sigma, row.y_true)?);
    }
    EvalSet::new(samples)
}

fn validated_sample(line: usize, y_hat: f64, sigma: f64, y_true: f64) -> Result<Sample> {
    if !(y_hat.is_finite() && sigma.is_finite() && y_true.is_finite()) {
        return Err(Error::parse(line, "non-finite value"));
    }
    if sigma < 0.0 {
        return Err(Error::parse(line, format!("negative sigma {sigma}")));
    }
    Ok(Sample {
        y_hat,
        sigma,
        y_true,
    })
}

pub fn emit_csv(set: &EvalSet) -> String {
    let mut out = String::with_capacity(32 * set.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in set.samples() {
        out.push_str(&format!("{},{},{}\n", s.y_hat, s.sigma, s.y_true));
    }
    out
}

pub fn emit_jsonl(set: &EvalSet) -> String {
    let mut out = String::with_capacity(64 * set.len());
    for s in set.samples() {
        out.push_str(&format!(
            "{{\"y_hat\":{},\"sigma\":{},\"y_true\":{}}}\n",
            s.y_hat, s.sigma, s.y_true
        ));
    }
    out
}

/// Writes the set in the file's format.
pub fn emit(set: &EvalSet, file: &TripletFile) -> Result<()> {
    let text = match file.format {
        TripletFormat::Csv => emit_csv(set),
        TripletFormat::Jsonl => emit_jsonl(set),
    };
    if let Some(parent) = file.path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(&file.path, text)?;
    Ok(())
}
