//! Report assembly and CSV/JSON emission.
//!
//! CSV is the canonical golden-file format; the JSON report mirrors the CSV
//! fields one for one (an infinite rescaling factor prints as `inf` in CSV
//! and `null` in JSON, with `degenerate` set either way). Every float is
//! written with shortest round-trip formatting so emitted scores can be
//! recomputed exactly.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::metric::{BinnedEval, MetricConfig, MetricReport};
use crate::toy::SweepTable;

/// Flat single-evaluation summary; the row of `report.csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalSummary {
    pub n: usize,
    pub alpha: f64,
    pub trim_mae: bool,
    pub bin_width: Option<f64>,
    pub mae: f64,
    pub lambda_alpha: f64,
    pub merci: f64,
    pub n_merci: Option<f64>,
    pub max_alpha_error: f64,
    pub n_used: usize,
    pub degenerate: bool,
    pub bins_scored: Option<usize>,
    pub bins_skipped: Option<usize>,
    pub bins_mean_mae: Option<f64>,
    pub bins_mean_n_merci: Option<f64>,
}

impl EvalSummary {
    pub fn new(
        n: usize,
        cfg: &MetricConfig,
        report: &MetricReport,
        bins: Option<&BinnedEval>,
    ) -> EvalSummary {
        EvalSummary {
            n,
            alpha: cfg.alpha,
            trim_mae: cfg.trim_mae,
            bin_width: bins.map(|b| b.bin_width),
            mae: report.mae,
            lambda_alpha: report.lambda_alpha,
            merci: report.merci,
            n_merci: report.n_merci,
            max_alpha_error: report.max_alpha_error,
            n_used: report.n_used,
            degenerate: report.degenerate,
            bins_scored: bins.map(|b| b.bins.iter().filter(|x| !x.skipped()).count()),
            bins_skipped: bins.map(|b| b.bins.iter().filter(|x| x.skipped()).count()),
            bins_mean_mae: bins.and_then(|b| b.mean_mae),
            bins_mean_n_merci: bins.and_then(|b| b.mean_n_merci),
        }
    }
}

/// Everything one invocation produced, plus reproduction metadata.
#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub meta: RunMeta,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<EvalSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bins: Option<BinnedEval>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepTable>,
    /// Files written, for callers that want to list them.
    #[serde(skip)]
    pub written: Vec<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunMeta {
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Echo of the invocation configuration.
    pub config: BTreeMap<String, String>,
}

impl RunMeta {
    pub fn new(seed: Option<u64>) -> RunMeta {
        RunMeta {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.config.insert(key.to_string(), value.to_string());
    }
}

fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn fmt_opt_usize(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Single-row CSV mirror of [`EvalSummary`].
pub fn eval_summary_csv(s: &EvalSummary) -> String {
    let mut out = String::new();
    out.push_str(
        "n,alpha,trim_mae,bin_width,mae,lambda_alpha,merci,n_merci,max_alpha_error,n_used,degenerate,bins_scored,bins_skipped,bins_mean_mae,bins_mean_n_merci\n",
    );
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        s.n,
        s.alpha,
        s.trim_mae,
        fmt_opt_f64(s.bin_width),
        s.mae,
        s.lambda_alpha,
        s.merci,
        fmt_opt_f64(s.n_merci),
        s.max_alpha_error,
        s.n_used,
        s.degenerate,
        fmt_opt_usize(s.bins_scored),
        fmt_opt_usize(s.bins_skipped),
        fmt_opt_f64(s.bins_mean_mae),
        fmt_opt_f64(s.bins_mean_n_merci),
    ));
    out
}

/// Per-bin CSV with the fixed column set
/// `bin_low,bin_high,n,mae,n_merci,degenerate`. Skipped bins (fewer than two
/// samples) leave the score fields empty and read as degenerate.
pub fn bins_csv(binned: &BinnedEval) -> String {
    let mut out = String::from("bin_low,bin_high,n,mae,n_merci,degenerate\n");
    for bin in &binned.bins {
        match &bin.report {
            Some(r) => out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                bin.low,
                bin.high,
                bin.n,
                r.mae,
                fmt_opt_f64(r.n_merci),
                r.degenerate
            )),
            None => out.push_str(&format!("{},{},{},,,true\n", bin.low, bin.high, bin.n)),
        }
    }
    out
}

/// Long-format sweep CSV: `method,alpha,n_merci`, degenerate cells empty.
pub fn sweep_csv(table: &SweepTable) -> String {
    let mut out = String::from("method,alpha,n_merci\n");
    for row in &table.rows {
        for score in &row.scores {
            out.push_str(&format!(
                "{},{},{}\n",
                row.method,
                score.alpha,
                fmt_opt_f64(score.n_merci)
            ));
        }
    }
    out
}

pub(crate) fn write_text(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, text)?;
    Ok(path)
}

pub(crate) fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    fs::write(&path, text)?;
    Ok(path)
}
