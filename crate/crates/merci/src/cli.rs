//! Command-line entry points.
//!
//! Two subcommands: `eval` scores an external triplet file, `toy` runs the
//! cubic-regression benchmark and emits score tables and a chart. Exit
//! codes: 0 on success (degenerate scores are data, not failures), 2 on
//! usage errors, 1 on data or I/O errors.

use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::metric::MetricConfig;
use crate::report::{
    bins_csv, eval_summary_csv, sweep_csv, write_json, write_text, EvalSummary, ReportBundle,
    RunMeta,
};
use crate::svg::{render_line_chart, ChartConfig, Series};
use crate::toy::{alpha_sweep, run_methods, ToyConfig, ToyMethod};
use crate::triplet::{emit_csv, ingest, TripletFile};

#[derive(Debug, Parser)]
#[command(
    name = "merci",
    version,
    about = "Score predictive uncertainty for regression and benchmark uncertainty estimators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score a triplet file (CSV or JSONL) and write a report.
    Eval(EvalArgs),
    /// Run the toy benchmark and write triplets, a score table, and a chart.
    Toy(ToyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Triplet file; `.jsonl`/`.ndjson` parse as JSONL, anything else as CSV.
    #[arg(long)]
    pub input: PathBuf,

    /// Inlier percentile in (0, 100].
    #[arg(long, default_value_t = 95.0)]
    pub alpha: f64,

    /// Average only the errors at or below the alpha-percentile error.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub trim_mae: bool,

    /// Also score per ground-truth interval of this width.
    #[arg(long)]
    pub bin_width: Option<f64>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ToyArgs {
    /// Comma-separated method names: mcd, mi, bagging, me, mn, le, plus the
    /// synthetic baselines oracle and constant.
    #[arg(long, default_value = "mi,bagging,mcd,me")]
    pub methods: String,

    /// Independent train/evaluate repetitions per method.
    #[arg(long, default_value_t = 20)]
    pub runs: usize,

    /// Master seed; all randomness descends from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Comma-separated percentiles (default 5,10,...,100).
    #[arg(long)]
    pub alphas: Option<String>,

    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

/// Runs a parsed command. The caller maps errors to exit codes.
pub fn run(cli: &Cli) -> Result<ReportBundle> {
    match &cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Toy(args) => cmd_toy(args),
    }
}

/// Scores one triplet file and writes `report.csv` or `report.json`, plus
/// `bins.csv` when binning is requested. Degenerate scores are reported as
/// flagged rows, not failures.
pub fn cmd_eval(args: &EvalArgs) -> Result<ReportBundle> {
    let cfg = MetricConfig::new(args.alpha)?.with_trim_mae(args.trim_mae);
    let set = ingest(&TripletFile::new(&args.input))?;
    let report = set.n_merci(&cfg);
    let bins = match args.bin_width {
        Some(w) => Some(set.binned(&cfg, w)?),
        None => None,
    };

    let summary = EvalSummary::new(set.len(), &cfg, &report, bins.as_ref());
    let mut meta = RunMeta::new(None);
    meta.set("input", args.input.display());
    meta.set("alpha", args.alpha);
    meta.set("trim_mae", args.trim_mae);
    if let Some(w) = args.bin_width {
        meta.set("bin_width", w);
    }

    let mut written = Vec::new();
    match args.format {
        OutputFormat::Csv => {
            written.push(write_text(
                &args.out,
                "report.csv",
                &eval_summary_csv(&summary),
            )?);
        }
        OutputFormat::Json => {
            written.push(write_json(&args.out, "report.json", &summary)?);
        }
    }
    if let Some(b) = &bins {
        written.push(write_text(&args.out, "bins.csv", &bins_csv(b))?);
    }

    Ok(ReportBundle {
        meta,
        summary: Some(summary),
        bins,
        sweep: None,
        written,
    })
}

/// Runs the toy benchmark: writes one triplet CSV per method
/// (`triplets_<name>.csv`), the long-format `alpha_sweep.csv`, the
/// `alpha_sweep.svg` chart with a reference line at the 85th percentile,
/// and `run_meta.json`.
pub fn cmd_toy(args: &ToyArgs) -> Result<ReportBundle> {
    let alphas = match &args.alphas {
        Some(list) => parse_alpha_list(list)?,
        None => (1..=20).map(|i| 5.0 * i as f64).collect(),
    };
    let cfg = ToyConfig {
        master_seed: args.seed,
        n_runs: args.runs,
        alphas: alphas.clone(),
        ..ToyConfig::default()
    };
    let methods = args
        .methods
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| ToyMethod::parse(name, &cfg))
        .collect::<Result<Vec<_>>>()?;
    if methods.is_empty() {
        return Err(Error::invalid("--methods must name at least one method"));
    }

    let results = run_methods(&cfg, &methods)?;
    let sweep = alpha_sweep(&results, &alphas)?;

    let mut written = Vec::new();
    for result in &results {
        let name = format!("triplets_{}.csv", result.method.name());
        written.push(write_text(&args.out, &name, &emit_csv(&result.eval_set()))?);
    }
    written.push(write_text(
        &args.out,
        "alpha_sweep.csv",
        &sweep_csv(&sweep),
    )?);

    let series: Vec<Series> = sweep
        .rows
        .iter()
        .map(|row| Series {
            label: row.method.clone(),
            points: row
                .scores
                .iter()
                .filter_map(|s| s.n_merci.map(|v| (s.alpha, v)))
                .collect(),
        })
        .filter(|s| s.points.len() >= 2)
        .collect();
    if !series.is_empty() {
        let chart = ChartConfig {
            x_label: "percentile".to_string(),
            y_label: "normalized score".to_string(),
            x_ref_line: Some(85.0),
            ..ChartConfig::default()
        };
        written.push(write_text(
            &args.out,
            "alpha_sweep.svg",
            &render_line_chart(&series, &chart)?,
        )?);
    }

    let mut meta = RunMeta::new(Some(args.seed));
    meta.set("methods", args.methods.trim());
    meta.set("runs", args.runs);
    meta.set(
        "alphas",
        alphas
            .iter()
            .map(f64::to_string)
            .collect::<Vec<_>>()
            .join(","),
    );
    meta.set("epochs", cfg.train.epochs);
    meta.set("learning_rate", cfg.train.learning_rate);
    meta.set("hidden", format!("{:?}", cfg.hidden));
    meta.set("dropout_p", cfg.dropout_p);
    written.push(write_json(&args.out, "run_meta.json", &meta)?);

    Ok(ReportBundle {
        meta,
        summary: None,
        bins: None,
        sweep: Some(sweep),
        written,
    })
}

fn parse_alpha_list(list: &str) -> Result<Vec<f64>> {
    let alphas = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::invalid(format!("cannot parse alpha `{s}`")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if alphas.is_empty() {
        return Err(Error::invalid("--alphas must name at least one percentile"));
    }
    for &a in &alphas {
        MetricConfig::new(a)?;
    }
    Ok(alphas)
}

/// Maps an error to the documented exit code: 2 for usage errors, 1 for
/// data and I/O errors.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::UnknownMethod { .. } => 2,
        Error::InvalidInput(msg) if msg.starts_with("--") => 2,
        _ => 1,
    }
}
