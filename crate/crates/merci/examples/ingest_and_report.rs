//! File pipeline: emit a triplet CSV, ingest it back, score it, and write
//! the report files the `merci eval` subcommand produces.
//!
//! Run with: cargo run -p merci --example ingest_and_report

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use merci::report::{bins_csv, eval_summary_csv, EvalSummary};
use merci::triplet::{emit_csv, ingest, TripletFile};
use merci::{EvalSet, MetricConfig, Sample};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples: Vec<Sample> = (0..500)
        .map(|_| {
            let y_true = rng.gen_range(0.0..3.0);
            let y_hat = y_true + rng.gen_range(-0.3..0.3);
            Sample {
                y_hat,
                sigma: rng.gen_range(0.05..0.5),
                y_true,
            }
        })
        .collect();
    let set = EvalSet::new(samples).unwrap();

    let dir = std::env::temp_dir().join("merci_report_example");
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("triplets.csv");
    std::fs::write(&csv_path, emit_csv(&set)).unwrap();

    // Round trip: the parsed set is bit-identical to the emitted one.
    let back = ingest(&TripletFile::new(&csv_path)).unwrap();
    assert_eq!(set, back);
    println!(
        "round-tripped {} rows through {}",
        back.len(),
        csv_path.display()
    );

    let cfg = MetricConfig::new(95.0).unwrap();
    let report = back.n_merci(&cfg);
    let bins = back.binned(&cfg, 0.5).unwrap();
    let summary = EvalSummary::new(back.len(), &cfg, &report, Some(&bins));

    std::fs::write(dir.join("report.csv"), eval_summary_csv(&summary)).unwrap();
    std::fs::write(dir.join("bins.csv"), bins_csv(&bins)).unwrap();
    println!("wrote {}", dir.join("report.csv").display());
    println!("wrote {}", dir.join("bins.csv").display());
    println!(
        "n-MeRCI = {:.4} over {} samples ({} bins scored)",
        report.n_merci.unwrap(),
        back.len(),
        bins.bins.iter().filter(|b| !b.skipped()).count()
    );
}
