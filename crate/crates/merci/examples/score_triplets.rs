//! Score a handful of (prediction, uncertainty, observation) triplets.
//!
//! Shows the two anchor points of the normalized score: an oracle whose
//! uncertainty equals its actual error scores 0, and a constant
//! (uninformative) uncertainty scores 1, regardless of scale.
//!
//! Run with: cargo run -p merci --example score_triplets

use merci::{EvalSet, MetricConfig};

fn print_report(label: &str, set: &EvalSet, cfg: &MetricConfig) {
    let r = set.n_merci(cfg);
    match r.n_merci {
        Some(score) => println!(
            "{label:28} alpha={:5.1} trim={:5} -> n-MeRCI {score:8.4}  (MAE {:.4}, rescale factor {:.4})",
            cfg.alpha, cfg.trim_mae, r.mae, r.lambda_alpha
        ),
        None => println!(
            "{label:28} alpha={:5.1} trim={:5} -> degenerate (no finite score)",
            cfg.alpha, cfg.trim_mae
        ),
    }
}

fn main() {
    // Predictions of some quantity with per-point uncertainties.
    let y_hat: [f64; 6] = [2.1, 3.9, 4.4, 7.2, 10.5, 1.0];
    let y_true: [f64; 6] = [2.0, 4.0, 5.0, 7.0, 9.0, 1.3];

    // An estimator that tracks its own errors well...
    let good_sigma = [0.15, 0.12, 0.7, 0.25, 1.7, 0.35];
    // ...one that is uninformative...
    let flat_sigma = [0.8; 6];
    // ...and the ideal: sigma exactly equal to the absolute error.
    let oracle_sigma: Vec<f64> = y_hat
        .iter()
        .zip(&y_true)
        .map(|(p, t)| (p - t).abs())
        .collect();

    let good = EvalSet::from_parts(&y_hat, &good_sigma, &y_true).unwrap();
    let flat = EvalSet::from_parts(&y_hat, &flat_sigma, &y_true).unwrap();
    let oracle = EvalSet::from_parts(&y_hat, &oracle_sigma, &y_true).unwrap();

    let literal = MetricConfig::new(100.0).unwrap();
    println!("-- full percentile (alpha = 100) --");
    print_report("tracking estimator", &good, &literal);
    print_report("constant estimator", &flat, &literal);
    print_report("oracle", &oracle, &literal);

    // Robust variant: ignore the worst ~17% of points (1 of 6).
    let robust = MetricConfig::new(85.0).unwrap();
    println!("-- robust percentile (alpha = 85, trimmed MAE) --");
    print_report("tracking estimator", &good, &robust);
    print_report("constant estimator", &flat, &robust);

    // Scale invariance: multiplying every sigma by 1000 changes nothing.
    let scaled = EvalSet::from_parts(
        &y_hat,
        &good_sigma.iter().map(|s| s * 1000.0).collect::<Vec<_>>(),
        &y_true,
    )
    .unwrap();
    println!("-- scale invariance --");
    print_report("tracking estimator x1000", &scaled, &literal);
}
