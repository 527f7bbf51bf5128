//! Score uncertainty locally per ground-truth interval.
//!
//! Useful when accuracy depends on the target magnitude (e.g. depth maps
//! where error grows with distance): each bin gets its own normalized
//! score, and bins too small to score are flagged rather than merged.
//!
//! Run with: cargo run -p merci --example binned_evaluation

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use merci::{EvalSet, MetricConfig, Sample};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // Synthetic "range sensor": noise grows with the true value, and the
    // estimator's sigma tracks that growth only loosely.
    let samples: Vec<Sample> = (0..2000)
        .map(|_| {
            let y_true = rng.gen_range(0.0..5.0);
            let noise = 0.02 + 0.05 * y_true;
            let y_hat = y_true + noise * rng.gen_range(-2.0..2.0);
            let sigma = noise * rng.gen_range(0.5..1.5);
            Sample {
                y_hat,
                sigma,
                y_true,
            }
        })
        .collect();
    let set = EvalSet::new(samples).unwrap();

    let cfg = MetricConfig::new(95.0).unwrap();
    let binned = set.binned(&cfg, 0.5).unwrap();

    println!("bin              n     MAE     n-MeRCI");
    for bin in &binned.bins {
        match &bin.report {
            Some(r) => println!(
                "[{:4.1}, {:4.1})  {:4}  {:7.4}  {}",
                bin.low,
                bin.high,
                bin.n,
                r.mae,
                r.n_merci
                    .map(|v| format!("{v:8.4}"))
                    .unwrap_or_else(|| "degenerate".to_string()),
            ),
            None => println!(
                "[{:4.1}, {:4.1})  {:4}  skipped (fewer than 2 samples)",
                bin.low, bin.high, bin.n
            ),
        }
    }
    println!(
        "averages over scored bins: MAE {:.4}, n-MeRCI {:.4}",
        binned.mean_mae.unwrap(),
        binned.mean_n_merci.unwrap()
    );
    println!(
        "whole set: MAE {:.4}, n-MeRCI {:.4}",
        set.n_merci(&cfg).mae,
        set.n_merci(&cfg).n_merci.unwrap()
    );
}
