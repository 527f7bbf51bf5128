//! Contrast the normalized score with the classical baselines:
//! sparsification curves (ranking-only) and Gaussian NLPD (scale-sensitive).
//!
//! Run with: cargo run -p merci --example baseline_comparison

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use merci::baselines::{ause, nlpd, sparsification};
use merci::{EvalSet, MetricConfig};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 400;
    let y_true: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let noise: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..2.0)).collect();
    let y_hat: Vec<f64> = y_true
        .iter()
        .zip(&noise)
        .map(|(t, s)| t + s * rng.gen_range(-1.5..1.5))
        .collect();
    // Sigma correlates with the noise level but is systematically 3x too small.
    let sigma: Vec<f64> = noise.iter().map(|s| s / 3.0).collect();

    let set = EvalSet::from_parts(&y_hat, &sigma, &y_true).unwrap();
    let cfg = MetricConfig::new(95.0).unwrap();

    let curve = sparsification(&set, 10).unwrap();
    println!("fraction removed -> MAE remaining (estimator vs oracle)");
    for ((f, m), o) in curve
        .fractions_removed
        .iter()
        .zip(&curve.mae_remaining)
        .zip(&curve.oracle_mae_remaining)
    {
        println!("  {f:4.2} -> {m:7.4} vs {o:7.4}");
    }
    println!("area between curves (AUSE): {:.5}", ause(&curve));
    println!("NLPD: {:.4}", nlpd(&set).unwrap());
    println!("n-MeRCI: {:.4}", set.n_merci(&cfg).n_merci.unwrap());

    // Rescaling every sigma moves NLPD but neither AUSE nor n-MeRCI: the
    // first is scale-sensitive, the others only see the ranking/shape.
    let rescaled = EvalSet::from_parts(
        &y_hat,
        &sigma.iter().map(|s| s * 10.0).collect::<Vec<_>>(),
        &y_true,
    )
    .unwrap();
    println!("after multiplying every sigma by 10:");
    println!("  NLPD: {:.4}", nlpd(&rescaled).unwrap());
    println!("  n-MeRCI: {:.4}", rescaled.n_merci(&cfg).n_merci.unwrap());
}
