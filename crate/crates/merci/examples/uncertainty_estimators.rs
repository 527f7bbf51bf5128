//! Build all six uncertainty estimators on one toy dataset and compare
//! their per-point uncertainties and normalized scores.
//!
//! Run with: cargo run -p merci --example uncertainty_estimators

use merci::ensemble::{
    bagging, learned_error, mc_dropout, multi_epochs, multi_inits, multi_networks, Predictor,
    TrainedNet,
};
use merci::nn::{MlpSpec, TrainConfig};
use merci::toy::{generate_toy, ToyConfig};
use merci::{EvalSet, MetricConfig, Sample};

fn main() {
    // A reduced setup so every estimator trains in a couple of seconds.
    let toy = ToyConfig {
        members: 8,
        mcd_samples: 30,
        snapshot_window: 10,
        train: TrainConfig {
            epochs: 400,
            learning_rate: 0.07,
        },
        ..ToyConfig::default()
    };
    let (data, test) = generate_toy(&toy, 123).unwrap();
    let spec = |seed: u64| MlpSpec::new(1, toy.hidden.clone(), toy.dropout_p, seed);
    let seeds: Vec<u64> = (0..toy.members as u64).map(|i| 1000 + i).collect();

    let base = TrainedNet::fit(&spec(1), &data, &toy.train).unwrap();
    println!("single stochastic-pass summary at x = 0.5:");
    let raw = mc_dropout(&base.mlp, &[0.5], 10, 7).unwrap();
    println!(
        "  raw-network dropout sampling: mean {:.3}, std {:.3}",
        raw.y_hat, raw.sigma
    );

    let estimators: Vec<(&str, Predictor)> = vec![
        (
            "mcd",
            Predictor::McDropout {
                net: base.clone(),
                t: toy.mcd_samples,
                seed: 7,
            },
        ),
        (
            "mi",
            multi_inits(&spec(0), &data, &toy.train, &seeds).unwrap(),
        ),
        (
            "bagging",
            bagging(&spec(0), &data, &toy.train, &seeds).unwrap(),
        ),
        (
            "me",
            multi_epochs(&spec(2), &data, &toy.train, toy.snapshot_window).unwrap(),
        ),
        (
            "mn",
            multi_networks(
                &[
                    spec(3),
                    MlpSpec::new(1, vec![50], toy.dropout_p, 4),
                    MlpSpec::new(1, vec![100, 100], toy.dropout_p, 5),
                ],
                &data,
                &toy.train,
            )
            .unwrap(),
        ),
        (
            "le",
            learned_error(base, &spec(6), &data, &toy.train).unwrap(),
        ),
    ];

    println!("\nper-point uncertainty (x: inside range, near outlier band, extrapolated):");
    println!("method    sigma(0.0)  sigma(-1.8)  sigma(5.5)   n-MeRCI@85");
    let cfg = MetricConfig::new(85.0).unwrap().with_trim_mae(false);
    for (name, predictor) in &estimators {
        let s0 = predictor.predict(&[0.0]).unwrap().sigma;
        let s1 = predictor.predict(&[-1.8]).unwrap().sigma;
        let s2 = predictor.predict(&[5.5]).unwrap().sigma;
        let samples: Vec<Sample> = test
            .iter()
            .map(|&(x, y_true)| {
                let p = predictor.predict(&[x]).unwrap();
                Sample {
                    y_hat: p.y_hat,
                    sigma: p.sigma,
                    y_true,
                }
            })
            .collect();
        let report = EvalSet::new(samples).unwrap().n_merci(&cfg);
        println!(
            "{name:8} {s0:10.3} {s1:12.3} {s2:11.3}   {}",
            report
                .n_merci
                .map(|v| format!("{v:.3}"))
                .unwrap_or_else(|| "degenerate".to_string())
        );
    }
}
