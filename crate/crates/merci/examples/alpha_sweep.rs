//! Run a reduced toy benchmark and print the score table across
//! percentiles, including the injected oracle/constant baselines that pin
//! the scale at 0 and 1.
//!
//! Run with: cargo run -p merci --example alpha_sweep

use merci::nn::TrainConfig;
use merci::toy::{alpha_sweep, run_methods, ToyConfig, ToyMethod};

fn main() {
    let cfg = ToyConfig {
        n_runs: 5,
        members: 8,
        train: TrainConfig {
            epochs: 500,
            learning_rate: 0.07,
        },
        alphas: vec![25.0, 50.0, 70.0, 85.0, 95.0, 100.0],
        ..ToyConfig::default()
    };
    let methods: Vec<ToyMethod> = ["mi", "bagging", "mcd", "me", "oracle", "constant"]
        .iter()
        .map(|name| ToyMethod::parse(name, &cfg).unwrap())
        .collect();

    let results = run_methods(&cfg, &methods).unwrap();
    let table = alpha_sweep(&results, &cfg.alphas).unwrap();

    print!("{:10}", "method");
    for alpha in &table.alphas {
        print!("  a={alpha:<6}");
    }
    println!();
    for row in &table.rows {
        print!("{:10}", row.method);
        for score in &row.scores {
            match score.n_merci {
                Some(v) => print!("  {v:<8.3}"),
                None => print!("  {:<8}", "degen"),
            }
        }
        println!();
    }
    println!("\n(lower is better; 0 matches the oracle, 1 matches a constant)");
}
