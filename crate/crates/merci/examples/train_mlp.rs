//! Train the small feed-forward network on noisy cubic data and check the
//! analytic gradient against central finite differences.
//!
//! Run with: cargo run -p merci --example train_mlp

use merci::ensemble::TrainedNet;
use merci::nn::{Dataset, Mlp, MlpSpec, TrainConfig};
use merci::toy::{generate_toy, ToyConfig};

fn main() {
    let toy = ToyConfig::default();
    let (data, test) = generate_toy(&toy, 42).unwrap();

    // Gradient check on a small net before training the real one.
    let check_spec = MlpSpec::new(1, vec![5], 0.0, 9);
    let net = Mlp::init(&check_spec).unwrap();
    let small = Dataset::from_1d(&[-1.0, 0.2, 0.8], &[0.5, -0.3, 1.1]).unwrap();
    let grads = net.grad(&small).unwrap();
    let h = 1e-5;
    let mut worst = 0.0f64;
    for l in 0..net.layers().len() {
        for p in 0..net.layers()[l].weights().len() {
            let mut plus = net.clone();
            plus.layers_mut()[l].weights_mut()[p] += h;
            let mut minus = net.clone();
            minus.layers_mut()[l].weights_mut()[p] -= h;
            let numeric = (plus.mse(&small).unwrap() - minus.mse(&small).unwrap()) / (2.0 * h);
            let analytic = grads.weights[l][p];
            let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1e-12);
            worst = worst.max(rel);
        }
    }
    println!("worst relative gradient error vs finite differences: {worst:.2e}");

    // Train with the toy defaults (z-normalized inputs/targets inside).
    let spec = MlpSpec::new(1, toy.hidden.clone(), toy.dropout_p, 42);
    let cfg = TrainConfig {
        epochs: toy.train.epochs,
        learning_rate: toy.train.learning_rate,
    };
    let trained = TrainedNet::fit(&spec, &data, &cfg).unwrap();

    let mut inner = Vec::new();
    let mut outer = Vec::new();
    for &(x, y_true) in &test {
        let err = (trained.predict(&[x]).unwrap() - y_true).abs();
        if (-4.0..=4.0).contains(&x) {
            inner.push(err);
        } else {
            outer.push(err);
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    println!(
        "test MAE inside the training range: {:.2} (noise std {}), outside: {:.2}",
        mean(&inner),
        toy.noise_std,
        mean(&outer)
    );
    for x in [-3.0, 0.0, 2.0, 5.0] {
        println!(
            "  f({x:4.1}) = {:8.2}   (true {:8.2})",
            trained.predict(&[x]).unwrap(),
            x * x * x
        );
    }
}
