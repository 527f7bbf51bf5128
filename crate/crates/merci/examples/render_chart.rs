//! Render a multi-series line chart to standalone SVG.
//!
//! Run with: cargo run -p merci --example render_chart

use merci::svg::{render_line_chart, ChartConfig, Series};

fn main() {
    let alphas: Vec<f64> = (1..=20).map(|i| 5.0 * i as f64).collect();
    let curve = |scale: f64, floor: f64| -> Vec<(f64, f64)> {
        alphas
            .iter()
            .map(|&a| (a, floor + scale * (100.0 - a) / 100.0 + 0.002 * a))
            .collect()
    };
    let series = [
        Series {
            label: "estimator A".to_string(),
            points: curve(0.6, 0.15),
        },
        Series {
            label: "estimator B".to_string(),
            points: curve(1.2, 0.4),
        },
        Series {
            label: "constant".to_string(),
            points: alphas.iter().map(|&a| (a, 1.0)).collect(),
        },
    ];
    let cfg = ChartConfig {
        x_label: "percentile".to_string(),
        y_label: "normalized score".to_string(),
        x_ref_line: Some(85.0),
        ..ChartConfig::default()
    };
    let svg = render_line_chart(&series, &cfg).unwrap();
    let path = std::env::temp_dir().join("merci_chart.svg");
    std::fs::write(&path, &svg).unwrap();
    println!("wrote {} ({} bytes)", path.display(), svg.len());
}
