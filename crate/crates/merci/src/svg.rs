//! Standalone SVG line charts, written directly without a plotting
//! framework so output bytes are a pure function of the input.

use crate::error::{Error, Result};

/// One labeled polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Chart geometry and annotations.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartConfig {
    pub width: f64,
    pub height: f64,
    pub x_label: String,
    pub y_label: String,
    /// Draws a red vertical reference line at this x.
    pub x_ref_line: Option<f64>,
}

impl Default for ChartConfig {
    fn default() -> Self {
        ChartConfig {
            width: 640.0,
            height: 440.0,
            x_label: String::new(),
            y_label: String::new(),
            x_ref_line: None,
        }
    }
}

const MARGIN_LEFT: f64 = 62.0;
const MARGIN_RIGHT: f64 = 132.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 52.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

/// Pixel mapping from data space to the plot area. The data bounding box
/// maps exactly onto the plot rectangle: (x_min, y_min) lands on the
/// lower-left corner.
#[derive(Debug, Clone, Copy)]
pub struct PlotArea {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
}

impl PlotArea {
    pub fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x_min) / (self.x_max - self.x_min) * self.width
    }

    pub fn py(&self, y: f64) -> f64 {
        self.top + (self.y_max - y) / (self.y_max - self.y_min) * self.height
    }
}

/// Computes the plot-area mapping `render_line_chart` will use for the
/// given data; exposed so coordinate placement can be verified.
pub fn plot_area(series: &[Series], cfg: &ChartConfig) -> Result<PlotArea> {
    validate(series)?;
    let xs = series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let ys = series.iter().flat_map(|s| s.points.iter().map(|p| p.1));
    let (mut x_min, mut x_max) = min_max(xs);
    let (mut y_min, mut y_max) = min_max(ys);
    if let Some(r) = cfg.x_ref_line {
        x_min = x_min.min(r);
        x_max = x_max.max(r);
    }
    if x_min == x_max {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if y_min == y_max {
        y_min -= 0.5;
        y_max += 0.5;
    }
    Ok(PlotArea {
        x_min,
        x_max,
        y_min,
        y_max,
        left: MARGIN_LEFT,
        top: MARGIN_TOP,
        width: cfg.width - MARGIN_LEFT - MARGIN_RIGHT,
        height: cfg.height - MARGIN_TOP - MARGIN_BOTTOM,
    })
}

fn validate(series: &[Series]) -> Result<()> {
    if series.is_empty() {
        return Err(Error::invalid("chart needs at least one series"));
    }
    for s in series {
        if s.points.len() < 2 {
            return Err(Error::invalid(format!(
                "series `{}` needs at least 2 points",
                s.label
            )));
        }
        if s.points
            .iter()
            .any(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(Error::invalid(format!(
                "series `{}` contains non-finite coordinates",
                s.label
            )));
        }
    }
    Ok(())
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

/// Renders the series as an SVG 1.1 document with linear axes, tick labels,
/// and a legend. Output bytes are deterministic for identical input.
pub fn render_line_chart(series: &[Series], cfg: &ChartConfig) -> Result<String> {
    let area = plot_area(series, cfg)?;
    let mut out = String::with_capacity(8 * 1024);

    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n",
        cfg.width, cfg.height, cfg.width, cfg.height
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{:.0}\" height=\"{:.0}\" fill=\"white\"/>\n",
        cfg.width, cfg.height
    ));

    // Grid and tick labels.
    for (tick, label) in ticks(area.x_min, area.x_max) {
        let x = area.px(tick);
        out.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            area.top,
            area.top + area.height
        ));
        out.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{label}</text>\n",
            area.top + area.height + 16.0
        ));
    }
    for (tick, label) in ticks(area.y_min, area.y_max) {
        let y = area.py(tick);
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            area.left,
            area.left + area.width
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{label}</text>\n",
            area.left - 6.0,
            y + 4.0
        ));
    }

    // Optional vertical reference line.
    if let Some(r) = cfg.x_ref_line {
        let x = area.px(r);
        out.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"red\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n",
            area.top,
            area.top + area.height
        ));
    }

    // Series polylines.
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        for (j, &(x, y)) in s.points.iter().enumerate() {
            if j > 0 {
                points.push(' ');
            }
            points.push_str(&format!("{:.2},{:.2}", area.px(x), area.py(y)));
        }
        out.push_str(&format!(
            "<polyline points=\"{points}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\"/>\n"
        ));
    }

    // Plot border.
    out.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
        area.left, area.top, area.width, area.height
    ));

    // Axis labels.
    if !cfg.x_label.is_empty() {
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
            area.left + area.width / 2.0,
            cfg.height - 12.0,
            escape(&cfg.x_label)
        ));
    }
    if !cfg.y_label.is_empty() {
        out.push_str(&format!(
            "<text x=\"16\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">{}</text>\n",
            area.top + area.height / 2.0,
            area.top + area.height / 2.0,
            escape(&cfg.y_label)
        ));
    }

    // Legend.
    let legend_x = area.left + area.width + 14.0;
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = area.top + 14.0 + 18.0 * i as f64;
        out.push_str(&format!(
            "<line x1=\"{legend_x:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            legend_x + 20.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            legend_x + 26.0,
            y + 4.0,
            escape(&s.label)
        ));
    }

    out.push_str("</svg>\n");
    Ok(out)
}

/// Tick positions at a 1/2/5 step covering [lo, hi], with printed labels.
fn ticks(lo: f64, hi: f64) -> Vec<(f64, String)> {
    let range = hi - lo;
    let raw = range / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| range / s <= 5.5)
        .unwrap_or(10.0 * mag);
    let decimals = if step >= 1.0 {
        0
    } else {
        (-step.log10().floor()) as usize
    };
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last)
        .map(|k| {
            let v = k as f64 * step;
            (v, format!("{v:.decimals$}"))
        })
        .collect()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(points: &[(f64, f64)]) -> Series {
        Series {
            label: "s".to_string(),
            points: points.to_vec(),
        }
    }

    #[test]
    fn two_point_series_renders_one_polyline() {
        let svg = render_line_chart(
            &[series(&[(0.0, 0.0), (1.0, 1.0)])],
            &ChartConfig::default(),
        )
        .unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.starts_with("<svg xmlns"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn bytes_are_deterministic() {
        let s = [
            series(&[(0.0, 1.0), (2.0, 3.0), (4.0, 2.0)]),
            Series {
                label: "other".to_string(),
                points: vec![(0.0, 2.0), (4.0, 0.5)],
            },
        ];
        let cfg = ChartConfig {
            x_ref_line: Some(2.5),
            ..ChartConfig::default()
        };
        assert_eq!(
            render_line_chart(&s, &cfg).unwrap(),
            render_line_chart(&s, &cfg).unwrap()
        );
    }

    #[test]
    fn empty_or_short_series_rejected() {
        assert!(render_line_chart(&[], &ChartConfig::default()).is_err());
        assert!(render_line_chart(&[series(&[(0.0, 0.0)])], &ChartConfig::default()).is_err());
    }

    #[test]
    fn data_min_maps_to_lower_left_corner() {
        let s = [series(&[(3.0, -2.0), (9.0, 7.0), (5.0, 1.0)])];
        let cfg = ChartConfig::default();
        let area = plot_area(&s, &cfg).unwrap();
        // Affine check by hand: x=3 is the minimum, y=-2 is the minimum.
        assert!((area.px(3.0) - area.left).abs() < 0.5);
        assert!((area.py(-2.0) - (area.top + area.height)).abs() < 0.5);
        assert!((area.px(9.0) - (area.left + area.width)).abs() < 0.5);
        assert!((area.py(7.0) - area.top).abs() < 0.5);
        // Midpoint of x goes to the middle of the plot.
        let mid = area.left + area.width / 2.0;
        assert!((area.px(6.0) - mid).abs() < 0.5);
    }

    #[test]
    fn reference_line_is_drawn_in_red() {
        let cfg = ChartConfig {
            x_ref_line: Some(0.5),
            ..ChartConfig::default()
        };
        let svg = render_line_chart(&[series(&[(0.0, 0.0), (1.0, 1.0)])], &cfg).unwrap();
        assert!(svg.contains("stroke=\"red\""));
    }

    #[test]
    fn labels_are_escaped() {
        let cfg = ChartConfig {
            x_label: "a < b".to_string(),
            ..ChartConfig::default()
        };
        let svg = render_line_chart(&[series(&[(0.0, 0.0), (1.0, 1.0)])], &cfg).unwrap();
        assert!(svg.contains("a &lt; b"));
    }

    #[test]
    fn ticks_cover_unit_range() {
        let t = ticks(0.0, 1.0);
        assert!(t.len() >= 3);
        assert_eq!(t[0].1, "0.0");
        assert!(t.iter().all(|(v, _)| (0.0..=1.0).contains(v)));
    }
}
