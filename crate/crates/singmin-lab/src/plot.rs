//! Minimal self-contained SVG line plots.
//!
//! Plots are pure functions of the data series handed in, so a plot can be
//! re-emitted offline from the CSV it accompanies.

/// One polyline with optional per-point confidence whiskers.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// Optional `(lo, hi)` band per point.
    pub band: Option<Vec<(f64, f64)>>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 36.0;
const MARGIN_B: f64 = 52.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

struct Axis {
    min: f64,
    max: f64,
    log: bool,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>, log: bool) -> Axis {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            if !v.is_finite() || (log && v <= 0.0) {
                continue;
            }
            min = min.min(v);
            max = max.max(v);
        }
        if !min.is_finite() {
            min = if log { 0.1 } else { 0.0 };
            max = 1.0;
        }
        if min == max {
            if log {
                min /= 2.0;
                max *= 2.0;
            } else {
                min -= 0.5;
                max += 0.5;
            }
        }
        Axis { min, max, log }
    }

    fn coord(&self, v: f64) -> Option<f64> {
        if !v.is_finite() || (self.log && v <= 0.0) {
            return None;
        }
        let (v, lo, hi) = if self.log {
            (v.log10(), self.min.log10(), self.max.log10())
        } else {
            (v, self.min, self.max)
        };
        Some((v - lo) / (hi - lo))
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let lo = self.min.log10().floor() as i32;
            let hi = self.max.log10().ceil() as i32;
            (lo..=hi)
                .map(|d| 10f64.powi(d))
                .filter(|&t| t >= self.min / 1.01 && t <= self.max * 1.01)
                .collect()
        } else {
            let span = self.max - self.min;
            (0..=4).map(|i| self.min + span * i as f64 / 4.0).collect()
        }
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (0.01..10_000.0).contains(&a) {
        format!("{v:.4}")
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    } else {
        format!("{v:.1e}")
    }
}

/// Render labeled series to a standalone SVG document.
pub fn line_plot(
    title: &str,
    x_label: &str,
    y_label: &str,
    log_x: bool,
    log_y: bool,
    series: &[Series],
) -> String {
    let xs = Axis::new(
        series.iter().flat_map(|s| s.points.iter().map(|p| p.0)),
        log_x,
    );
    let ys = Axis::new(
        series.iter().flat_map(|s| {
            s.points
                .iter()
                .map(|p| p.1)
                .chain(s.band.iter().flatten().flat_map(|&(lo, hi)| [lo, hi]))
        }),
        log_y,
    );
    let px = |fx: f64| MARGIN_L + fx * (WIDTH - MARGIN_L - MARGIN_R);
    let py = |fy: f64| HEIGHT - MARGIN_B - fy * (HEIGHT - MARGIN_T - MARGIN_B);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"monospace\" font-size=\"12\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        WIDTH / 2.0,
        esc(title)
    ));

    // Frame.
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333\"/>\n",
        WIDTH - MARGIN_L - MARGIN_R,
        HEIGHT - MARGIN_T - MARGIN_B
    ));

    for t in xs.ticks() {
        if let Some(fx) = xs.coord(t) {
            let x = px(fx);
            svg.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{}\" x2=\"{x:.1}\" y2=\"{}\" stroke=\"#ddd\"/>\n",
                MARGIN_T,
                HEIGHT - MARGIN_B
            ));
            svg.push_str(&format!(
                "<text x=\"{x:.1}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                HEIGHT - MARGIN_B + 16.0,
                tick_label(t)
            ));
        }
    }
    for t in ys.ticks() {
        if let Some(fy) = ys.coord(t) {
            let y = py(fy);
            svg.push_str(&format!(
                "<line x1=\"{MARGIN_L}\" y1=\"{y:.1}\" x2=\"{}\" y2=\"{y:.1}\" stroke=\"#ddd\"/>\n",
                WIDTH - MARGIN_R
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>\n",
                MARGIN_L - 6.0,
                y + 4.0,
                tick_label(t)
            ));
        }
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        HEIGHT - 12.0,
        esc(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        esc(y_label)
    ));

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if let Some(band) = &s.band {
            for (&(x, _), &(lo, hi)) in s.points.iter().zip(band) {
                if let (Some(fx), Some(flo), Some(fhi)) = (xs.coord(x), ys.coord(lo), ys.coord(hi))
                {
                    svg.push_str(&format!(
                        "<line x1=\"{0:.1}\" y1=\"{1:.1}\" x2=\"{0:.1}\" y2=\"{2:.1}\" stroke=\"{color}\" stroke-opacity=\"0.45\"/>\n",
                        px(fx),
                        py(flo),
                        py(fhi)
                    ));
                }
            }
        }
        let path: Vec<String> = s
            .points
            .iter()
            .filter_map(|&(x, y)| match (xs.coord(x), ys.coord(y)) {
                (Some(fx), Some(fy)) => Some(format!("{:.1},{:.1}", px(fx), py(fy))),
                _ => None,
            })
            .collect();
        if path.len() > 1 {
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                path.join(" ")
            ));
        }
        for p in &path {
            let (x, y) = p.split_once(',').expect("formatted above");
            svg.push_str(&format!(
                "<circle cx=\"{x}\" cy=\"{y}\" r=\"2.4\" fill=\"{color}\"/>\n"
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" fill=\"{color}\">{}</text>\n",
            MARGIN_L + 8.0,
            MARGIN_T + 16.0 + 14.0 * i as f64,
            esc(&s.label)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
