//! Minimal hand-rolled polyline charts: fixed viewBox, linear axes, a small
//! color palette and stroke-style cycling. Enough to eyeball sweep envelopes
//! and potential profiles; not a plotting library.

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 20.0;
const MARGIN_B: f64 = 50.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineStyle {
    Solid,
    Dashed,
    Dotted,
}

impl LineStyle {
    pub fn cycle(i: usize) -> LineStyle {
        match i % 3 {
            0 => LineStyle::Dashed,
            1 => LineStyle::Solid,
            _ => LineStyle::Dotted,
        }
    }

    fn dash_attr(self) -> &'static str {
        match self {
            LineStyle::Solid => "",
            LineStyle::Dashed => " stroke-dasharray=\"8,5\"",
            LineStyle::Dotted => " stroke-dasharray=\"2,4\"",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Series {
    pub points: Vec<(f64, f64)>,
    pub color: usize,
    pub style: LineStyle,
    pub width: f64,
    pub label: String,
}

fn nice_label(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 0.01 && v.abs() < 10000.0 {
        format!("{v:.4}")
    } else {
        format!("{v:.3e}")
    }
}

/// Render polyline series on linear axes. `vlines` draws thin vertical
/// marker lines at the given x positions (used to mark one flux period).
pub fn line_chart(series: &[Series], x_label: &str, y_label: &str, vlines: &[f64]) -> String {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for s in series {
        for &(x, y) in &s.points {
            if x.is_finite() && y.is_finite() {
                xs.push(x);
                ys.push(y);
            }
        }
    }
    let (x0, x1) = extent(&xs);
    let (y0, y1) = extent(&ys);
    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let sx = move |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * plot_w;
    let sy = move |y: f64| MARGIN_T + (1.0 - (y - y0) / (y1 - y0)) * plot_h;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));

    // axes box and ticks
    out.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" \
         fill=\"none\" stroke=\"black\"/>\n",
        MARGIN_L, MARGIN_T
    ));
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let xv = x0 + t * (x1 - x0);
        let yv = y0 + t * (y1 - y0);
        let xp = sx(xv);
        let yp = sy(yv);
        out.push_str(&format!(
            "<line x1=\"{xp:.2}\" y1=\"{:.2}\" x2=\"{xp:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            HEIGHT - MARGIN_B,
            HEIGHT - MARGIN_B + 5.0
        ));
        out.push_str(&format!(
            "<text x=\"{xp:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            HEIGHT - MARGIN_B + 18.0,
            nice_label(xv)
        ));
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{yp:.2}\" x2=\"{:.2}\" y2=\"{yp:.2}\" stroke=\"black\"/>\n",
            MARGIN_L - 5.0,
            MARGIN_L
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            MARGIN_L - 8.0,
            yp + 4.0,
            nice_label(yv)
        ));
    }
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{x_label}</text>\n",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 8.0
    ));
    out.push_str(&format!(
        "<text x=\"14\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {:.2})\">{y_label}</text>\n",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0
    ));

    for &xv in vlines {
        if xv >= x0 && xv <= x1 {
            let xp = sx(xv);
            out.push_str(&format!(
                "<line x1=\"{xp:.2}\" y1=\"{:.2}\" x2=\"{xp:.2}\" y2=\"{:.2}\" \
                 stroke=\"#999999\" stroke-dasharray=\"3,3\"/>\n",
                MARGIN_T,
                HEIGHT - MARGIN_B
            ));
        }
    }

    for s in series {
        if s.points.len() < 2 {
            continue;
        }
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{:.1}\"{} points=\"{}\"/>\n",
            PALETTE[s.color % PALETTE.len()],
            s.width,
            s.style.dash_attr(),
            pts.join(" ")
        ));
    }

    // legend, top-right corner
    for (i, s) in series.iter().enumerate().filter(|(_, s)| !s.label.is_empty()) {
        let y = MARGIN_T + 16.0 + 16.0 * i as f64;
        let x = WIDTH - MARGIN_R - 130.0;
        out.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"{}\" \
             stroke-width=\"{:.1}\"{}/>\n",
            x + 26.0,
            PALETTE[s.color % PALETTE.len()],
            s.width,
            s.style.dash_attr()
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>\n",
            x + 32.0,
            y + 4.0,
            s.label
        ));
    }

    out.push_str("</svg>\n");
    out
}

fn extent(values: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}
