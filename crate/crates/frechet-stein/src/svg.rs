//! Hand-emitted SVG log-log charts; no plotting dependency, fully
//! deterministic output.

use std::fmt::Write;

pub struct Series<'a> {
    pub name: &'a str,
    pub color: &'a str,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

/// Render a log-log chart of the series. Points with a nonpositive
/// coordinate cannot be drawn on a log scale and are dropped.
pub fn log_log_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{:.1}\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"15\">{}</text>\n",
        WIDTH / 2.0,
        escape(title),
    );

    let drawable: Vec<(usize, Vec<(f64, f64)>)> = series
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let pts: Vec<(f64, f64)> = s
                .points
                .iter()
                .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
                .map(|&(x, y)| (x.log10(), y.log10()))
                .collect();
            (i, pts)
        })
        .collect();

    let all: Vec<(f64, f64)> = drawable.iter().flat_map(|(_, p)| p.iter().copied()).collect();
    if all.is_empty() {
        let _ = write!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"13\">no positive data to draw</text>\n</svg>\n",
            WIDTH / 2.0,
            HEIGHT / 2.0,
        );
        return svg;
    }

    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &all {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if x_max - x_min < 1e-9 {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if y_max - y_min < 1e-9 {
        y_min -= 0.5;
        y_max += 0.5;
    }

    let px = |lx: f64| MARGIN_L + (lx - x_min) / (x_max - x_min) * (WIDTH - MARGIN_L - MARGIN_R);
    let py = |ly: f64| {
        HEIGHT - MARGIN_B - (ly - y_min) / (y_max - y_min) * (HEIGHT - MARGIN_T - MARGIN_B)
    };

    // axes
    let _ = write!(
        svg,
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" \
         stroke=\"black\" stroke-width=\"1\"/>\n",
        WIDTH - MARGIN_L - MARGIN_R,
        HEIGHT - MARGIN_T - MARGIN_B,
    );

    // decade ticks and gridlines
    for d in x_min.floor() as i64..=x_max.ceil() as i64 {
        let lx = d as f64;
        if lx < x_min - 1e-9 || lx > x_max + 1e-9 {
            continue;
        }
        let x = px(lx);
        let _ = write!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{MARGIN_T}\" x2=\"{x:.2}\" y2=\"{:.1}\" stroke=\"#ddd\" \
             stroke-width=\"0.7\"/>\n\
             <text x=\"{x:.2}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"11\">1e{d}</text>\n",
            HEIGHT - MARGIN_B,
            HEIGHT - MARGIN_B + 16.0,
        );
    }
    for d in y_min.floor() as i64..=y_max.ceil() as i64 {
        let ly = d as f64;
        if ly < y_min - 1e-9 || ly > y_max + 1e-9 {
            continue;
        }
        let y = py(ly);
        let _ = write!(
            svg,
            "<line x1=\"{MARGIN_L}\" y1=\"{y:.2}\" x2=\"{:.1}\" y2=\"{y:.2}\" stroke=\"#ddd\" \
             stroke-width=\"0.7\"/>\n\
             <text x=\"{:.1}\" y=\"{y:.2}\" text-anchor=\"end\" dominant-baseline=\"middle\" \
             font-family=\"sans-serif\" font-size=\"11\">1e{d}</text>\n",
            WIDTH - MARGIN_R,
            MARGIN_L - 6.0,
        );
    }

    let _ = write!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\">{}</text>\n\
         <text x=\"16\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\" transform=\"rotate(-90 16 {:.1})\">{}</text>\n",
        MARGIN_L + (WIDTH - MARGIN_L - MARGIN_R) / 2.0,
        HEIGHT - 12.0,
        escape(x_label),
        MARGIN_T + (HEIGHT - MARGIN_T - MARGIN_B) / 2.0,
        MARGIN_T + (HEIGHT - MARGIN_T - MARGIN_B) / 2.0,
        escape(y_label),
    );

    // polylines + markers
    for (i, pts) in &drawable {
        if pts.is_empty() {
            continue;
        }
        let s = &series[*i];
        let coords: Vec<String> =
            pts.iter().map(|&(lx, ly)| format!("{:.2},{:.2}", px(lx), py(ly))).collect();
        let _ = write!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\"/>\n",
            coords.join(" "),
            s.color,
        );
        for &(lx, ly) in pts {
            let _ = write!(
                svg,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.6\" fill=\"{}\"/>\n",
                px(lx),
                py(ly),
                s.color,
            );
        }
    }

    // legend
    for (slot, (i, pts)) in drawable.iter().filter(|(_, p)| !p.is_empty()).enumerate() {
        let s = &series[*i];
        let y = MARGIN_T + 14.0 + 16.0 * slot as f64;
        let x = WIDTH - MARGIN_R - 150.0;
        let _ = write!(
            svg,
            "<line x1=\"{x:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"{}\" \
             stroke-width=\"2\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             dominant-baseline=\"middle\">{} ({} pts)</text>\n",
            x + 22.0,
            s.color,
            x + 28.0,
            y,
            escape(s.name),
            pts.len(),
        );
    }

    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
