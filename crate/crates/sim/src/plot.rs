//! Static SVG figures: one panel per statistic, median across seeds versus
//! the scenario parameter.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{io_err, Result};
use crate::simulate::{median_curves, Simulation};
use crate::table::ExperimentTable;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 700.0;
const PANEL_W: f64 = 450.0;
const PANEL_H: f64 = 320.0;
const TOP: f64 = 50.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 50.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fmt_tick(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e4).contains(&a) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

/// Renders the SVG document for `sim` from the per-parameter medians in `t`.
pub fn render_svg(t: &ExperimentTable, sim: Simulation) -> Result<String> {
    let curves = median_curves(t, sim.id())?;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="28" text-anchor="middle" font-size="16">Simulation {}: median statistic across seeds</text>"#,
        WIDTH / 2.0,
        sim.id()
    );

    let (xmin, xmax) = (curves.params[0], curves.params[curves.params.len() - 1]);
    for (idx, (name, ys)) in curves.series().into_iter().enumerate() {
        let ox = (idx % 2) as f64 * PANEL_W;
        let oy = TOP + (idx / 2) as f64 * PANEL_H;
        let (px0, px1) = (ox + MARGIN_L, ox + PANEL_W - MARGIN_R);
        let (py0, py1) = (oy + MARGIN_T, oy + PANEL_H - MARGIN_B);
        let (mut ymin, mut ymax) = ys
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        if ymax - ymin <= f64::EPSILON * ymax.abs().max(1.0) {
            ymin -= 0.5;
            ymax += 0.5;
        }
        let sx = |x: f64| {
            if xmax > xmin {
                px0 + (x - xmin) / (xmax - xmin) * (px1 - px0)
            } else {
                0.5 * (px0 + px1)
            }
        };
        let sy = |y: f64| py1 - (y - ymin) / (ymax - ymin) * (py1 - py0);

        let _ = writeln!(s, r#"<g id="panel-{idx}">"#);
        let _ = writeln!(
            s,
            r#"<rect x="{px0:.2}" y="{py0:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
            px1 - px0,
            py1 - py0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14">{}</text>"#,
            0.5 * (px0 + px1),
            py0 - 8.0,
            esc(name)
        );
        for &x in &curves.params {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="10">{}</text>"#,
                sx(x),
                py1 + 14.0,
                fmt_tick(x)
            );
        }
        for (v, y) in [(ymin, py1), (ymax, py0)] {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-size="10">{}</text>"#,
                px0 - 4.0,
                y + 4.0,
                fmt_tick(v)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            0.5 * (px0 + px1),
            py1 + 32.0,
            esc(sim.parameter_label())
        );
        let (lx, ly) = (ox + 18.0, 0.5 * (py0 + py1));
        let _ = writeln!(
            s,
            r#"<text x="{lx:.2}" y="{ly:.2}" text-anchor="middle" transform="rotate(-90 {lx:.2} {ly:.2})">statistic</text>"#
        );
        let points: Vec<String> = curves
            .params
            .iter()
            .zip(ys)
            .map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            COLORS[idx],
            points.join(" ")
        );
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_plot(t: &ExperimentTable, sim: Simulation, path: &Path) -> Result<()> {
    let svg = render_svg(t, sim)?;
    std::fs::write(path, svg).map_err(|e| io_err(path, e))
}
