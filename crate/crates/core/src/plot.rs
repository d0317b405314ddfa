//! Minimal SVG line charts for simulation output.

use std::fmt::Write as _;

use crate::bounds::best_corollary5_bound;
use crate::error::{invalid, Result};
use crate::format::sig17;
use crate::simulate::{frontier_ratio, linfit_log, SimRecord, Statistic};

pub const WIDTH: f64 = 960.0;
pub const HEIGHT: f64 = 640.0;
const MARGIN_LEFT: f64 = 90.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 70.0;

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const DASHES: [&str; 2] = ["none", "6 4"];

/// The `i`-th of 12 stroke styles as `(color, dasharray)`.
pub fn stroke_style(i: usize) -> (&'static str, &'static str) {
    let i = i % (COLORS.len() * DASHES.len());
    (COLORS[i % COLORS.len()], DASHES[i / COLORS.len()])
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

/// `y = slope * x + intercept`, drawn across the x range of the data.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlayLine {
    pub label: String,
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    pub overlay_lines: Vec<OverlayLine>,
}

impl PlotSpec {
    pub fn validate(&self) -> Result<()> {
        if self.series.is_empty() {
            return Err(invalid("plot needs at least one series"));
        }
        for s in &self.series {
            if s.points.is_empty() {
                return Err(invalid(format!("series {:?} has no points", s.label)));
            }
            if s.points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
                return Err(invalid(format!("series {:?} has a non-finite point", s.label)));
            }
        }
        if self.overlay_lines.iter().any(|l| !l.slope.is_finite() || !l.intercept.is_finite()) {
            return Err(invalid("overlay line with non-finite coefficients"));
        }
        Ok(())
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.04 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
        (lo - pad, hi + pad)
    }
}

/// Renders a standalone SVG 1.1 document.
pub fn render_svg(spec: &PlotSpec) -> Result<String> {
    spec.validate()?;
    let pts = spec.series.iter().flat_map(|s| s.points.iter().copied());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    for l in &spec.overlay_lines {
        for x in [x0, x1] {
            let y = l.slope * x + l.intercept;
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    let (data_x0, data_x1) = (x0, x1);
    let (x0, x1) = padded(x0, x1);
    let (y0, y1) = padded(y0, y1);
    let pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MARGIN_TOP + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(&spec.title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..=5 {
        let t = f64::from(i) / 5.0;
        let xv = x0 + t * (x1 - x0);
        let yv = y0 + t * (y1 - y0);
        let (px, py) = (sx(xv), sy(yv));
        let bottom = MARGIN_TOP + ph;
        let _ = writeln!(s, r#"<line x1="{px:.2}" y1="{bottom}" x2="{px:.2}" y2="{}" stroke="black"/>"#, bottom + 5.0);
        let _ =
            writeln!(s, r#"<text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#, bottom + 20.0, tick_label(xv));
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{py:.2}" x2="{MARGIN_LEFT}" y2="{py:.2}" stroke="black"/>"#,
            MARGIN_LEFT - 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + pw / 2.0,
        HEIGHT - 20.0,
        escape(&spec.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{y}" text-anchor="middle" transform="rotate(-90 20 {y})">{}</text>"#,
        escape(&spec.y_label),
        y = MARGIN_TOP + ph / 2.0
    );

    let mut legend_y = MARGIN_TOP + 10.0;
    let legend_x = WIDTH - MARGIN_RIGHT + 15.0;
    for (i, series) in spec.series.iter().enumerate() {
        let (color, dash) = stroke_style(i);
        let dash = if series.dashed { DASHES[1] } else { dash };
        let coords: Vec<String> = series.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline class="series" data-label="{}" points="{}" fill="none" stroke="{color}" stroke-width="1.6" stroke-dasharray="{dash}"/>"#,
            escape(&series.label),
            coords.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<line x1="{legend_x}" y1="{legend_y}" x2="{}" y2="{legend_y}" stroke="{color}" stroke-width="1.6" stroke-dasharray="{dash}"/>"#,
            legend_x + 24.0
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, legend_x + 30.0, legend_y + 4.0, escape(&series.label));
        legend_y += 18.0;
    }
    for (i, line) in spec.overlay_lines.iter().enumerate() {
        let (color, _) = stroke_style(i);
        let (ya, yb) = (line.slope * data_x0 + line.intercept, line.slope * data_x1 + line.intercept);
        let _ = writeln!(
            s,
            r#"<line class="fit" data-label="{}" data-slope="{}" data-intercept="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="1" stroke-dasharray="2 3"/>"#,
            escape(&line.label),
            sig17(line.slope),
            sig17(line.intercept),
            sx(data_x0),
            sy(ya),
            sx(data_x1),
            sy(yb)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e6).contains(&a) {
        format!("{v:.2e}")
    } else if a >= 100.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    }
}

fn rhos(records: &[SimRecord]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for r in records {
        if !out.contains(&r.rho) {
            out.push(r.rho);
        }
    }
    out
}

fn require(records: &[SimRecord], statistic: Statistic) -> Result<()> {
    if records.is_empty() {
        return Err(invalid("no records to plot"));
    }
    if records.iter().any(|r| r.statistic != statistic) {
        return Err(invalid(format!("plot expects {statistic} records")));
    }
    Ok(())
}

/// Largest-SCC fraction `mean / N` against `N`, one series per `rho`,
/// optionally with the primorial lower bound for each `rho`.
pub fn scc_ratio_plot(records: &[SimRecord], with_bound: bool) -> Result<PlotSpec> {
    require(records, Statistic::LsccSize)?;
    let mut series = Vec::new();
    for rho in rhos(records) {
        let cell: Vec<SimRecord> = records.iter().filter(|r| r.rho == rho).cloned().collect();
        let points = frontier_ratio(&cell)?.into_iter().map(|(n, v)| (f64::from(n), v)).collect();
        series.push(Series { label: format!("rho={}", sig17(rho)), points, dashed: false });
    }
    if with_bound {
        for rho in rhos(records).into_iter().filter(|&r| r > 0.0 && r < 1.0) {
            let points = records
                .iter()
                .filter(|r| r.rho == rho)
                .map(|r| Ok((f64::from(r.n), best_corollary5_bound(u64::from(r.n), rho)?.ratio)))
                .collect::<Result<Vec<_>>>()?;
            series.push(Series { label: format!("bound rho={}", sig17(rho)), points, dashed: true });
        }
    }
    Ok(PlotSpec {
        title: "Largest strongly connected component".into(),
        x_label: "N".into(),
        y_label: "E[#LSCC] / N".into(),
        series,
        overlay_lines: Vec::new(),
    })
}

/// Mean diameter against `log N`, optionally with the least-squares line for
/// each `rho` that has at least two distinct `N`.
pub fn diameter_plot(records: &[SimRecord], fit: bool) -> Result<PlotSpec> {
    require(records, Statistic::Diameter)?;
    let mut series = Vec::new();
    let mut overlay_lines = Vec::new();
    for rho in rhos(records) {
        let cell: Vec<SimRecord> = records.iter().filter(|r| r.rho == rho).cloned().collect();
        let label = format!("rho={}", sig17(rho));
        series.push(Series {
            label: label.clone(),
            points: cell.iter().map(|r| (f64::from(r.n).ln(), r.mean)).collect(),
            dashed: false,
        });
        if !fit {
            continue;
        }
        if let Ok(fit) = linfit_log(&cell) {
            overlay_lines.push(OverlayLine { label, slope: fit.alpha, intercept: fit.beta });
        }
    }
    Ok(PlotSpec {
        title: "Diameter of the largest strongly connected component".into(),
        x_label: "log N".into(),
        y_label: "mean diameter".into(),
        series,
        overlay_lines,
    })
}
