use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Matrix;

/// Width and height of the square viewport.
pub const VIEWPORT: f64 = 800.0;
pub const VERTEX_RADIUS: f64 = 6.0;
pub const MARGIN_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    pub background: Option<String>,
    pub edge_color: String,
    pub edge_width: f64,
    pub vertex_fill: String,
    pub vertex_stroke: String,
    /// Draw vertex indices next to the circles.
    pub labels: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            background: Some("white".into()),
            edge_color: "#555555".into(),
            edge_width: 1.5,
            vertex_fill: "#1f77b4".into(),
            vertex_stroke: "black".into(),
            labels: false,
        }
    }
}

/// Renders a 2-row representation. Coordinates are scaled uniformly so the
/// layout fills the viewport minus the margin; a layout collapsed to a point
/// is drawn at the centre.
pub fn render_svg(g: &Graph, r: &Matrix, style: &RenderStyle) -> Result<String> {
    if r.rows() != 2 {
        return Err(Error::WrongDimension { rows: r.rows() });
    }
    if r.cols() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: r.cols() });
    }
    let (xs, ys) = (r.row(0), r.row(1));
    let bounds = |v: &[f64]| v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let (x_lo, x_hi) = bounds(xs);
    let (y_lo, y_hi) = bounds(ys);
    let span = (x_hi - x_lo).max(y_hi - y_lo);
    let usable = VIEWPORT * (1.0 - 2.0 * MARGIN_FRACTION);
    let scale = if span > 1e-12 { usable / span } else { 0.0 };
    let (x_mid, y_mid) = ((x_lo + x_hi) / 2.0, (y_lo + y_hi) / 2.0);
    let centre = VIEWPORT / 2.0;
    let place = |v: usize| {
        if g.n() == 0 {
            return (centre, centre);
        }
        (centre + (xs[v] - x_mid) * scale, centre - (ys[v] - y_mid) * scale)
    };

    let mut out = String::new();
    let w = &mut out;
    // Writing into a String is infallible; the results below are discarded.
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{VIEWPORT}" height="{VIEWPORT}" viewBox="0 0 {VIEWPORT} {VIEWPORT}">"#
    );
    if let Some(bg) = &style.background {
        let _ = writeln!(w, r#"<rect width="{VIEWPORT}" height="{VIEWPORT}" fill="{bg}"/>"#);
    }
    let _ = writeln!(w, r#"<g stroke="{}" stroke-width="{}">"#, style.edge_color, style.edge_width);
    for e in g.edges() {
        let (x1, y1) = place(e.0);
        let (x2, y2) = place(e.1);
        let _ = writeln!(w, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, r#"<g fill="{}" stroke="{}">"#, style.vertex_fill, style.vertex_stroke);
    for v in 0..g.n() {
        let (cx, cy) = place(v);
        let _ = writeln!(w, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{VERTEX_RADIUS}"/>"#);
    }
    let _ = writeln!(w, "</g>");
    if style.labels {
        let _ = writeln!(w, r#"<g font-family="sans-serif" font-size="10" fill="black">"#);
        for v in 0..g.n() {
            let (cx, cy) = place(v);
            let _ = writeln!(w, r#"<text x="{:.3}" y="{:.3}">{v}</text>"#, cx + VERTEX_RADIUS + 2.0, cy - VERTEX_RADIUS - 2.0);
        }
        let _ = writeln!(w, "</g>");
    }
    let _ = writeln!(w, "</svg>");
    Ok(out)
}
