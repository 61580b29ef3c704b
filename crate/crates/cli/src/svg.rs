//! SVG drawings of planar realizations.

use std::fmt::Write as _;

use cayley_core::realize::Realization;
use cayley_core::Graph;

use crate::document::Names;

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// One group per realization, drawn with the edges of `g`. Coordinates are
/// scaled so the largest extent over all realizations is 1.
pub fn render(g: &Graph, names: &Names, realizations: &[Realization]) -> String {
    let pts: Vec<(f64, f64)> =
        realizations.iter().flat_map(|r| r.points.values().map(|c| (c[0], c[1]))).collect();
    let (min_x, max_x) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (min_y, max_y) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let extent = (max_x - min_x).max(max_y - min_y);
    let scale = if extent > 0.0 && extent.is_finite() { 1.0 / extent } else { 1.0 };
    // SVG's y axis points down.
    let map = |x: f64, y: f64| ((x - min_x) * scale, (max_y - y) * scale);

    let mut out = String::new();
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.05 -0.05 1.1 1.1\">\n");
    for (k, r) in realizations.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        writeln!(out, "  <g id=\"realization-{k}\" stroke=\"{colour}\" fill=\"{colour}\" stroke-width=\"0.004\">").unwrap();
        for e in g.edges() {
            let (Some(a), Some(b)) = (r.points.get(&e.u()), r.points.get(&e.v())) else { continue };
            let (x1, y1) = map(a[0], a[1]);
            let (x2, y2) = map(b[0], b[1]);
            writeln!(out, "    <polyline points=\"{x1:.6},{y1:.6} {x2:.6},{y2:.6}\" fill=\"none\"/>").unwrap();
        }
        for (&v, c) in &r.points {
            let (x, y) = map(c[0], c[1]);
            writeln!(out, "    <circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"0.012\"><title>{}</title></circle>", names.name(v))
                .unwrap();
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}
