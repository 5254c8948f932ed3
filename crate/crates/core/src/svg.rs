//! SVG rendering of amplitude vectors on the billiard.
//!
//! Each panel draws the bonds in light grey and one `<circle>` per site, in
//! canonical site order, with radius proportional to `|amplitude|`. Real
//! states are coloured by sign (red positive, blue negative); complex states
//! by phase as a hue.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::export::{format_float, NamedState};
use crate::lattice::TrianguleneLattice;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;
const TITLE: f64 = 24.0;
const COLUMNS: usize = 3;
/// Largest disk radius in lattice units; under half the bond length.
const MAX_RADIUS: f64 = 0.27;

const POSITIVE: &str = "#c62828";
const NEGATIVE: &str = "#1565c0";

fn colour(a: Complex64, real: bool) -> String {
    if real {
        return if a.re >= 0.0 { POSITIVE } else { NEGATIVE }.to_string();
    }
    let hue = a.arg().to_degrees().rem_euclid(360.0);
    format!("hsl({:.0},70%,45%)", hue)
}

fn f(x: f64) -> String {
    format_float((x * 100.0).round() / 100.0)
}

/// Renders the states side by side, up to three panels per row.
pub fn render_states(lattice: &TrianguleneLattice, states: &[NamedState]) -> String {
    let pos = lattice.positions();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in pos {
        xmin = xmin.min(p[0]);
        xmax = xmax.max(p[0]);
        ymin = ymin.min(p[1]);
        ymax = ymax.max(p[1]);
    }
    let pw = (xmax - xmin + 2.0 * MAX_RADIUS) * SCALE + 2.0 * MARGIN;
    let ph = (ymax - ymin + 2.0 * MAX_RADIUS) * SCALE + 2.0 * MARGIN + TITLE;
    let cols = states.len().clamp(1, COLUMNS);
    let rows = states.len().div_ceil(COLUMNS).max(1);
    let (width, height) = (pw * cols as f64, ph * rows as f64);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f(width),
        f(height),
        f(width),
        f(height)
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (idx, st) in states.iter().enumerate() {
        let (ox, oy) = ((idx % COLUMNS) as f64 * pw, (idx / COLUMNS) as f64 * ph);
        // y grows downwards in SVG
        let to_px = |p: &[f64; 2]| {
            (ox + MARGIN + (p[0] - xmin + MAX_RADIUS) * SCALE, oy + TITLE + MARGIN + (ymax - p[1] + MAX_RADIUS) * SCALE)
        };
        let peak = st.amplitudes.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let real = st.amplitudes.iter().all(|a| a.im.abs() <= 1e-12 * peak.max(1e-300));
        let _ = writeln!(svg, r#"<g class="panel" data-label="{}">"#, st.label);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14">{} E={}</text>"#,
            f(ox + MARGIN),
            f(oy + 18.0),
            st.label,
            format_float(st.energy)
        );
        for &(i, j) in lattice.bonds() {
            let (x1, y1) = to_px(&pos[i]);
            let (x2, y2) = to_px(&pos[j]);
            let _ = writeln!(
                svg,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#cccccc" stroke-width="1"/>"##,
                f(x1),
                f(y1),
                f(x2),
                f(y2)
            );
        }
        for (p, a) in pos.iter().zip(&st.amplitudes) {
            let (cx, cy) = to_px(p);
            let r = if peak > 0.0 { MAX_RADIUS * SCALE * a.norm() / peak } else { 0.0 };
            let _ =
                writeln!(svg, r#"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"#, f(cx), f(cy), f(r), colour(*a, real));
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    svg
}
