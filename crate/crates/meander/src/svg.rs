//! Deterministic SVG rendering of arch diagrams: semicircular arches above
//! and below a horizontal axis, fixed viewBox, elements in sorted order.

use crate::closed::ClosedMeander;
use crate::open::OpenMeander;

const STEP: f64 = 40.0;
const MARGIN: f64 = 30.0;

fn arch_path(a: usize, b: usize, axis_y: f64, upper: bool) -> String {
    let x1 = MARGIN + (a - 1) as f64 * STEP;
    let x2 = MARGIN + (b - 1) as f64 * STEP;
    let r = (x2 - x1) / 2.0;
    let sweep = if upper { 1 } else { 0 };
    format!(
        "  <path d=\"M {x1:.2} {axis_y:.2} A {r:.2} {r:.2} 0 0 {sweep} {x2:.2} {axis_y:.2}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
        if upper { "#1f77b4" } else { "#d62728" }
    )
}

fn render(n: usize, upper: &[(usize, usize)], lower: &[(usize, usize)]) -> String {
    let max_span = upper
        .iter()
        .chain(lower.iter())
        .map(|&(a, b)| b - a)
        .max()
        .unwrap_or(1) as f64;
    let radius = max_span * STEP / 2.0;
    let width = 2.0 * MARGIN + (n.max(1) - 1) as f64 * STEP;
    let height = 2.0 * (radius + MARGIN);
    let axis_y = height / 2.0;

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    ));
    s.push_str(&format!(
        "  <line x1=\"0\" y1=\"{axis_y:.2}\" x2=\"{width:.2}\" y2=\"{axis_y:.2}\" stroke=\"#999999\" stroke-width=\"1\"/>\n"
    ));
    for &(a, b) in upper {
        s.push_str(&arch_path(a, b, axis_y, true));
    }
    for &(a, b) in lower {
        s.push_str(&arch_path(a, b, axis_y, false));
    }
    for v in 1..=n {
        let x = MARGIN + (v - 1) as f64 * STEP;
        s.push_str(&format!(
            "  <circle cx=\"{x:.2}\" cy=\"{axis_y:.2}\" r=\"2.5\" fill=\"#000000\"/>\n"
        ));
        s.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"middle\">{v}</text>\n",
            axis_y + 14.0
        ));
    }
    s.push_str("</svg>\n");
    s
}

pub fn closed_meander_svg(m: &ClosedMeander) -> String {
    render(m.n(), m.upper(), m.lower())
}

pub fn open_meander_svg(om: &OpenMeander) -> String {
    render(om.n(), om.upper(), om.lower())
}
