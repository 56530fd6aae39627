//! SVG rendering of the Kasner circle, emanation corners, expanding and
//! stable arcs, and the chords of an itinerary.

use crate::arcs::ArcSet;
use crate::map::{near_arc, stable_arcs, EmanationConfig, Itinerary};

const SIZE: f64 = 480.0;
const RADIUS: f64 = 140.0;

fn center() -> (f64, f64) {
    (SIZE / 2.0, SIZE / 2.0)
}

fn on_circle(theta: f64, r: f64) -> (f64, f64) {
    let (cx, cy) = center();
    (cx + r * theta.cos(), cy - r * theta.sin())
}

fn arc_paths(set: &ArcSet, r: f64, stroke: &str, width: f64) -> String {
    let mut s = String::new();
    for (lo, hi) in set.segments() {
        if hi - lo <= 0.0 {
            continue;
        }
        let (x1, y1) = on_circle(lo, r);
        let (x2, y2) = on_circle(hi, r);
        let large = if hi - lo > std::f64::consts::PI { 1 } else { 0 };
        s.push_str(&format!(
            "  <path d=\"M {x1:.2} {y1:.2} A {r:.2} {r:.2} 0 {large} 0 {x2:.2} {y2:.2}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width:.1}\"/>\n"
        ));
    }
    s
}

pub fn scene_svg(cfg: &EmanationConfig, itinerary: Option<&Itinerary>) -> String {
    let (cx, cy) = center();
    let mut s =
        format!("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE:.2} {SIZE:.2}\">\n");
    s.push_str(&format!(
        "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{RADIUS:.2}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n"
    ));
    let palette = ["#1f77b4", "#2ca02c", "#9467bd"];
    for (corner, color) in palette.iter().enumerate() {
        s.push_str(&arc_paths(&near_arc(cfg, corner), RADIUS, color, 3.0));
        let scale = RADIUS * cfg.distance();
        let phi = cfg.corner_angle(corner);
        let (qx, qy) = (cx + scale * phi.cos(), cy - scale * phi.sin());
        s.push_str(&format!(
            "  <circle cx=\"{qx:.2}\" cy=\"{qy:.2}\" r=\"4\" fill=\"{color}\"/>\n"
        ));
    }
    s.push_str(&arc_paths(&stable_arcs(cfg), RADIUS + 8.0, "#d62728", 3.0));
    if let Some(it) = itinerary {
        for w in it.steps.windows(2) {
            let (x1, y1) = on_circle(w[0].theta, RADIUS);
            let (x2, y2) = on_circle(w[1].theta, RADIUS);
            s.push_str(&format!(
                "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"#ff7f0e\" stroke-width=\"1\"/>\n"
            ));
        }
        if let Some(first) = it.steps.first() {
            let (x, y) = on_circle(first.theta, RADIUS);
            s.push_str(&format!(
                "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"#ff7f0e\"/>\n"
            ));
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{iterate, Policy};

    #[test]
    fn deterministic_scene() {
        let cfg = EmanationConfig::new(1.8).unwrap();
        let it = iterate(1.0, 10, &cfg, Policy::Lexicographic).unwrap();
        let a = scene_svg(&cfg, Some(&it));
        let b = scene_svg(&cfg, Some(&it));
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.contains("stroke=\"#d62728\"")); // stable arcs present below GR
    }
}
