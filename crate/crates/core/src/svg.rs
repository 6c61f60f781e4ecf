//! Deterministic SVG 1.1 drawings of a graph and its deformation.

use std::fmt::Write;

use crate::embed::DeformedGraph;
use crate::model::GeometricGraph;

/// Fraction of the bounding box added on every side.
pub const PADDING: f64 = 0.2;

const LIGHT: &str = "#b0b0b0";
const DARK: &str = "#202020";

struct Frame {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

impl Frame {
    fn around(points: impl Iterator<Item = [f64; 2]>) -> Frame {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for [x, y] in points.filter(|p| p[0].is_finite() && p[1].is_finite()) {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            (x0, y0, x1, y1) = (0.0, 0.0, 0.0, 0.0);
        }
        // A degenerate box (single vertex, collinear vertices) gets unit size.
        let w = (x1 - x0).max(y1 - y0).max(1.0);
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let half_w = ((x1 - x0).max(w * 0.5)) / 2.0 + PADDING * w;
        let half_h = ((y1 - y0).max(w * 0.5)) / 2.0 + PADDING * w;
        Frame { x0: cx - half_w, y0: cy - half_h, x1: cx + half_w, y1: cy + half_h }
    }

    fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    /// Point where the ray from `p` in direction `angle` leaves the frame.
    fn exit(&self, p: [f64; 2], angle: f64) -> [f64; 2] {
        let (dx, dy) = (angle.cos(), angle.sin());
        let mut t = f64::INFINITY;
        if dx > 1e-12 {
            t = t.min((self.x1 - p[0]) / dx);
        } else if dx < -1e-12 {
            t = t.min((self.x0 - p[0]) / dx);
        }
        if dy > 1e-12 {
            t = t.min((self.y1 - p[1]) / dy);
        } else if dy < -1e-12 {
            t = t.min((self.y0 - p[1]) / dy);
        }
        let t = t.max(0.0);
        [p[0] + t * dx, p[1] + t * dy]
    }
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" { "0.0000".into() } else { s }
}

fn draw(out: &mut String, g: &GeometricGraph, frame: &Frame, positions: &[[f64; 2]], rays: &[f64], color: &str, width: f64) {
    let prs = g.prs();
    let r = 2.0 * width;
    let _ = writeln!(out, r#"  <g stroke="{color}" stroke-width="{}" fill="{color}">"#, fmt(width));
    for e in 0..g.n_closed_edges() {
        let (a, b) = prs.endpoints(e);
        let (p, q) = (positions[a], positions[b]);
        let _ = writeln!(
            out,
            r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            fmt(p[0]),
            fmt(-p[1]),
            fmt(q[0]),
            fmt(-q[1])
        );
    }
    for (k, &h) in prs.rays().iter().enumerate() {
        let p = positions[prs.vertex_of(h)];
        let q = frame.exit(p, rays[k]);
        let _ = writeln!(
            out,
            r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            fmt(p[0]),
            fmt(-p[1]),
            fmt(q[0]),
            fmt(-q[1])
        );
    }
    for p in positions {
        let _ = writeln!(out, r#"    <circle cx="{}" cy="{}" r="{}" stroke="none"/>"#, fmt(p[0]), fmt(-p[1]), fmt(r));
    }
    out.push_str("  </g>\n");
}

/// Original graph in a light stroke, the deformed graph (if any) in a dark
/// stroke on top, and an optional text annotation.
pub fn render(g: &GeometricGraph, deformed: Option<&DeformedGraph>, annotation: Option<&str>) -> String {
    let original: Vec<[f64; 2]> = g.positions().iter().map(|z| [z.re, z.im]).collect();
    let all = original.iter().copied().chain(deformed.into_iter().flat_map(|d| d.positions.iter().copied()));
    let frame = Frame::around(all);
    let width = 0.004 * frame.width().max(frame.height());

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="600" height="{}" viewBox="{} {} {} {}">"#,
        fmt(600.0 * frame.height() / frame.width()),
        fmt(frame.x0),
        fmt(-frame.y1),
        fmt(frame.width()),
        fmt(frame.height())
    );
    let _ = writeln!(
        out,
        r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
        fmt(frame.x0),
        fmt(-frame.y1),
        fmt(frame.width()),
        fmt(frame.height())
    );
    draw(&mut out, g, &frame, &original, g.ray_angles(), LIGHT, 2.0 * width);
    if let Some(d) = deformed {
        draw(&mut out, g, &frame, &d.positions, &d.ray_angles, DARK, width);
    }
    if let Some(text) = annotation {
        let size = 0.04 * frame.width().max(frame.height());
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="sans-serif" font-size="{}" fill="{DARK}">{}</text>"#,
            fmt(frame.x0 + size * 0.5),
            fmt(-frame.y1 + size * 1.5),
            fmt(size),
            escape(text)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::deformed_graph;
    use crate::gallery;

    #[test]
    fn identity_at_zero_draws_identical_coordinates() {
        let c = gallery::tree1(0.0).unwrap();
        let d = deformed_graph(&c, 0.0).unwrap();
        let s = render(&c.graph, Some(&d), None);
        let groups: Vec<&str> = s.split("<g ").skip(1).collect();
        assert_eq!(groups.len(), 2);
        // Geometry only: segment endpoints and dot centres.
        let coords = |g: &str| -> Vec<String> {
            g.lines()
                .filter_map(|l| {
                    let l = l.trim();
                    if l.starts_with("<line") {
                        Some(l.to_string())
                    } else if l.starts_with("<circle") {
                        Some(l.split(" r=").next().unwrap().to_string())
                    } else {
                        None
                    }
                })
                .collect()
        };
        assert_eq!(coords(groups[0]), coords(groups[1]));
        assert!(!coords(groups[0]).is_empty());
    }

    #[test]
    fn deterministic_bytes() {
        let c = gallery::benzene().unwrap();
        assert_eq!(render(&c.graph, None, Some("not rigid")), render(&c.graph, None, Some("not rigid")));
        assert!(render(&c.graph, None, Some("not rigid")).contains("not rigid"));
    }

    #[test]
    fn ray_exit_hits_frame() {
        let f = Frame { x0: -1.0, y0: -1.0, x1: 1.0, y1: 1.0 };
        let q = f.exit([0.0, 0.0], std::f64::consts::FRAC_PI_2);
        assert!((q[1] - 1.0).abs() < 1e-12 && q[0].abs() < 1e-12);
    }
}
