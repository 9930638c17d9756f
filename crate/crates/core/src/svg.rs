//! Deterministic SVG pictures of layouts, with an optional highlighted tree.

use std::fmt::Write;

use crate::book::{BookLayout, Page};
use crate::cylindrical::{Angle, CylindricalLayout};
use crate::drawing::{all_edges, Edge, EdgeColoring, EdgeSet};
use crate::pseudolinear::PointDrawing;

const SIZE: f64 = 600.0;
const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

fn color_of(c: &EdgeColoring, e: Edge) -> &'static str {
    PALETTE[c.color(e) % PALETTE.len()]
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
}

fn path(out: &mut String, d: &str, stroke: &str, width: f64, e: Edge) {
    let _ = writeln!(
        out,
        r#"<path class="edge" data-edge="{}-{}" d="{d}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
        e.u(),
        e.v()
    );
}

fn vertices(out: &mut String, pos: &[(f64, f64)]) {
    out.push_str("<g id=\"vertices\">\n");
    for (v, (x, y)) in pos.iter().enumerate() {
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="black"/>"#);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="12">{v}</text>"#, x + 7.0, y - 7.0);
    }
    out.push_str("</g>\n");
}

/// Draws every edge thin, then the tree edges again thick inside
/// `<g id="tree">`.
fn edges(out: &mut String, n: usize, c: &EdgeColoring, tree: Option<&EdgeSet>, curve: impl Fn(Edge) -> String) {
    out.push_str("<g id=\"edges\">\n");
    for e in all_edges(n) {
        path(out, &curve(e), color_of(c, e), 1.0, e);
    }
    out.push_str("</g>\n");
    if let Some(t) = tree {
        out.push_str("<g id=\"tree\">\n");
        for &e in t {
            path(out, &curve(e), color_of(c, e), 5.0, e);
        }
        out.push_str("</g>\n");
    }
}

fn polar(r: f64, a: f64) -> (f64, f64) {
    let t = a * std::f64::consts::PI;
    (SIZE / 2.0 + r * t.cos(), SIZE / 2.0 - r * t.sin())
}

fn to_f64(a: &Angle) -> f64 {
    *a.numer() as f64 / *a.denom() as f64
}

pub fn render_cylindrical(l: &CylindricalLayout, tree: Option<&EdgeSet>) -> String {
    let (r_in, r_out) = (110.0, 220.0);
    let angle = |v: usize| to_f64(&l.angle(v));
    let radius = |v: usize| if v < l.n_inner() { r_in } else { r_out };
    let pos: Vec<(f64, f64)> = (0..l.n()).map(|v| polar(radius(v), angle(v))).collect();
    let mut out = String::new();
    header(&mut out);
    for r in [r_in, r_out] {
        let _ = writeln!(
            out,
            r##"<circle cx="{0}" cy="{0}" r="{r}" fill="none" stroke="#999" stroke-dasharray="4 4"/>"##,
            SIZE / 2.0
        );
    }
    let curve = |e: Edge| {
        let (u, w) = (e.u(), e.v());
        if l.is_side_edge(e) {
            let (a, delta) = (angle(u), to_f64(&l.side_winding(e)));
            let steps = 48;
            let mut d = String::new();
            for s in 0..=steps {
                let t = s as f64 / steps as f64;
                let (x, y) = polar(r_in + t * (r_out - r_in), a + t * delta);
                let _ = write!(d, "{}{x:.2} {y:.2} ", if s == 0 { "M" } else { "L" });
            }
            d.trim_end().to_string()
        } else if u < l.n_inner() {
            let (a, b) = (pos[u], pos[w]);
            format!("M{:.2} {:.2} L{:.2} {:.2}", a.0, a.1, b.0, b.1)
        } else {
            // outer edges bulge outward through a control point beyond the circle
            let (a, b) = (pos[u], pos[w]);
            let mid = (angle(u) + angle(w)) / 2.0;
            let mid = if (angle(w) - angle(u)).abs() > 1.0 { mid + 1.0 } else { mid };
            let (cx, cy) = polar(r_out + 70.0, mid);
            format!("M{:.2} {:.2} Q{cx:.2} {cy:.2} {:.2} {:.2}", a.0, a.1, b.0, b.1)
        }
    };
    edges(&mut out, l.n(), l.coloring(), tree, curve);
    vertices(&mut out, &pos);
    out.push_str("</svg>\n");
    out
}

pub fn render_book(b: &BookLayout, tree: Option<&EdgeSet>) -> String {
    let n = b.n();
    let step = (SIZE - 80.0) / (n.max(2) - 1) as f64;
    let pos_of = b.positions();
    let pos: Vec<(f64, f64)> = (0..n).map(|v| (40.0 + step * pos_of[v] as f64, SIZE / 2.0)).collect();
    let mut out = String::new();
    header(&mut out);
    let _ = writeln!(out, r##"<line x1="20" y1="{0}" x2="{1}" y2="{0}" stroke="#999"/>"##, SIZE / 2.0, SIZE - 20.0);
    let curve = |e: Edge| {
        let (a, c) = (pos[e.u()], pos[e.v()]);
        let r = (a.0 - c.0).abs() / 2.0;
        let sweep = match (b.page(e), a.0 < c.0) {
            (Page::Top, true) | (Page::Bottom, false) => 1,
            _ => 0,
        };
        format!("M{:.2} {:.2} A{r:.2} {r:.2} 0 0 {sweep} {:.2} {:.2}", a.0, a.1, c.0, c.1)
    };
    edges(&mut out, n, b.coloring(), tree, curve);
    vertices(&mut out, &pos);
    out.push_str("</svg>\n");
    out
}

pub fn render_points(p: &PointDrawing, tree: Option<&EdgeSet>) -> String {
    let pts = p.points();
    let (x0, x1) = (pts.iter().map(|q| q.x).min().unwrap_or(0), pts.iter().map(|q| q.x).max().unwrap_or(1));
    let (y0, y1) = (pts.iter().map(|q| q.y).min().unwrap_or(0), pts.iter().map(|q| q.y).max().unwrap_or(1));
    let scale = (SIZE - 80.0) / ((x1 - x0).max(y1 - y0).max(1) as f64);
    let pos: Vec<(f64, f64)> =
        pts.iter().map(|q| (40.0 + (q.x - x0) as f64 * scale, SIZE - 40.0 - (q.y - y0) as f64 * scale)).collect();
    let mut out = String::new();
    header(&mut out);
    let curve = |e: Edge| {
        let (a, b) = (pos[e.u()], pos[e.v()]);
        format!("M{:.2} {:.2} L{:.2} {:.2}", a.0, a.1, b.0, b.1)
    };
    edges(&mut out, p.n(), p.coloring(), tree, curve);
    vertices(&mut out, &pos);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylindrical::{solve_cylindrical, SweepOptions};
    use crate::generators::{gen_book, gen_cylindrical, gen_points};

    #[test]
    fn one_plus_one() {
        let l = gen_cylindrical(1, 1, 0).unwrap();
        let s = render_cylindrical(&l, None);
        assert_eq!(s.matches("<circle cx=\"300\"").count(), 2);
        assert_eq!(s.matches("class=\"edge\"").count(), 1);
    }

    #[test]
    fn deterministic() {
        let l = gen_cylindrical(3, 4, 2).unwrap();
        assert_eq!(render_cylindrical(&l, None), render_cylindrical(&l, None));
        let b = gen_book(6, 2).unwrap();
        assert_eq!(render_book(&b, None), render_book(&b, None));
        let p = gen_points(6, 2).unwrap();
        assert_eq!(render_points(&p, None), render_points(&p, None));
    }

    #[test]
    fn tree_highlight() {
        let l = gen_cylindrical(2, 2, 4).unwrap();
        let r = solve_cylindrical(&l, SweepOptions::default()).unwrap();
        assert!(r.is_found());
        let s = render_cylindrical(&l, Some(&r.tree));
        let group = s.split("<g id=\"tree\">").nth(1).unwrap().split("</g>").next().unwrap();
        assert_eq!(group.matches("class=\"edge\"").count(), r.tree.len());
    }
}
