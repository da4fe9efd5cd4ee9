//! SVG 1.1 figures of planar instances and their selections.

use mindiam::geometry::Vec2;
use std::fmt::Write;

const CANVAS: f64 = 640.0;
const MARGIN: f64 = 24.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// One input item. Regions with a single vertex and candidate points are
/// drawn as circles, everything else as a polygon.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Region { index: usize, vertices: Vec<Vec2> },
    Candidate { color: usize, at: Vec2 },
}

/// Everything that goes into one figure.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scene {
    pub shapes: Vec<Shape>,
    pub selection: Vec<Vec2>,
    pub witness: Option<(Vec2, Vec2)>,
    /// Auxiliary segments, e.g. separating lines clipped to the view.
    pub guides: Vec<(Vec2, Vec2)>,
    pub title: Option<String>,
}

struct View {
    lo: Vec2,
    scale: f64,
    height: f64,
}

impl View {
    fn fit(points: &[Vec2]) -> View {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if points.is_empty() {
            lo = Vec2::new(0.0, 0.0);
            hi = Vec2::new(1.0, 1.0);
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let scale = (CANVAS - 2.0 * MARGIN) / span;
        View {
            lo,
            scale,
            height: (hi.y - lo.y) * scale + 2.0 * MARGIN,
        }
    }

    fn map(&self, p: Vec2) -> (f64, f64) {
        (
            MARGIN + (p.x - self.lo.x) * self.scale,
            self.height - MARGIN - (p.y - self.lo.y) * self.scale,
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render(scene: &Scene) -> String {
    let mut extent: Vec<Vec2> = Vec::new();
    for s in &scene.shapes {
        match s {
            Shape::Region { vertices, .. } => extent.extend(vertices.iter().copied()),
            Shape::Candidate { at, .. } => extent.push(*at),
        }
    }
    extent.extend(scene.selection.iter().copied());
    let view = View::fit(&extent);
    let width = CANVAS;
    let height = view.height.max(2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    if let Some(t) = &scene.title {
        let _ = writeln!(out, "  <title>{}</title>", escape(t));
    }
    let _ = writeln!(out, r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##);

    let _ = writeln!(out, r#"  <g id="instance">"#);
    for s in &scene.shapes {
        match s {
            Shape::Region { index, vertices } => {
                let color = PALETTE[index % PALETTE.len()];
                if vertices.len() == 1 {
                    let (x, y) = view.map(vertices[0]);
                    let _ = writeln!(
                        out,
                        r#"    <circle class="region" data-index="{index}" cx="{x:.3}" cy="{y:.3}" r="3" fill="{color}"/>"#
                    );
                } else {
                    let pts: Vec<String> = vertices
                        .iter()
                        .map(|v| {
                            let (x, y) = view.map(*v);
                            format!("{x:.3},{y:.3}")
                        })
                        .collect();
                    let _ = writeln!(
                        out,
                        r#"    <polygon class="region" data-index="{index}" points="{}" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="1.5"/>"#,
                        pts.join(" ")
                    );
                }
            }
            Shape::Candidate { color, at } => {
                let fill = PALETTE[color % PALETTE.len()];
                let (x, y) = view.map(*at);
                let _ = writeln!(
                    out,
                    r#"    <circle class="candidate" data-color="{color}" cx="{x:.3}" cy="{y:.3}" r="4" fill="{fill}"/>"#
                );
            }
        }
    }
    let _ = writeln!(out, "  </g>");

    if !scene.guides.is_empty() {
        let _ = writeln!(out, r#"  <g id="guides">"#);
        for (a, b) in &scene.guides {
            let (x1, y1) = view.map(*a);
            let (x2, y2) = view.map(*b);
            let _ = writeln!(
                out,
                r##"    <line class="guide" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#888888" stroke-dasharray="4 3"/>"##
            );
        }
        let _ = writeln!(out, "  </g>");
    }

    let _ = writeln!(out, r#"  <g id="selection">"#);
    for p in &scene.selection {
        let (x, y) = view.map(*p);
        let _ = writeln!(
            out,
            r##"    <rect class="selected" x="{:.3}" y="{:.3}" width="6" height="6" fill="#000000"/>"##,
            x - 3.0,
            y - 3.0
        );
    }
    if let Some((a, b)) = scene.witness {
        let (x1, y1) = view.map(a);
        let (x2, y2) = view.map(b);
        let _ = writeln!(
            out,
            r##"    <line class="witness" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#e31a1c" stroke-width="2.5"/>"##
        );
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "</svg>");
    out
}
