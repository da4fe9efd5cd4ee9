use super::{clip_convex, ConvexPolygon, Vec2, EPS};

/// A line through `point` with unit `direction`; the left side is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedLine {
    pub point: Vec2,
    pub direction: Vec2,
}

impl OrientedLine {
    /// Normalizes `direction`. Panics on a zero direction.
    pub fn new(point: Vec2, direction: Vec2) -> Self {
        let n = direction.norm();
        assert!(n > 0.0, "zero line direction");
        OrientedLine {
            point,
            direction: direction * (1.0 / n),
        }
    }

    pub fn signed_distance(&self, p: Vec2) -> f64 {
        self.direction.cross(p - self.point)
    }

    fn same_line(&self, other: &OrientedLine) -> bool {
        self.direction.cross(other.direction).abs() <= 1e-12
            && self.signed_distance(other.point).abs() <= EPS
    }

    /// Intersection point, `None` for parallel lines.
    pub fn intersect(&self, other: &OrientedLine) -> Option<Vec2> {
        let det = self.direction.cross(other.direction);
        if det.abs() <= 1e-12 {
            return None;
        }
        let t = (other.point - self.point).cross(other.direction) / det;
        Some(self.point + self.direction * t)
    }
}

/// The two inner common tangents of disjoint convex regions.
///
/// Each returned line passes through a vertex of both regions and has `a`
/// on its closed left side and `b` on its closed right side. When `a` and
/// `b` lie on one common line (two points, collinear segments) both
/// tangents degenerate to that line; it is returned twice, anchored at the
/// midpoint of the closest vertex pair. Intersecting or touching regions
/// give `None`.
pub fn inner_tangents(a: &ConvexPolygon, b: &ConvexPolygon) -> Option<(OrientedLine, OrientedLine)> {
    if clip_convex(a, b).is_some() {
        return None;
    }
    let mut found: Vec<OrientedLine> = Vec::new();
    for &va in a.vertices() {
        for &vb in b.vertices() {
            let line = OrientedLine::new(va, vb - va);
            let side = |v: &Vec2| line.signed_distance(*v);
            let a_left = a.vertices().iter().all(|v| side(v) >= -EPS);
            let a_right = a.vertices().iter().all(|v| side(v) <= EPS);
            let b_left = b.vertices().iter().all(|v| side(v) >= -EPS);
            let b_right = b.vertices().iter().all(|v| side(v) <= EPS);
            let oriented = if a_left && b_right {
                line
            } else if a_right && b_left {
                OrientedLine::new(vb, va - vb)
            } else {
                continue;
            };
            if !found.iter().any(|l| l.same_line(&oriented)) {
                found.push(oriented);
            }
        }
    }
    match found.len() {
        0 => None,
        1 => {
            let mut best = (f64::INFINITY, Vec2::default());
            for &va in a.vertices() {
                for &vb in b.vertices() {
                    let d = (vb - va).norm();
                    if d < best.0 {
                        best = (d, (va + vb) * 0.5);
                    }
                }
            }
            let line = OrientedLine {
                point: best.1,
                direction: found[0].direction,
            };
            Some((line, line))
        }
        _ => Some((found[0], found[1])),
    }
}
