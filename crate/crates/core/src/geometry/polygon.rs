use std::ops::{Add, Mul, Neg, Sub};

use super::{GeometryError, AREA_EPS, EPS};

/// Default cap on polygon complexity.
pub const DEFAULT_VERTEX_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Closed half-plane `normal · x <= offset` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub normal: Vec2,
    pub offset: f64,
}

impl HalfPlane {
    /// Signed distance; positive outside.
    pub fn eval(&self, p: Vec2) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// The opposite closed half-plane.
    pub fn flipped(&self) -> HalfPlane {
        HalfPlane {
            normal: -self.normal,
            offset: -self.offset,
        }
    }
}

/// Convex region given by its vertices in counter-clockwise order.
///
/// One vertex is a point region and two vertices a segment. With three or
/// more, every vertex is a strict convex turn: collinear vertices are
/// dropped at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self, GeometryError> {
        Self::with_cap(vertices, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(vertices: Vec<Vec2>, cap: usize) -> Result<Self, GeometryError> {
        if vertices.is_empty() {
            return Err(GeometryError::Empty);
        }
        if vertices.len() > cap {
            return Err(GeometryError::TooManyVertices {
                count: vertices.len(),
                cap,
            });
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if (vertices[i] - vertices[j]).norm() <= EPS {
                    return Err(GeometryError::DuplicateVertex(i, j));
                }
            }
        }
        if vertices.len() <= 2 {
            return Ok(ConvexPolygon { vertices });
        }
        if let Some(seg) = collinear_extremes(&vertices) {
            return Ok(ConvexPolygon { vertices: seg });
        }
        if signed_area(&vertices) < 0.0 {
            return Err(GeometryError::NotCcw);
        }
        let vertices = drop_collinear(vertices);
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let u = (b - a).normalized();
            for (k, v) in vertices.iter().enumerate() {
                if k != i && k != (i + 1) % n && u.cross(*v - a) < -EPS {
                    return Err(GeometryError::NotConvex);
                }
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn point(p: Vec2) -> Self {
        ConvexPolygon { vertices: vec![p] }
    }

    /// Axis-parallel rectangle `[x0, x1] × [y0, y1]`.
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self, GeometryError> {
        ConvexPolygon::new(vec![
            Vec2::new(x0, y0),
            Vec2::new(x1, y0),
            Vec2::new(x1, y1),
            Vec2::new(x0, y1),
        ])
    }

    /// Convex hull of arbitrary points. Points closer than [`EPS`] are
    /// merged and collinear hull vertices dropped, so the result may be a
    /// point or a segment. `None` for an empty input.
    pub fn hull(points: &[Vec2]) -> Option<Self> {
        let mut pts: Vec<Vec2> = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        let mut uniq: Vec<Vec2> = Vec::with_capacity(pts.len());
        for p in pts {
            if !uniq.iter().any(|q| (*q - p).norm() <= EPS) {
                uniq.push(p);
            }
        }
        match uniq.len() {
            0 => return None,
            1 => return Some(ConvexPolygon { vertices: uniq }),
            _ => {}
        }
        let turn = |o: Vec2, a: Vec2, b: Vec2| {
            let span = (b - o).norm();
            (a - o).cross(b - o) > EPS * span.max(1.0)
        };
        let mut lower: Vec<Vec2> = Vec::new();
        for &p in &uniq {
            while lower.len() >= 2 && !turn(lower[lower.len() - 2], lower[lower.len() - 1], p) {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Vec2> = Vec::new();
        for &p in uniq.iter().rev() {
            while upper.len() >= 2 && !turn(upper[upper.len() - 2], upper[upper.len() - 1], p) {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            let first = uniq[0];
            let last = *uniq.last().unwrap();
            return Some(ConvexPolygon {
                vertices: vec![first, last],
            });
        }
        Some(ConvexPolygon { vertices: lower })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        if self.vertices.len() < 3 {
            0.0
        } else {
            signed_area(&self.vertices)
        }
    }

    /// Vertex average; lies inside the region.
    pub fn centroid(&self) -> Vec2 {
        let n = self.vertices.len() as f64;
        let s = self
            .vertices
            .iter()
            .fold(Vec2::default(), |acc, v| acc + *v);
        s * (1.0 / n)
    }

    pub fn bounds(&self) -> (Vec2, Vec2) {
        let mut lo = self.vertices[0];
        let mut hi = lo;
        for v in &self.vertices[1..] {
            lo = Vec2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Vec2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    /// Half-planes whose intersection is the region: one per edge for a
    /// polygon, four pinning rows for a point, two line rows and two
    /// end-cap rows for a segment.
    pub fn half_planes(&self) -> Vec<HalfPlane> {
        match self.vertices.len() {
            1 => {
                let p = self.vertices[0];
                let ex = Vec2::new(1.0, 0.0);
                let ey = Vec2::new(0.0, 1.0);
                vec![
                    HalfPlane { normal: -ex, offset: -p.x },
                    HalfPlane { normal: ex, offset: p.x },
                    HalfPlane { normal: -ey, offset: -p.y },
                    HalfPlane { normal: ey, offset: p.y },
                ]
            }
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let u = (b - a).normalized();
                let n = u.perp();
                vec![
                    HalfPlane { normal: n, offset: n.dot(a) },
                    HalfPlane { normal: -n, offset: -n.dot(a) },
                    HalfPlane { normal: -u, offset: -u.dot(a) },
                    HalfPlane { normal: u, offset: u.dot(b) },
                ]
            }
            n => (0..n)
                .map(|i| {
                    let a = self.vertices[i];
                    let b = self.vertices[(i + 1) % n];
                    // outward normal of a CCW edge
                    let normal = Vec2::new(b.y - a.y, a.x - b.x).normalized();
                    HalfPlane {
                        normal,
                        offset: normal.dot(a),
                    }
                })
                .collect(),
        }
    }

    pub fn translated(&self, by: Vec2) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|v| *v + by).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> ConvexPolygon {
        assert!(factor > 0.0);
        ConvexPolygon {
            vertices: self.vertices.iter().map(|v| *v * factor).collect(),
        }
    }

    /// The part of the region inside every half-plane; `None` if empty.
    pub fn clipped(&self, planes: &[HalfPlane]) -> Option<ConvexPolygon> {
        let mut pts = self.vertices.clone();
        for h in planes {
            pts = clip_by(&pts, h);
            if pts.is_empty() {
                return None;
            }
        }
        ConvexPolygon::hull(&pts)
    }
}

fn signed_area(v: &[Vec2]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>() * 0.5
}

/// Endpoints of the input when every vertex is within tolerance of one line.
fn collinear_extremes(v: &[Vec2]) -> Option<Vec<Vec2>> {
    let (mut ia, mut ib, mut best) = (0, 1, 0.0);
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let d = (v[i] - v[j]).norm();
            if d > best {
                (ia, ib, best) = (i, j, d);
            }
        }
    }
    let u = (v[ib] - v[ia]).normalized();
    v.iter()
        .all(|p| u.cross(*p - v[ia]).abs() <= EPS)
        .then(|| vec![v[ia], v[ib]])
}

fn drop_collinear(mut v: Vec<Vec2>) -> Vec<Vec2> {
    let mut changed = true;
    while changed && v.len() > 3 {
        changed = false;
        let n = v.len();
        for i in 0..n {
            let a = v[(i + n - 1) % n];
            let b = v[i];
            let c = v[(i + 1) % n];
            let ac = c - a;
            let between = (b - a).dot(ac) > 0.0 && (c - b).dot(ac) > 0.0;
            if between && ac.normalized().cross(b - a).abs() <= EPS {
                v.remove(i);
                changed = true;
                break;
            }
        }
    }
    v
}

/// One Sutherland–Hodgman step: keep the part of the closed vertex cycle
/// inside `h`.
fn clip_by(pts: &[Vec2], h: &HalfPlane) -> Vec<Vec2> {
    let n = pts.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let cur = pts[i];
        let next = pts[(i + 1) % n];
        let dc = h.eval(cur);
        let dn = h.eval(next);
        let cur_in = dc <= EPS;
        let next_in = dn <= EPS;
        if cur_in {
            out.push(cur);
        }
        if cur_in != next_in && (dc - dn).abs() > 0.0 {
            let t = dc / (dc - dn);
            out.push(cur + (next - cur) * t);
        }
    }
    out
}

/// Inside-or-on-boundary test with tolerance [`EPS`].
pub fn contains(poly: &ConvexPolygon, p: Vec2) -> bool {
    match poly.vertices.len() {
        1 => (poly.vertices[0] - p).norm() <= EPS,
        _ => poly.half_planes().iter().all(|h| h.eval(p) <= EPS),
    }
}

/// Intersection of two convex regions, clipping `a` by every supporting
/// half-plane of `b`. Returns `None` when no vertex survives; touching
/// regions yield the shared point or segment.
pub fn clip_convex(a: &ConvexPolygon, b: &ConvexPolygon) -> Option<ConvexPolygon> {
    a.clipped(&b.half_planes())
}

/// Convex pieces of `a \ b`.
///
/// Piece k is `a` clipped by the complement of `b`'s k-th half-plane and
/// by the first k−1 half-planes, so the pieces are convex, interior-
/// disjoint, and cover the closure of the difference. Degenerate pieces
/// are dropped when `a` has area.
pub fn subtract_and_triangulate(
    a: &ConvexPolygon,
    b: &ConvexPolygon,
) -> Result<Vec<ConvexPolygon>, GeometryError> {
    let a_full = a.area() > AREA_EPS;
    if a_full && b.area() > AREA_EPS {
        let planes = a.half_planes();
        let strictly_inside = b
            .vertices
            .iter()
            .all(|v| planes.iter().all(|h| h.eval(*v) < -EPS));
        if strictly_inside {
            return Err(GeometryError::HoleTopology);
        }
    }
    match clip_convex(a, b) {
        None => return Ok(vec![a.clone()]),
        Some(common) if a_full && common.area() <= AREA_EPS => return Ok(vec![a.clone()]),
        _ => {}
    }
    let planes = b.half_planes();
    let mut pieces = Vec::new();
    for k in 0..planes.len() {
        let mut cut = vec![planes[k].flipped()];
        cut.extend_from_slice(&planes[..k]);
        let Some(piece) = a.clipped(&cut) else {
            continue;
        };
        let keep = if a_full {
            piece.area() > AREA_EPS
        } else {
            !contains(b, piece.centroid())
        };
        if keep {
            pieces.push(piece);
        }
    }
    Ok(pieces)
}
