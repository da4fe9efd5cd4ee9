use super::{ConvexPolygon, GeometryError, Point, Vec2, EPS};

/// Closed half-space `normal · x <= offset` in d dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// A convex region given as an intersection of half-spaces. Emptiness and
/// boundedness are checked by the imprecise instance, which owns an LP.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpaceRegion {
    dim: usize,
    rows: Vec<HalfSpace>,
}

impl HalfSpaceRegion {
    pub fn new(dim: usize, rows: Vec<HalfSpace>) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if rows.is_empty() {
            return Err(GeometryError::Empty);
        }
        for r in &rows {
            if r.normal.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: r.normal.len(),
                });
            }
            if !r.offset.is_finite() || r.normal.iter().any(|c| !c.is_finite()) {
                return Err(GeometryError::NonFinite);
            }
        }
        Ok(HalfSpaceRegion { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[HalfSpace] {
        &self.rows
    }

    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        self.rows.iter().all(|r| {
            let lhs: f64 = r.normal.iter().zip(p.coords()).map(|(a, x)| a * x).sum();
            lhs <= r.offset + tol
        })
    }

    /// Axis-aligned box `lo ≤ x ≤ hi`.
    pub fn boxed(lo: &[f64], hi: &[f64]) -> Result<Self, GeometryError> {
        let d = lo.len();
        let mut rows = Vec::with_capacity(2 * d);
        for k in 0..d {
            let mut e = vec![0.0; d];
            e[k] = 1.0;
            rows.push(HalfSpace {
                normal: e.clone(),
                offset: hi[k],
            });
            e[k] = -1.0;
            rows.push(HalfSpace {
                normal: e,
                offset: -lo[k],
            });
        }
        HalfSpaceRegion::new(d, rows)
    }
}

/// One imprecise location: a planar convex polygon or, in any dimension, a
/// half-space system.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Polygon(ConvexPolygon),
    HalfSpaces(HalfSpaceRegion),
}

impl Region {
    pub fn dim(&self) -> usize {
        match self {
            Region::Polygon(_) => 2,
            Region::HalfSpaces(h) => h.dim(),
        }
    }

    pub fn as_polygon(&self) -> Option<&ConvexPolygon> {
        match self {
            Region::Polygon(p) => Some(p),
            Region::HalfSpaces(_) => None,
        }
    }

    /// Linear rows `a · x <= b` describing the region.
    pub fn rows(&self) -> Vec<HalfSpace> {
        match self {
            Region::Polygon(p) => p
                .half_planes()
                .into_iter()
                .map(|h| HalfSpace {
                    normal: vec![h.normal.x, h.normal.y],
                    offset: h.offset,
                })
                .collect(),
            Region::HalfSpaces(h) => h.rows().to_vec(),
        }
    }

    /// Membership with an explicit tolerance.
    pub fn contains_within(&self, p: &Point, tol: f64) -> bool {
        if p.dim() != self.dim() {
            return false;
        }
        match self {
            Region::Polygon(poly) => {
                let v = Vec2::new(p.x(), p.y());
                if poly.len() == 1 {
                    (poly.vertices()[0] - v).norm() <= tol
                } else {
                    poly.half_planes().iter().all(|h| h.eval(v) <= tol)
                }
            }
            Region::HalfSpaces(h) => h.contains(p, tol),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.contains_within(p, EPS)
    }
}

impl From<ConvexPolygon> for Region {
    fn from(p: ConvexPolygon) -> Self {
        Region::Polygon(p)
    }
}
