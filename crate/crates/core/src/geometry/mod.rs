//! Metric primitives and planar convex-polygon operations.
//!
//! Points are d-dimensional; polygon operations are planar and work on
//! [`Vec2`]. All side and membership tests share the absolute tolerance
//! [`EPS`].

mod polygon;
mod region;
mod tangent;

pub use polygon::{
    clip_convex, contains, subtract_and_triangulate, ConvexPolygon, HalfPlane, Vec2,
    DEFAULT_VERTEX_CAP,
};
pub use region::{HalfSpace, HalfSpaceRegion, Region};
pub use tangent::{inner_tangents, OrientedLine};

use std::fmt;

/// Absolute tolerance for membership and side-of-line tests.
pub const EPS: f64 = 1e-9;

/// Area below which a clipped piece is treated as degenerate.
pub const AREA_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point has zero dimension")]
    ZeroDimension,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("empty point set")]
    Empty,
    #[error("polygon has {count} vertices, cap is {cap}")]
    TooManyVertices { count: usize, cap: usize },
    #[error("duplicate vertices at positions {0} and {1}")]
    DuplicateVertex(usize, usize),
    #[error("vertices are in clockwise order")]
    NotCcw,
    #[error("polygon is not convex")]
    NotConvex,
    #[error("subtrahend lies strictly inside the polygon; the difference has a hole")]
    HoleTopology,
}

/// A point in d-dimensional space with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(Point { coords })
    }

    /// Planar point. Panics on non-finite input.
    pub fn xy(x: f64, y: f64) -> Self {
        Point::new(vec![x, y]).expect("finite coordinates")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    pub fn y(&self) -> f64 {
        self.coords[1]
    }

    /// The planar view of a 2-D point.
    pub fn to_vec2(&self) -> Vec2 {
        debug_assert_eq!(self.dim(), 2);
        Vec2::new(self.coords[0], self.coords[1])
    }

    pub fn translated(&self, offset: &[f64]) -> Point {
        Point {
            coords: self.coords.iter().zip(offset).map(|(c, o)| c + o).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Point {
        Point {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }
}

impl From<Vec2> for Point {
    fn from(v: Vec2) -> Self {
        Point::xy(v.x, v.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    L1,
    #[default]
    L2,
}

pub fn dist(p: &Point, q: &Point, metric: Metric) -> Result<f64, GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(dist_unchecked(p.coords(), q.coords(), metric))
}

pub(crate) fn dist_unchecked(p: &[f64], q: &[f64], metric: Metric) -> f64 {
    match metric {
        Metric::L1 => p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum(),
        Metric::L2 => p
            .iter()
            .zip(q)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt(),
    }
}

/// Diameter of a finite point set and the index pair attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiameterResult {
    pub value: f64,
    pub witness: (usize, usize),
}

/// Exact diameter by scanning all pairs. Ties keep the lexicographically
/// smallest index pair; a singleton has diameter 0 and witness (0, 0).
pub fn diameter(points: &[Point], metric: Metric) -> Result<DiameterResult, GeometryError> {
    let first = points.first().ok_or(GeometryError::Empty)?;
    let d = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: p.dim(),
        });
    }
    let mut best = DiameterResult {
        value: 0.0,
        witness: (0, 0),
    };
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let v = dist_unchecked(points[i].coords(), points[j].coords(), metric);
            if v > best.value {
                best = DiameterResult {
                    value: v,
                    witness: (i, j),
                };
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundingBox {
    pub min_corner: Point,
    pub max_corner: Point,
}

impl BoundingBox {
    pub fn extent(&self, axis: usize) -> f64 {
        self.max_corner.coords()[axis] - self.min_corner.coords()[axis]
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.coords()
            .iter()
            .zip(self.min_corner.coords().iter().zip(self.max_corner.coords()))
            .all(|(c, (lo, hi))| *c >= lo - EPS && *c <= hi + EPS)
    }
}

/// Smallest axis-parallel box containing every point.
pub fn bounding_box(points: &[Point]) -> Result<BoundingBox, GeometryError> {
    let first = points.first().ok_or(GeometryError::Empty)?;
    let mut lo = first.coords().to_vec();
    let mut hi = lo.clone();
    for p in &points[1..] {
        if p.dim() != lo.len() {
            return Err(GeometryError::DimensionMismatch {
                expected: lo.len(),
                found: p.dim(),
            });
        }
        for (k, c) in p.coords().iter().enumerate() {
            lo[k] = lo[k].min(*c);
            hi[k] = hi[k].max(*c);
        }
    }
    Ok(BoundingBox {
        min_corner: Point { coords: lo },
        max_corner: Point { coords: hi },
    })
}
