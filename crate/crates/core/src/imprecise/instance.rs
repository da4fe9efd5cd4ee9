use super::ImpreciseError;
use crate::geometry::{ConvexPolygon, HalfPlane, HalfSpace, HalfSpaceRegion, Point, Region, Vec2};
use crate::lp::{simplex_solve, LinearProgram, LpStatus, VarBounds};

/// Bounded, nonempty convex regions of one dimension.
///
/// In the plane every region also has a polygon view; half-space regions
/// are clipped from their bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpreciseInstance {
    dimension: usize,
    regions: Vec<Region>,
    boxes: Vec<(Vec<f64>, Vec<f64>)>,
    anchors: Vec<Point>,
    polygons: Vec<ConvexPolygon>,
}

impl ImpreciseInstance {
    pub fn new(regions: Vec<Region>) -> Result<Self, ImpreciseError> {
        let dimension = regions.first().ok_or(ImpreciseError::NoRegions)?.dim();
        let mut boxes = Vec::with_capacity(regions.len());
        let mut anchors = Vec::with_capacity(regions.len());
        for (i, r) in regions.iter().enumerate() {
            if r.dim() != dimension {
                return Err(ImpreciseError::DimensionMismatch {
                    expected: dimension,
                    found: r.dim(),
                });
            }
            let (bbox, anchor) = match r {
                Region::Polygon(p) => {
                    let (lo, hi) = p.bounds();
                    ((vec![lo.x, lo.y], vec![hi.x, hi.y]), Point::from(p.vertices()[0]))
                }
                Region::HalfSpaces(h) => half_space_box(i, h)?,
            };
            boxes.push(bbox);
            anchors.push(anchor);
        }
        let polygons = if dimension == 2 {
            regions
                .iter()
                .zip(&boxes)
                .zip(&anchors)
                .map(|((r, b), a)| planar_view(r, b, a))
                .collect()
        } else {
            Vec::new()
        };
        Ok(ImpreciseInstance {
            dimension,
            regions,
            boxes,
            anchors,
            polygons,
        })
    }

    pub fn from_polygons(polygons: Vec<ConvexPolygon>) -> Result<Self, ImpreciseError> {
        Self::new(polygons.into_iter().map(Region::Polygon).collect())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    /// Axis-parallel bounding box of region `i`.
    pub fn bounds(&self, i: usize) -> (&[f64], &[f64]) {
        (&self.boxes[i].0, &self.boxes[i].1)
    }

    /// Per-axis minimum over all regions.
    pub fn lower_corner(&self) -> Vec<f64> {
        (0..self.dimension)
            .map(|k| {
                self.boxes
                    .iter()
                    .map(|b| b.0[k])
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    }

    /// A fixed point of region `i`: the first vertex of a polygon, or a
    /// lexicographically extreme point of a half-space region.
    pub fn anchor(&self, i: usize) -> Point {
        self.anchors[i].clone()
    }

    /// Planar view of region `i`.
    pub fn polygon(&self, i: usize) -> Result<&ConvexPolygon, ImpreciseError> {
        self.polygons
            .get(i)
            .ok_or(ImpreciseError::NotPlanar(self.dimension))
    }

    pub fn polygons(&self) -> Result<&[ConvexPolygon], ImpreciseError> {
        if self.dimension == 2 {
            Ok(&self.polygons)
        } else {
            Err(ImpreciseError::NotPlanar(self.dimension))
        }
    }

    pub fn translated(&self, by: &[f64]) -> Self {
        let regions = self
            .regions
            .iter()
            .map(|r| match r {
                Region::Polygon(p) => Region::Polygon(p.translated(Vec2::new(by[0], by[1]))),
                Region::HalfSpaces(h) => Region::HalfSpaces(map_rows(h, |row| HalfSpace {
                    offset: row.offset + row.normal.iter().zip(by).map(|(a, t)| a * t).sum::<f64>(),
                    normal: row.normal.clone(),
                })),
            })
            .collect();
        ImpreciseInstance::new(regions).expect("translation preserves validity")
    }

    /// Scales about the origin by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        let regions = self
            .regions
            .iter()
            .map(|r| match r {
                Region::Polygon(p) => Region::Polygon(p.scaled(factor)),
                Region::HalfSpaces(h) => Region::HalfSpaces(map_rows(h, |row| HalfSpace {
                    offset: row.offset * factor,
                    normal: row.normal.clone(),
                })),
            })
            .collect();
        ImpreciseInstance::new(regions).expect("scaling preserves validity")
    }
}

fn map_rows(h: &HalfSpaceRegion, f: impl Fn(&HalfSpace) -> HalfSpace) -> HalfSpaceRegion {
    HalfSpaceRegion::new(h.dim(), h.rows().iter().map(f).collect()).expect("valid rows")
}

/// Bounding box by `2d` LPs; also detects empty and unbounded systems.
fn half_space_box(
    index: usize,
    h: &HalfSpaceRegion,
) -> Result<((Vec<f64>, Vec<f64>), Point), ImpreciseError> {
    let d = h.dim();
    let rows: Vec<Vec<f64>> = h.rows().iter().map(|r| r.normal.clone()).collect();
    let rhs: Vec<f64> = h.rows().iter().map(|r| r.offset).collect();
    let mut lo = vec![0.0; d];
    let mut hi = vec![0.0; d];
    let mut anchor = None;
    for k in 0..d {
        for sign in [1.0, -1.0] {
            let mut objective = vec![0.0; d];
            objective[k] = sign;
            let lp = LinearProgram {
                objective,
                rows: rows.clone(),
                rhs: rhs.clone(),
                bounds: vec![VarBounds::free(); d],
            };
            let s = simplex_solve(&lp)?;
            match s.status {
                LpStatus::Infeasible => return Err(ImpreciseError::EmptyRegion(index)),
                LpStatus::Unbounded => return Err(ImpreciseError::UnboundedRegion(index)),
                LpStatus::Optimal => {}
            }
            if sign > 0.0 {
                lo[k] = s.x[k];
            } else {
                hi[k] = s.x[k];
            }
            if anchor.is_none() {
                anchor = Some(Point::new(s.x).map_err(ImpreciseError::Geometry)?);
            }
        }
    }
    Ok(((lo, hi), anchor.expect("d >= 1")))
}

fn planar_view(region: &Region, bbox: &(Vec<f64>, Vec<f64>), anchor: &Point) -> ConvexPolygon {
    match region {
        Region::Polygon(p) => p.clone(),
        Region::HalfSpaces(h) => {
            let (lo, hi) = bbox;
            let corners = [
                Vec2::new(lo[0], lo[1]),
                Vec2::new(hi[0], lo[1]),
                Vec2::new(hi[0], hi[1]),
                Vec2::new(lo[0], hi[1]),
            ];
            let planes: Vec<HalfPlane> = h
                .rows()
                .iter()
                .filter_map(|r| {
                    let n = Vec2::new(r.normal[0], r.normal[1]);
                    let len = n.norm();
                    (len > 0.0).then(|| HalfPlane {
                        normal: n * (1.0 / len),
                        offset: r.offset / len,
                    })
                })
                .collect();
            ConvexPolygon::hull(&corners)
                .and_then(|b| b.clipped(&planes))
                .unwrap_or_else(|| ConvexPolygon::point(anchor.to_vec2()))
        }
    }
}
