use super::{max_separability_set, ImpreciseError, ImpreciseInstance, SeparabilityCert};
use crate::geometry::{clip_convex, ConvexPolygon, Point, Vec2, EPS};
use crate::lp::sqrt_d_approx;
use crate::mindcs::{min_diameter_apx_with, ApproxConfig, ApproxResult, IndecisiveInstance, Selection};

/// Default cap on grid nodes in the focus rectangle.
pub const DEFAULT_NODE_CAP: usize = 4_000_000;

/// Square around the apex, aligned with the wedge bisector.
#[derive(Debug, Clone, PartialEq)]
pub struct FocusRect {
    pub center: Point,
    pub axes: [Vec2; 2],
    pub half_extents: [f64; 2],
}

impl FocusRect {
    /// Coordinates of `p` in the rectangle frame.
    pub fn local(&self, p: Vec2) -> (f64, f64) {
        let w = p - self.center.to_vec2();
        (w.dot(self.axes[0]), w.dot(self.axes[1]))
    }

    pub fn world(&self, u: f64, v: f64) -> Vec2 {
        self.center.to_vec2() + self.axes[0] * u + self.axes[1] * v
    }

    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        let (u, v) = self.local(p);
        u.abs() <= self.half_extents[0] + tol && v.abs() <= self.half_extents[1] + tol
    }

    pub fn corners(&self) -> [Vec2; 4] {
        let [a, b] = self.half_extents;
        [
            self.world(-a, -b),
            self.world(a, -b),
            self.world(a, b),
            self.world(-a, b),
        ]
    }

    pub fn polygon(&self) -> ConvexPolygon {
        ConvexPolygon::hull(&self.corners()).expect("non-degenerate rectangle")
    }
}

/// The square of half-extent `2R / sin(α/2)` about the certificate apex.
///
/// A point of the wedge of one certified region within distance `R` of the
/// opposite wedge is at most `R / sin(α/2)` from the apex, so a selection
/// of diameter at most `R` lies within `2R / sin(α/2)` of it.
pub fn focus_rectangle(cert: &SeparabilityCert, r_bound: f64) -> Result<FocusRect, ImpreciseError> {
    if !(r_bound > 0.0) {
        return Err(ImpreciseError::NonPositive {
            what: "R bound",
            value: r_bound,
        });
    }
    if !(cert.alpha > 0.0) {
        return Err(ImpreciseError::NonPositive {
            what: "alpha",
            value: cert.alpha,
        });
    }
    let h = 2.0 * r_bound / (cert.alpha / 2.0).sin();
    Ok(FocusRect {
        center: cert.apex.clone(),
        axes: [cert.axis, cert.axis.perp()],
        half_extents: [h, h],
    })
}

/// Colored points from a grid over the focus rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct Discretization {
    /// Color `i` holds the points emitted for region `i`.
    pub colored: IndecisiveInstance,
    pub cell: f64,
    /// Nodes per axis.
    pub nodes_per_axis: usize,
    pub node_points: usize,
    pub completion_points: usize,
}

/// Emits every grid node inside the rectangle and a region, plus one
/// interior point for each grid cell that meets a region but none of
/// whose corners were emitted for it, so every point of a region inside
/// the rectangle is within one cell diagonal of a point of its color.
pub fn discretize(
    instance: &ImpreciseInstance,
    rect: &FocusRect,
    cell: f64,
) -> Result<Discretization, ImpreciseError> {
    discretize_with_cap(instance, rect, cell, DEFAULT_NODE_CAP)
}

pub fn discretize_with_cap(
    instance: &ImpreciseInstance,
    rect: &FocusRect,
    cell: f64,
    node_cap: usize,
) -> Result<Discretization, ImpreciseError> {
    if !(cell > 0.0) {
        return Err(ImpreciseError::NonPositive {
            what: "cell size",
            value: cell,
        });
    }
    let polys = instance.polygons()?;
    let h = rect.half_extents[0].max(rect.half_extents[1]);
    let half = (h / cell - 1e-9).ceil().max(0.0);
    let side = 2.0 * half + 1.0;
    if side * side > node_cap as f64 {
        return Err(ImpreciseError::GridTooFine(format!(
            "{side}x{side} nodes exceed {node_cap}; use a larger epsilon"
        )));
    }
    let half = half as i64;
    let side = side as usize;
    let rect_poly = rect.polygon();
    let node_at = |a: i64, b: i64| rect.world(a as f64 * cell, b as f64 * cell);
    let in_rect = |a: i64, b: i64| {
        (a as f64 * cell).abs() <= rect.half_extents[0] + EPS
            && (b as f64 * cell).abs() <= rect.half_extents[1] + EPS
    };

    let mut classes = Vec::with_capacity(polys.len());
    let (mut node_points, mut completion_points) = (0, 0);
    for (i, poly) in polys.iter().enumerate() {
        // node index window covering the region in the rectangle frame
        let (mut umin, mut umax, mut vmin, mut vmax) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for v in poly.vertices() {
            let (u, w) = rect.local(*v);
            umin = umin.min(u);
            umax = umax.max(u);
            vmin = vmin.min(w);
            vmax = vmax.max(w);
        }
        let window = |lo: f64, hi: f64| {
            let mut first = ((lo / cell).floor() as i64).max(-half);
            let mut last = ((hi / cell).floor() as i64 + 1).min(half);
            // keep at least one cell so degenerate regions on a grid line
            // still reach the completion step
            if first == last {
                if last < half {
                    last += 1;
                } else {
                    first -= 1;
                }
            }
            (first, last)
        };
        let (a0, a1) = window(umin, umax);
        let (b0, b1) = window(vmin, vmax);

        let mut points = Vec::new();
        if a0 <= a1 && b0 <= b1 {
            let width = (b1 - b0 + 1) as usize;
            let mut hit = vec![false; (a1 - a0 + 1) as usize * width];
            let slot = |a: i64, b: i64| (a - a0) as usize * width + (b - b0) as usize;
            for a in a0..=a1 {
                for b in b0..=b1 {
                    let p = node_at(a, b);
                    if in_rect(a, b) && crate::geometry::contains(poly, p) {
                        hit[slot(a, b)] = true;
                        points.push(Point::from(p));
                    }
                }
            }
            node_points += points.len();
            for a in a0..a1 {
                for b in b0..b1 {
                    let covered = hit[slot(a, b)]
                        || hit[slot(a + 1, b)]
                        || hit[slot(a, b + 1)]
                        || hit[slot(a + 1, b + 1)];
                    if covered {
                        continue;
                    }
                    let square = ConvexPolygon::hull(&[
                        node_at(a, b),
                        node_at(a + 1, b),
                        node_at(a + 1, b + 1),
                        node_at(a, b + 1),
                    ])
                    .expect("positive cell");
                    let piece = clip_convex(&square, &rect_poly)
                        .and_then(|s| clip_convex(&s, poly))
                        .map(|p| p.centroid())
                        .filter(|c| crate::geometry::contains(poly, *c));
                    if let Some(c) = piece {
                        points.push(Point::from(c));
                        completion_points += 1;
                    }
                }
            }
        }
        if points.is_empty() {
            return Err(ImpreciseError::RegionOutsideFocus(i));
        }
        classes.push(points);
    }
    Ok(Discretization {
        colored: IndecisiveInstance::new(classes)?,
        cell,
        nodes_per_axis: side,
        node_points,
        completion_points,
    })
}

/// Pipeline parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub eps: f64,
    /// Passed through to the colored solver.
    pub strict: bool,
    pub node_cap: usize,
}

impl PipelineConfig {
    pub fn new(eps: f64) -> Self {
        PipelineConfig {
            eps,
            strict: false,
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    /// Rectilinear optimum, `D_min <= R <= √2·D_min`.
    pub r_bound: f64,
    pub cert: SeparabilityCert,
    pub rect: FocusRect,
    pub cell: f64,
    pub colored_points: usize,
    pub completion_points: usize,
    pub mindcs: ApproxResult,
    /// One point per region.
    pub selection: Selection,
    /// L2 diameter of `selection`.
    pub value: f64,
    pub witness: (usize, usize),
}

pub fn min_diam_eps(instance: &ImpreciseInstance, eps: f64) -> Result<PipelineReport, ImpreciseError> {
    min_diam_eps_with(instance, &PipelineConfig::new(eps))
}

/// Separable-instance solver: certificate, rectilinear bound, focus
/// rectangle, grid of side `ε·R`, then the colored solver.
pub fn min_diam_eps_with(
    instance: &ImpreciseInstance,
    config: &PipelineConfig,
) -> Result<PipelineReport, ImpreciseError> {
    if instance.dimension() != 2 {
        return Err(ImpreciseError::NotPlanar(instance.dimension()));
    }
    if !(config.eps > 0.0 && config.eps <= 1.0) {
        return Err(ImpreciseError::InvalidEpsilon(config.eps));
    }
    let cert = max_separability_set(instance)?.ok_or(ImpreciseError::NotSeparable)?;
    let r_bound = sqrt_d_approx(instance)?.ell;
    let rect = focus_rectangle(&cert, r_bound)?;
    let cell = config.eps * r_bound;
    let disc = discretize_with_cap(instance, &rect, cell, config.node_cap)?;
    let mindcs = min_diameter_apx_with(
        &disc.colored,
        &ApproxConfig {
            strict: config.strict,
            ..ApproxConfig::new(config.eps)
        },
    )?;
    let selection = mindcs.selection.clone();
    for (i, (p, region)) in selection.points().iter().zip(instance.regions()).enumerate() {
        if !region.contains(p) {
            return Err(ImpreciseError::SelectionOutsideRegion(i));
        }
    }
    let diam = selection.diameter();
    Ok(PipelineReport {
        r_bound,
        cert,
        rect,
        cell,
        colored_points: disc.colored.num_points(),
        completion_points: disc.completion_points,
        mindcs,
        selection,
        value: diam.value,
        witness: diam.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Region;
    use crate::imprecise::{max_separability, sampling_oracle};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn cert_with(alpha: f64) -> SeparabilityCert {
        let a = ConvexPolygon::point(Vec2::new(0.0, 0.0));
        let b = ConvexPolygon::point(Vec2::new(2.0, 0.0));
        SeparabilityCert {
            alpha,
            ..max_separability(&a, &b).unwrap()
        }
    }

    fn square(x: f64, y: f64, s: f64) -> ConvexPolygon {
        ConvexPolygon::rect(x, y, x + s, y + s).unwrap()
    }

    #[test]
    fn rectangle_formula() {
        let r = focus_rectangle(&cert_with(PI / 2.0), 1.0).unwrap();
        assert!((r.half_extents[0] - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        let r = focus_rectangle(&cert_with(PI), 1.0).unwrap();
        assert!((r.half_extents[0] - 2.0).abs() < 1e-12);
        assert!(focus_rectangle(&cert_with(0.0), 1.0).is_err());
        assert!(focus_rectangle(&cert_with(1.0), 0.0).is_err());
    }

    fn axis_rect(cx: f64, cy: f64, h: f64) -> FocusRect {
        FocusRect {
            center: Point::xy(cx, cy),
            axes: [Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)],
            half_extents: [h, h],
        }
    }

    #[test]
    fn node_count_on_full_square() {
        let inst = ImpreciseInstance::from_polygons(vec![square(0.0, 0.0, 4.0)]).unwrap();
        let d = discretize(&inst, &axis_rect(2.0, 2.0, 2.0), 1.0).unwrap();
        assert_eq!(d.colored.num_points(), 25);
        assert_eq!(d.completion_points, 0);
    }

    #[test]
    fn tiny_region_gets_one_point() {
        let inst = ImpreciseInstance::from_polygons(vec![square(1.3, 1.4, 0.01)]).unwrap();
        let d = discretize(&inst, &axis_rect(2.0, 2.0, 2.0), 1.0).unwrap();
        assert_eq!(d.colored.num_points(), 1);
        let p = &d.colored.classes()[0][0];
        assert!(inst.regions()[0].contains(p));
    }

    #[test]
    fn outside_region_is_an_error() {
        let inst = ImpreciseInstance::from_polygons(vec![square(10.0, 10.0, 1.0)]).unwrap();
        assert_eq!(
            discretize(&inst, &axis_rect(2.0, 2.0, 2.0), 1.0),
            Err(ImpreciseError::RegionOutsideFocus(0))
        );
    }

    #[test]
    fn node_counts_match_a_membership_scan() {
        let polys = vec![square(0.0, 0.0, 2.0), square(1.0, 1.0, 2.0)];
        let inst = ImpreciseInstance::from_polygons(polys.clone()).unwrap();
        let rect = axis_rect(1.5, 1.5, 2.0);
        let d = discretize(&inst, &rect, 0.25).unwrap();
        for (i, poly) in polys.iter().enumerate() {
            let mut count = 0;
            for a in -8..=8 {
                for b in -8..=8 {
                    let p = Vec2::new(1.5 + a as f64 * 0.25, 1.5 + b as f64 * 0.25);
                    let (lo, hi) = poly.bounds();
                    if p.x >= lo.x - 1e-9 && p.x <= hi.x + 1e-9 && p.y >= lo.y - 1e-9 && p.y <= hi.y + 1e-9 {
                        count += 1;
                    }
                }
            }
            assert_eq!(d.colored.classes()[i].len(), count);
        }
    }

    #[test]
    fn discretization_is_faithful() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let polys: Vec<ConvexPolygon> = (0..3)
                .map(|_| {
                    let c = Vec2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
                    let pts: Vec<Vec2> = (0..rng.gen_range(1..7))
                        .map(|_| c + Vec2::new(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8)))
                        .collect();
                    ConvexPolygon::hull(&pts).unwrap()
                })
                .collect();
            let inst = ImpreciseInstance::from_polygons(polys.clone()).unwrap();
            let theta: f64 = rng.gen_range(0.0..PI);
            let rect = FocusRect {
                center: Point::xy(0.0, 0.0),
                axes: [Vec2::new(theta.cos(), theta.sin()), Vec2::new(-theta.sin(), theta.cos())],
                half_extents: [5.0, 5.0],
            };
            let cell = rng.gen_range(0.2..1.0);
            let d = discretize(&inst, &rect, cell).unwrap();
            let cells = (d.nodes_per_axis - 1).pow(2);
            assert!(d.colored.num_points() <= 3 * 2 * cells + 3 * d.nodes_per_axis.pow(2));
            for (i, class) in d.colored.classes().iter().enumerate() {
                assert!(!class.is_empty());
                for p in class {
                    assert!(inst.regions()[i].contains(p));
                    assert!(rect.contains(p.to_vec2(), 1e-9));
                }
                // every sampled point of the region has a nearby colored point
                for _ in 0..50 {
                    let vs = polys[i].vertices();
                    let mut w: Vec<f64> = vs.iter().map(|_| rng.gen_range(0.0..1.0)).collect();
                    let s: f64 = w.iter().sum();
                    w.iter_mut().for_each(|x| *x /= s);
                    let q = vs.iter().zip(&w).fold(Vec2::new(0.0, 0.0), |acc, (v, t)| acc + *v * *t);
                    let near = class
                        .iter()
                        .map(|p| (p.to_vec2() - q).norm())
                        .fold(f64::INFINITY, f64::min);
                    assert!(near <= cell * 2f64.sqrt() + 1e-9);
                }
            }
        }
    }

    #[test]
    fn pipeline_examples() {
        let inst =
            ImpreciseInstance::from_polygons(vec![square(0.0, 0.0, 1.0), square(2.0, 0.0, 1.0)]).unwrap();
        let c = 2.0 * 2f64.sqrt() + 2f64.sqrt();
        let r = min_diam_eps(&inst, 0.3).unwrap();
        assert!(r.value >= 1.0 - 1e-9);
        assert!(r.value <= 1.0 + c * 0.3);
        assert!((r.r_bound - 1.0).abs() < 1e-9);

        let pts: Vec<Region> = vec![
            ConvexPolygon::point(Vec2::new(0.0, 0.0)).into(),
            ConvexPolygon::point(Vec2::new(7.0, 3.0)).into(),
        ];
        let r = min_diam_eps(&ImpreciseInstance::new(pts).unwrap(), 0.3).unwrap();
        assert!((r.value - 58f64.sqrt()).abs() < 1e-9);

        let overlap =
            ImpreciseInstance::from_polygons(vec![square(0.0, 0.0, 2.0), square(1.0, 1.0, 2.0)]).unwrap();
        assert_eq!(min_diam_eps(&overlap, 0.3).unwrap_err(), ImpreciseError::NotSeparable);
        assert!(matches!(
            min_diam_eps(&inst, 1.5),
            Err(ImpreciseError::InvalidEpsilon(_))
        ));
    }

    #[test]
    fn pipeline_against_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let eps = 0.3;
        let c = 2.0 * 2f64.sqrt() + 2f64.sqrt();
        let res = 0.05;
        let mut checked = 0;
        while checked < 8 {
            let polys: Vec<ConvexPolygon> = (0..3)
                .map(|_| {
                    let (x, y) = (rng.gen_range(0.0..6.0), rng.gen_range(0.0..6.0));
                    square(x, y, rng.gen_range(0.3..1.5))
                })
                .collect();
            let inst = ImpreciseInstance::from_polygons(polys).unwrap();
            if max_separability_set(&inst).unwrap().is_none() {
                continue;
            }
            let oracle = sampling_oracle(&inst, res).unwrap();
            let slack = 2.0 * 2f64.sqrt() * oracle.resolution;
            let r = min_diam_eps(&inst, eps).unwrap();
            assert!(r.value >= oracle.value - slack - 1e-9);
            assert!(r.value <= (1.0 + c * eps) * oracle.value + 1e-9);
            // the oracle optimum lies in the focus rectangle
            for p in oracle.selection.points() {
                assert!(r.rect.contains(p.to_vec2(), 1e-9));
            }
            checked += 1;
        }
    }
}
