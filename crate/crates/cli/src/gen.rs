//! Seeded random instances at desk scale.
//!
//! Every generator draws from a caller-provided [`ChaCha8Rng`], so a seed
//! pins the instance on every platform.

use mindiam::geometry::{ConvexPolygon, Point, Vec2};
use mindiam::imprecise::{common_point, max_separability_set, ImpreciseInstance};
use mindiam::mindcs::IndecisiveInstance;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Shape of an imprecise instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImpreciseKind {
    /// Independent polygons; may or may not overlap.
    Random,
    /// Some pair is disjoint with a wide separating wedge.
    Separable,
    /// All regions contain a small disc around one point.
    CommonPoint,
    /// Three pairwise-overlapping regions with no common point.
    TripleOverlap,
}

/// `m` classes of 1..=`k` points with coordinates in `[0, spread]^d`.
pub fn indecisive(rng: &mut ChaCha8Rng, d: usize, m: usize, k: usize, spread: f64) -> IndecisiveInstance {
    let classes = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=k.max(1));
            (0..size)
                .map(|_| {
                    let coords = (0..d).map(|_| rng.gen_range(0.0..=spread)).collect();
                    Point::new(coords).expect("finite coordinates")
                })
                .collect()
        })
        .collect();
    IndecisiveInstance::new(classes).expect("classes are nonempty")
}

/// Convex polygon with at most `max_vertices` vertices inside the disc of
/// `radius` around `center`. One or two vertices give a point or segment.
pub fn polygon(rng: &mut ChaCha8Rng, center: Vec2, radius: f64, max_vertices: usize) -> ConvexPolygon {
    let k = rng.gen_range(1..=max_vertices.max(1));
    if k == 1 {
        return ConvexPolygon::point(center);
    }
    loop {
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Vec2> = angles
            .iter()
            .map(|a| {
                let r = radius * rng.gen_range(0.5..=1.0);
                center + Vec2::new(a.cos(), a.sin()) * r
            })
            .collect();
        if let Some(p) = ConvexPolygon::hull(&pts) {
            return p;
        }
    }
}

/// `n` independent polygons with centers in `[0, spread]²` and radii up to
/// `size`.
pub fn imprecise_polygons(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_vertices: usize,
    spread: f64,
    size: f64,
) -> Vec<ConvexPolygon> {
    (0..n)
        .map(|_| {
            let c = Vec2::new(rng.gen_range(0.0..=spread), rng.gen_range(0.0..=spread));
            let r = size * rng.gen_range(0.3..=1.0);
            polygon(rng, c, r, max_vertices)
        })
        .collect()
}

/// Random polygons redrawn until the best separating wedge leaves an empty
/// angle of at least `min_alpha`.
pub fn separable(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_vertices: usize,
    spread: f64,
    size: f64,
    min_alpha: f64,
) -> Vec<ConvexPolygon> {
    let n = n.max(2);
    loop {
        let polys = imprecise_polygons(rng, n, max_vertices, spread, size);
        let inst = ImpreciseInstance::from_polygons(polys.clone()).expect("valid polygons");
        if let Ok(Some(cert)) = max_separability_set(&inst) {
            if cert.alpha >= min_alpha {
                return polys;
            }
        }
    }
}

/// Polygons that all contain a disc of radius `size / 10` around a common
/// point.
pub fn with_common_point(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_vertices: usize,
    spread: f64,
    size: f64,
) -> (Vec<ConvexPolygon>, Vec2) {
    let c = Vec2::new(rng.gen_range(0.0..=spread), rng.gen_range(0.0..=spread));
    let core = size / 10.0;
    let polys = (0..n)
        .map(|_| {
            let offset = Vec2::new(rng.gen_range(-size..=size), rng.gen_range(-size..=size)) * 0.5;
            let base = polygon(rng, c + offset, size, max_vertices.max(3));
            let mut pts = base.vertices().to_vec();
            for t in 0..3 {
                let a = 2.0 * PI * t as f64 / 3.0 + 0.3;
                pts.push(c + Vec2::new(a.cos(), a.sin()) * (2.0 * core));
            }
            ConvexPolygon::hull(&pts).expect("hull of a triangle and more")
        })
        .collect();
    (polys, c)
}

/// Three thin strips along the sides of a random triangle: every two meet
/// near a shared corner, but no point lies in all three.
pub fn triple_overlap(rng: &mut ChaCha8Rng, spread: f64) -> Vec<ConvexPolygon> {
    loop {
        let corners: Vec<Vec2> = (0..3)
            .map(|_| Vec2::new(rng.gen_range(0.0..=spread), rng.gen_range(0.0..=spread)))
            .collect();
        let area = (corners[1] - corners[0]).cross(corners[2] - corners[0]) / 2.0;
        let perimeter: f64 = (0..3).map(|i| (corners[(i + 1) % 3] - corners[i]).norm()).sum();
        if area.abs() < 0.05 * spread * spread {
            continue;
        }
        let inradius = 2.0 * area.abs() / perimeter;
        let half_width = inradius * rng.gen_range(0.1..=0.4);
        let strips: Vec<ConvexPolygon> = (0..3)
            .map(|i| {
                let (a, b) = (corners[i], corners[(i + 1) % 3]);
                let u = (b - a).normalized();
                let nrm = u.perp() * half_width;
                let reach = u * (2.0 * half_width);
                let (a, b) = (a - reach, b + reach);
                ConvexPolygon::hull(&[a + nrm, a - nrm, b + nrm, b - nrm]).expect("strip is a rectangle")
            })
            .collect();
        let inst = ImpreciseInstance::from_polygons(strips.clone()).expect("valid strips");
        if matches!(common_point(&inst), Ok(None)) {
            return strips;
        }
    }
}
