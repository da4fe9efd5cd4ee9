use super::{ImpreciseError, ImpreciseInstance};
use crate::geometry::{inner_tangents, ConvexPolygon, OrientedLine, Point, Vec2};

/// Two lines through `apex` with region `pair.0` in one closed wedge and
/// region `pair.1` in the opposite one.
///
/// `alpha` is the opening of the two wedges left empty, `π − β` where `β`
/// is the opening of the wedge holding the regions; larger is better, and a
/// single common line (points, collinear segments) gives `α = π`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityCert {
    pub pair: (usize, usize),
    pub lines: (OrientedLine, OrientedLine),
    pub alpha: f64,
    pub apex: Point,
    /// Unit direction from the apex into the wedge of `pair.0`.
    pub axis: Vec2,
}

impl SeparabilityCert {
    /// Whether `a` and `b` sit in opposite closed wedges, within `tol`.
    pub fn separates(&self, a: &ConvexPolygon, b: &ConvexPolygon, tol: f64) -> bool {
        [self.lines.0, self.lines.1].iter().all(|l| {
            let sa: Vec<f64> = a.vertices().iter().map(|v| l.signed_distance(*v)).collect();
            let sb: Vec<f64> = b.vertices().iter().map(|v| l.signed_distance(*v)).collect();
            let a_left = sa.iter().all(|s| *s >= -tol);
            let a_right = sa.iter().all(|s| *s <= tol);
            let b_left = sb.iter().all(|s| *s >= -tol);
            let b_right = sb.iter().all(|s| *s <= tol);
            (a_left && b_right) || (a_right && b_left)
        })
    }
}

/// Certificate from the inner common tangents; `None` if the regions meet.
pub fn max_separability(a: &ConvexPolygon, b: &ConvexPolygon) -> Option<SeparabilityCert> {
    let (l1, l2) = inner_tangents(a, b)?;
    // points of `a` and reflected points of `b` all lie in one wedge
    let towards: Vec<Vec2> = match l1.intersect(&l2) {
        Some(o) => a
            .vertices()
            .iter()
            .map(|v| *v - o)
            .chain(b.vertices().iter().map(|v| o - *v))
            .collect(),
        None => Vec::new(),
    };
    let (apex, alpha, axis) = match l1.intersect(&l2) {
        Some(o) => {
            let (u1, u2) = (l1.direction, l2.direction);
            let det = u1.cross(u2);
            let (mut s1, mut s2) = (0.0, 0.0);
            for w in &towards {
                s1 += w.cross(u2) / det;
                s2 += u1.cross(*w) / det;
            }
            let r1 = if s1 < 0.0 { -u1 } else { u1 };
            let r2 = if s2 < 0.0 { -u2 } else { u2 };
            let beta = r1.dot(r2).clamp(-1.0, 1.0).acos();
            (o, std::f64::consts::PI - beta, (r1 + r2).normalized())
        }
        None => {
            // one common line: the wedge collapses onto it
            let u = l1.direction;
            let o = l1.point;
            let pull: f64 = a.vertices().iter().map(|v| (*v - o).dot(u)).sum::<f64>()
                - b.vertices().iter().map(|v| (*v - o).dot(u)).sum::<f64>();
            let axis = if pull < 0.0 { -u } else { u };
            (o, std::f64::consts::PI, axis)
        }
    };
    Some(SeparabilityCert {
        pair: (0, 1),
        lines: (l1, l2),
        alpha,
        apex: apex.into(),
        axis,
    })
}

/// Best certificate over all region pairs: largest alpha, ties to the
/// lexicographically first pair.
pub fn max_separability_set(
    instance: &ImpreciseInstance,
) -> Result<Option<SeparabilityCert>, ImpreciseError> {
    let polys = instance.polygons()?;
    let mut best: Option<SeparabilityCert> = None;
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if let Some(mut cert) = max_separability(&polys[i], &polys[j]) {
                if best.as_ref().map_or(true, |b| cert.alpha > b.alpha) {
                    cert.pair = (i, j);
                    best = Some(cert);
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    /// Smallest arc covering every direction, or `None` if it is ≥ π.
    fn covering_arc(dirs: &[Vec2]) -> Option<f64> {
        let mut angles: Vec<f64> = dirs.iter().map(|d| d.y.atan2(d.x)).collect();
        angles.sort_by(f64::total_cmp);
        let n = angles.len();
        let mut gap = 0.0f64;
        for i in 0..n {
            let next = if i + 1 < n { angles[i + 1] } else { angles[0] + 2.0 * PI };
            gap = gap.max(next - angles[i]);
        }
        let arc = 2.0 * PI - gap;
        (arc < PI).then_some(arc)
    }

    /// Best empty-wedge angle over candidate apexes, by grid search and
    /// successive zooming.
    fn brute_alpha(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
        let score = |o: Vec2| {
            let mut dirs = Vec::new();
            for v in a.vertices() {
                let w = *v - o;
                if w.norm() < 1e-12 {
                    return None;
                }
                dirs.push(w);
            }
            for v in b.vertices() {
                let w = o - *v;
                if w.norm() < 1e-12 {
                    return None;
                }
                dirs.push(w);
            }
            covering_arc(&dirs).map(|beta| PI - beta)
        };
        let (alo, ahi) = a.bounds();
        let (blo, bhi) = b.bounds();
        let mut lo = Vec2::new(alo.x.min(blo.x), alo.y.min(blo.y));
        let mut hi = Vec2::new(ahi.x.max(bhi.x), ahi.y.max(bhi.y));
        let mut best = (0.0, (lo + hi) * 0.5);
        for _ in 0..30 {
            let steps = 100;
            for ix in 0..=steps {
                for iy in 0..=steps {
                    let o = Vec2::new(
                        lo.x + (hi.x - lo.x) * ix as f64 / steps as f64,
                        lo.y + (hi.y - lo.y) * iy as f64 / steps as f64,
                    );
                    if let Some(s) = score(o) {
                        if s > best.0 {
                            best = (s, o);
                        }
                    }
                }
            }
            let half = (hi - lo) * 0.1;
            lo = best.1 - half;
            hi = best.1 + half;
        }
        best.0
    }

    fn square(x: f64, y: f64, s: f64) -> ConvexPolygon {
        ConvexPolygon::rect(x, y, x + s, y + s).unwrap()
    }

    #[test]
    fn unit_squares_three_apart() {
        let a = square(0.0, 0.0, 1.0);
        let b = square(3.0, 0.0, 1.0);
        let cert = max_separability(&a, &b).unwrap();
        assert!(cert.separates(&a, &b, 1e-9));
        assert!((cert.apex.x() - 2.0).abs() < 1e-12);
        // tangents through (1,0)-(3,1) and (1,1)-(3,0): β = 2·atan(1/2)
        let expected = PI - 2.0 * 0.5f64.atan();
        assert!((cert.alpha - expected).abs() < 1e-12);
        assert!((cert.alpha - brute_alpha(&a, &b)).abs() < 1e-3);
        assert!((cert.axis.x + 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_points_give_pi() {
        let a = ConvexPolygon::point(Vec2::new(0.0, 0.0));
        let b = ConvexPolygon::point(Vec2::new(2.0, 0.0));
        let cert = max_separability(&a, &b).unwrap();
        assert_eq!(cert.alpha, PI);
        assert_eq!(cert.apex, Point::xy(1.0, 0.0));
    }

    #[test]
    fn overlapping_regions_have_none() {
        assert!(max_separability(&square(0.0, 0.0, 2.0), &square(1.0, 1.0, 2.0)).is_none());
    }

    #[test]
    fn alpha_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut checked = 0;
        while checked < 25 {
            let mk = |rng: &mut ChaCha8Rng| {
                let c = Vec2::new(rng.gen_range(0.0..8.0), rng.gen_range(0.0..8.0));
                let pts: Vec<Vec2> = (0..rng.gen_range(1..6))
                    .map(|_| c + Vec2::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
                    .collect();
                ConvexPolygon::hull(&pts).unwrap()
            };
            let (a, b) = (mk(&mut rng), mk(&mut rng));
            let Some(cert) = max_separability(&a, &b) else {
                continue;
            };
            assert!(cert.separates(&a, &b, 1e-9));
            if cert.alpha < PI {
                let brute = brute_alpha(&a, &b);
                assert!(cert.alpha >= brute - 1e-3, "{} < {}", cert.alpha, brute);
                assert!(cert.alpha <= brute + 1e-3, "{} > {}", cert.alpha, brute);
            }
            checked += 1;
        }
    }

    #[test]
    fn set_picks_best_pair() {
        let one_pair = ImpreciseInstance::from_polygons(vec![
            square(0.0, 0.0, 2.0),
            square(1.0, 1.0, 2.0),
            square(5.0, 0.0, 1.0),
        ])
        .unwrap();
        // (0,2) and (1,2) are disjoint; the farther-reaching (1,2) wedge
        let cert = max_separability_set(&one_pair).unwrap().unwrap();
        let polys = one_pair.polygons().unwrap();
        let alphas: Vec<f64> = [(0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| max_separability(&polys[i], &polys[j]).unwrap().alpha)
            .collect();
        assert_eq!(cert.alpha, alphas[0].max(alphas[1]));

        let overlapping = ImpreciseInstance::from_polygons(vec![
            square(0.0, 0.0, 2.0),
            square(1.0, 1.0, 2.0),
            square(0.5, 0.5, 2.0),
        ])
        .unwrap();
        assert!(max_separability_set(&overlapping).unwrap().is_none());

        let four = ImpreciseInstance::from_polygons(vec![
            square(0.0, 0.0, 1.0),
            square(6.0, 0.0, 1.0),
            square(0.0, 7.0, 1.0),
            square(9.0, 9.0, 1.0),
        ])
        .unwrap();
        let cert = max_separability_set(&four).unwrap().unwrap();
        let polys = four.polygons().unwrap();
        let mut best = 0.0f64;
        for i in 0..4 {
            for j in i + 1..4 {
                best = best.max(brute_alpha(&polys[i], &polys[j]));
            }
        }
        assert!((cert.alpha - best).abs() < 1e-3);
    }
}
