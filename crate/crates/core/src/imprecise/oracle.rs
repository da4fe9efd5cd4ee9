use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{ImpreciseError, ImpreciseInstance};
use crate::geometry::{ConvexPolygon, Point, Vec2, EPS};
use crate::mindcs::Selection;

/// Default per-region sample cap before the lattice is coarsened.
pub const DEFAULT_SAMPLE_CAP: usize = 200_000;

/// Number of times the lattice may be coarsened by a factor 2.
const MAX_COARSENING: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    /// Exact minimum diameter over the sampled selections.
    pub value: f64,
    pub selection: Selection,
    /// Lattice spacing actually used.
    pub resolution: f64,
    pub samples: Vec<usize>,
}

/// Minimum diameter over selections drawn from `resolution·Z²` points and
/// vertices of each region. Every point of a region is within
/// `√2·resolution` of a sample, so the value overshoots the optimum by at
/// most `2√2·resolution`.
pub fn sampling_oracle(
    instance: &ImpreciseInstance,
    resolution: f64,
) -> Result<OracleOutcome, ImpreciseError> {
    sampling_oracle_with_cap(instance, resolution, DEFAULT_SAMPLE_CAP)
}

pub fn sampling_oracle_with_cap(
    instance: &ImpreciseInstance,
    resolution: f64,
    cap: usize,
) -> Result<OracleOutcome, ImpreciseError> {
    if !(resolution > 0.0) {
        return Err(ImpreciseError::NonPositive {
            what: "resolution",
            value: resolution,
        });
    }
    let polys = instance.polygons()?;
    let mut r = resolution;
    let mut coarsened = 0;
    let sets = loop {
        let worst = polys.iter().map(|p| lattice_estimate(p, r)).max().unwrap_or(0);
        if worst <= cap {
            break polys.iter().map(|p| samples(p, r)).collect::<Vec<_>>();
        }
        if coarsened == MAX_COARSENING {
            return Err(ImpreciseError::OracleTooLarge {
                samples: worst,
                cap,
            });
        }
        r *= 2.0;
        coarsened += 1;
    };
    let trees: Vec<KdTree> = sets.into_iter().map(KdTree::new).collect();
    let (value, picks) = branch_and_bound(&trees);
    let points = picks
        .iter()
        .zip(&trees)
        .map(|(&k, t)| Point::from(t.points[k]))
        .collect();
    Ok(OracleOutcome {
        value,
        selection: Selection::from_points_unchecked(points),
        resolution: r,
        samples: trees.iter().map(|t| t.points.len()).collect(),
    })
}

/// Upper bound on the lattice points in the bounding box.
fn lattice_estimate(poly: &ConvexPolygon, r: f64) -> usize {
    let (lo, hi) = poly.bounds();
    let nx = ((hi.x - lo.x) / r).floor() + 2.0;
    let ny = ((hi.y - lo.y) / r).floor() + 2.0;
    (nx * ny).min(usize::MAX as f64) as usize + poly.len()
}

fn samples(poly: &ConvexPolygon, r: f64) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = poly.vertices().to_vec();
    if poly.len() < 2 {
        return out;
    }
    let planes = poly.half_planes();
    let (lo, hi) = poly.bounds();
    let i0 = ((lo.x - EPS) / r).ceil() as i64;
    let i1 = ((hi.x + EPS) / r).floor() as i64;
    for i in i0..=i1 {
        let x = i as f64 * r;
        let (mut ylo, mut yhi) = (f64::NEG_INFINITY, f64::INFINITY);
        let mut empty = false;
        for h in &planes {
            let rest = h.offset + EPS - h.normal.x * x;
            if h.normal.y > 0.0 {
                yhi = yhi.min(rest / h.normal.y);
            } else if h.normal.y < 0.0 {
                ylo = ylo.max(rest / h.normal.y);
            } else if rest < 0.0 {
                empty = true;
            }
        }
        if empty || ylo > yhi {
            continue;
        }
        let j0 = (ylo / r).ceil() as i64;
        let j1 = (yhi / r).floor() as i64;
        for j in j0..=j1 {
            let p = Vec2::new(x, j as f64 * r);
            if crate::geometry::contains(poly, p) {
                out.push(p);
            }
        }
    }
    out
}

const LEAF: usize = 4;

struct KdNode {
    lo: Vec2,
    hi: Vec2,
    start: usize,
    end: usize,
    children: Option<(usize, usize)>,
}

struct KdTree {
    points: Vec<Vec2>,
    nodes: Vec<KdNode>,
}

impl KdTree {
    fn new(mut points: Vec<Vec2>) -> Self {
        let mut nodes = Vec::new();
        let len = points.len();
        build(&mut points, 0, len, &mut nodes);
        KdTree { points, nodes }
    }
}

fn build(points: &mut [Vec2], start: usize, end: usize, nodes: &mut Vec<KdNode>) -> usize {
    let slice = &mut points[start..end];
    let mut lo = slice[0];
    let mut hi = slice[0];
    for p in slice.iter() {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let id = nodes.len();
    nodes.push(KdNode {
        lo,
        hi,
        start,
        end,
        children: None,
    });
    if end - start > LEAF {
        if hi.x - lo.x >= hi.y - lo.y {
            slice.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        } else {
            slice.sort_by(|a, b| a.y.total_cmp(&b.y).then(a.x.total_cmp(&b.x)));
        }
        let mid = start + (end - start) / 2;
        let left = build(points, start, mid, nodes);
        let right = build(points, mid, end, nodes);
        nodes[id].children = Some((left, right));
    }
    id
}

fn box_gap(a: &KdNode, b: &KdNode) -> f64 {
    let dx = (b.lo.x - a.hi.x).max(a.lo.x - b.hi.x).max(0.0);
    let dy = (b.lo.y - a.hi.y).max(a.lo.y - b.hi.y).max(0.0);
    (dx * dx + dy * dy).sqrt()
}

fn box_reach(a: &KdNode, b: &KdNode) -> f64 {
    let dx = (b.hi.x - a.lo.x).abs().max((a.hi.x - b.lo.x).abs());
    let dy = (b.hi.y - a.lo.y).abs().max((a.hi.y - b.lo.y).abs());
    (dx * dx + dy * dy).sqrt()
}

struct State {
    bound: f64,
    seq: usize,
    nodes: Vec<usize>,
    /// Regions pinned to their node's first point: no choice inside the
    /// node can change the diameter of any selection in the state.
    fixed: Vec<bool>,
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for State {}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for State {
    // min-heap on (bound, seq)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then(other.seq.cmp(&self.seq))
    }
}

/// Exact minimum diameter choosing one point per tree. Nodes are refined
/// best-first by the largest pairwise box gap, a lower bound on every
/// selection inside the boxes.
fn branch_and_bound(trees: &[KdTree]) -> (f64, Vec<usize>) {
    let m = trees.len();
    // A region whose farthest reach to every other box stays within the
    // gap bound of the remaining pairs never attains the diameter.
    let pin = |nodes: &[usize], fixed: &mut [bool]| {
        for c in 0..m {
            if fixed[c] {
                continue;
            }
            let node = |r: usize| &trees[r].nodes[nodes[r]];
            let mut rest = 0.0f64;
            let mut reach = 0.0f64;
            for i in 0..m {
                if i == c {
                    continue;
                }
                reach = reach.max(box_reach(node(c), node(i)));
                for j in i + 1..m {
                    if j != c {
                        rest = rest.max(box_gap(node(i), node(j)));
                    }
                }
            }
            if m > 1 && reach <= rest {
                fixed[c] = true;
            }
        }
    };
    let lower = |nodes: &[usize]| {
        let mut b = 0.0f64;
        for i in 0..m {
            for j in i + 1..m {
                b = b.max(box_gap(&trees[i].nodes[nodes[i]], &trees[j].nodes[nodes[j]]));
            }
        }
        b
    };
    let diam = |picks: &[usize]| {
        let mut d = 0.0f64;
        for i in 0..m {
            for j in i + 1..m {
                d = d.max((trees[i].points[picks[i]] - trees[j].points[picks[j]]).norm());
            }
        }
        d
    };
    let mut best_picks: Vec<usize> = trees.iter().map(|t| t.nodes[0].start).collect();
    let mut best = diam(&best_picks);
    let mut heap = BinaryHeap::new();
    let mut seq = 0;
    let root = vec![0; m];
    let mut fixed = vec![false; m];
    pin(&root, &mut fixed);
    heap.push(State {
        bound: lower(&root),
        seq,
        nodes: root,
        fixed,
    });
    while let Some(state) = heap.pop() {
        if state.bound >= best {
            break;
        }
        let split = (0..m)
            .filter(|&i| !state.fixed[i] && trees[i].nodes[state.nodes[i]].children.is_some())
            .max_by(|&a, &b| {
                let na = &trees[a].nodes[state.nodes[a]];
                let nb = &trees[b].nodes[state.nodes[b]];
                (na.hi - na.lo)
                    .norm()
                    .total_cmp(&(nb.hi - nb.lo).norm())
                    .then(b.cmp(&a))
            });
        let Some(i) = split else {
            // all leaves: enumerate
            let ranges: Vec<(usize, usize)> = (0..m)
                .map(|i| {
                    let n = &trees[i].nodes[state.nodes[i]];
                    if state.fixed[i] {
                        (n.start, n.start + 1)
                    } else {
                        (n.start, n.end)
                    }
                })
                .collect();
            let mut picks: Vec<usize> = ranges.iter().map(|r| r.0).collect();
            'odometer: loop {
                let d = diam(&picks);
                if d < best {
                    best = d;
                    best_picks = picks.clone();
                }
                for k in (0..m).rev() {
                    picks[k] += 1;
                    if picks[k] < ranges[k].1 {
                        continue 'odometer;
                    }
                    picks[k] = ranges[k].0;
                }
                break;
            }
            continue;
        };
        let (left, right) = trees[i].nodes[state.nodes[i]].children.expect("inner node");
        for child in [left, right] {
            let mut nodes = state.nodes.clone();
            nodes[i] = child;
            let bound = lower(&nodes);
            if bound >= best {
                continue;
            }
            let picks: Vec<usize> = (0..m).map(|r| trees[r].nodes[nodes[r]].start).collect();
            let d = diam(&picks);
            if d < best {
                best = d;
                best_picks = picks;
            }
            let mut fixed = state.fixed.clone();
            pin(&nodes, &mut fixed);
            seq += 1;
            heap.push(State {
                bound,
                seq,
                nodes,
                fixed,
            });
        }
    }
    (best, best_picks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Region;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn square(x: f64, y: f64, s: f64) -> ConvexPolygon {
        ConvexPolygon::rect(x, y, x + s, y + s).unwrap()
    }

    #[test]
    fn point_regions_are_exact() {
        let inst = ImpreciseInstance::new(vec![
            Region::from(ConvexPolygon::point(Vec2::new(0.1, 0.2))),
            Region::from(ConvexPolygon::point(Vec2::new(3.1, 4.2))),
        ])
        .unwrap();
        let o = sampling_oracle(&inst, 0.7).unwrap();
        assert!((o.value - 5.0).abs() < 1e-12);
    }

    #[test]
    fn two_squares() {
        let inst =
            ImpreciseInstance::from_polygons(vec![square(0.0, 0.0, 1.0), square(2.0, 0.0, 1.0)]).unwrap();
        let o = sampling_oracle(&inst, 0.05).unwrap();
        assert!(o.value >= 1.0 - 1e-12);
        assert!(o.value <= 1.0 + 2.0 * 2f64.sqrt() * 0.05);
        for (p, r) in o.selection.points().iter().zip(inst.regions()) {
            assert!(r.contains(p));
        }
    }

    #[test]
    fn finer_lattice_never_worse() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let polys: Vec<ConvexPolygon> = (0..3)
                .map(|_| square(rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0), rng.gen_range(0.2..1.5)))
                .collect();
            let inst = ImpreciseInstance::from_polygons(polys).unwrap();
            let coarse = sampling_oracle(&inst, 0.2).unwrap().value;
            let fine = sampling_oracle(&inst, 0.05).unwrap().value;
            assert!(fine <= coarse + 1e-12);
        }
    }

    #[test]
    fn matches_exhaustive_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let polys: Vec<ConvexPolygon> = (0..3)
                .map(|_| square(rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0), rng.gen_range(0.2..1.0)))
                .collect();
            let sets: Vec<Vec<Vec2>> = polys.iter().map(|p| samples(p, 0.25)).collect();
            let mut brute = f64::INFINITY;
            for a in &sets[0] {
                for b in &sets[1] {
                    for c in &sets[2] {
                        let d = (*a - *b).norm().max((*a - *c).norm()).max((*b - *c).norm());
                        brute = brute.min(d);
                    }
                }
            }
            let inst = ImpreciseInstance::from_polygons(polys).unwrap();
            let o = sampling_oracle(&inst, 0.25).unwrap();
            assert!((o.value - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn idle_middle_regions_keep_the_scan_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            // two far squares fix the diameter; the middle two rarely matter
            let polys = vec![
                square(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0), rng.gen_range(0.2..1.0)),
                square(rng.gen_range(6.0..7.0), rng.gen_range(0.0..1.0), rng.gen_range(0.2..1.0)),
                square(rng.gen_range(2.0..4.0), rng.gen_range(-1.0..2.0), rng.gen_range(0.2..1.0)),
                square(rng.gen_range(2.0..4.0), rng.gen_range(-1.0..2.0), rng.gen_range(0.2..1.0)),
            ];
            let sets: Vec<Vec<Vec2>> = polys.iter().map(|p| samples(p, 0.25)).collect();
            let mut brute = f64::INFINITY;
            for a in &sets[0] {
                for b in &sets[1] {
                    for c in &sets[2] {
                        for d in &sets[3] {
                            let pts = [*a, *b, *c, *d];
                            let mut diam = 0.0f64;
                            for i in 0..4 {
                                for j in i + 1..4 {
                                    diam = diam.max((pts[i] - pts[j]).norm());
                                }
                            }
                            brute = brute.min(diam);
                        }
                    }
                }
            }
            let inst = ImpreciseInstance::from_polygons(polys).unwrap();
            let o = sampling_oracle(&inst, 0.25).unwrap();
            assert!((o.value - brute).abs() < 1e-12, "{} vs {}", o.value, brute);
        }
    }

    #[test]
    fn coarsens_then_gives_up() {
        let inst = ImpreciseInstance::from_polygons(vec![square(0.0, 0.0, 10.0)]).unwrap();
        let o = sampling_oracle_with_cap(&inst, 0.01, 1000).unwrap();
        assert!(o.resolution > 0.01);
        assert!(o.samples[0] <= 1000);
        assert!(matches!(
            sampling_oracle_with_cap(&inst, 1e-6, 1000),
            Err(ImpreciseError::OracleTooLarge { .. })
        ));
    }
}
