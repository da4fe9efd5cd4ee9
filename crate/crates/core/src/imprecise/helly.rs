use super::pipeline::{min_diam_eps_with, PipelineConfig, PipelineReport};
use super::{sampling_oracle, ImpreciseError, ImpreciseInstance};
use crate::geometry::{
    clip_convex, subtract_and_triangulate, ConvexPolygon, GeometryError, HalfPlane, Point, Region,
    Vec2,
};
use crate::lp::{simplex_solve, sqrt_d_approx, LinearProgram, LpStatus, VarBounds};
use crate::mindcs::Selection;

/// Largest recursion depth before the sampling fallback.
pub const MAX_DEPTH: usize = 2;

/// A point in every region, if one exists.
///
/// Maximizes the smallest normalized slack (capped at 1), so the point is
/// interior whenever the intersection has interior.
pub fn common_point(instance: &ImpreciseInstance) -> Result<Option<Point>, ImpreciseError> {
    let d = instance.dimension();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for region in instance.regions() {
        for h in region.rows() {
            let norm = h.normal.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm == 0.0 {
                if h.offset < 0.0 {
                    return Ok(None);
                }
                continue;
            }
            let mut r = h.normal.clone();
            r.push(norm);
            rows.push(r);
            rhs.push(h.offset);
        }
    }
    let mut objective = vec![0.0; d + 1];
    objective[d] = -1.0;
    let mut bounds = vec![VarBounds::free(); d + 1];
    bounds[d].upper = Some(1.0);
    let lp = LinearProgram {
        objective,
        rows,
        rhs,
        bounds,
    };
    let s = simplex_solve(&lp)?;
    if s.status != LpStatus::Optimal || s.x[d] < -1e-9 {
        return Ok(None);
    }
    let p = Point::new(s.x[..d].to_vec())?;
    Ok(instance.regions().iter().all(|r| r.contains(&p)).then_some(p))
}

/// A sub-instance whose region `r` stands for the original regions
/// `members[r]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubProblem {
    pub instance: ImpreciseInstance,
    pub members: Vec<Vec<usize>>,
}

impl SubProblem {
    /// Expands a selection of the sub-instance to the original regions.
    pub fn lift(&self, selection: &Selection, n: usize) -> Selection {
        let mut points = vec![None; n];
        for (p, members) in selection.points().iter().zip(&self.members) {
            for &i in members {
                points[i] = Some(p.clone());
            }
        }
        Selection::from_points_unchecked(points.into_iter().map(|p| p.expect("covered")).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// First triple without a common point.
    pub triple: (usize, usize, usize),
    /// The pair `(A, B)` split; the triple's third region is `C`.
    pub pair: (usize, usize),
    /// `A ∩ B` as one region serving both.
    pub merged: SubProblem,
    /// One sub-instance per pair of pieces of `A \ B` and `B \ A`.
    pub pieces: Vec<SubProblem>,
}

impl Decomposition {
    pub fn subproblems(&self) -> impl Iterator<Item = &SubProblem> {
        std::iter::once(&self.merged).chain(&self.pieces)
    }
}

/// Splits a pairwise-intersecting instance without a common point.
///
/// Some triple `A, B, C` has no common point. If an optimum picks both of
/// its `A` and `B` points inside `A ∩ B`, one point of `A ∩ B` serves both;
/// otherwise they lie in `A \ B` and `B \ A`. Of the triple's pairs, the
/// one with the largest overlap is split.
pub fn decompose(instance: &ImpreciseInstance) -> Result<Decomposition, ImpreciseError> {
    let polys = instance.polygons()?;
    let n = polys.len();
    for i in 0..n {
        for j in i + 1..n {
            if clip_convex(&polys[i], &polys[j]).is_none() {
                return Err(ImpreciseError::NotPairwiseIntersecting);
            }
        }
    }
    if common_point(instance)?.is_some() {
        return Err(ImpreciseError::CommonPoint);
    }
    let mut triple = None;
    'scan: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let sub = ImpreciseInstance::new(
                    [i, j, k].iter().map(|&r| instance.regions()[r].clone()).collect(),
                )?;
                if common_point(&sub)?.is_none() {
                    triple = Some((i, j, k));
                    break 'scan;
                }
            }
        }
    }
    let (i, j, k) = triple.ok_or(ImpreciseError::GridTooFine(
        "no triple without a common point found at this tolerance".to_string(),
    ))?;

    let mut pair = (i, j);
    let mut overlap = f64::NEG_INFINITY;
    for (a, b) in [(i, j), (i, k), (j, k)] {
        let area = clip_convex(&polys[a], &polys[b]).map_or(0.0, |p| p.area());
        if area > overlap {
            overlap = area;
            pair = (a, b);
        }
    }
    let (a, b) = pair;
    let meet = clip_convex(&polys[a], &polys[b]).expect("pairwise intersecting");

    let rest: Vec<usize> = (0..n).filter(|&r| r != a && r != b).collect();
    let build = |first: ConvexPolygon,
                 first_members: Vec<usize>,
                 second: Option<ConvexPolygon>|
     -> Result<SubProblem, ImpreciseError> {
        let mut regions = vec![Region::Polygon(first)];
        let mut members = vec![first_members];
        if let Some(s) = second {
            regions.push(Region::Polygon(s));
            members.push(vec![b]);
        }
        for &r in &rest {
            regions.push(instance.regions()[r].clone());
            members.push(vec![r]);
        }
        Ok(SubProblem {
            instance: ImpreciseInstance::new(regions)?,
            members,
        })
    };
    let merged = build(meet, vec![a, b], None)?;
    let a_pieces = difference(&polys[a], &polys[b]).map_err(|e| hole(e, a, b))?;
    let b_pieces = difference(&polys[b], &polys[a]).map_err(|e| hole(e, b, a))?;
    let mut pieces = Vec::with_capacity(a_pieces.len() * b_pieces.len());
    for pa in &a_pieces {
        for pb in &b_pieces {
            pieces.push(build(pa.clone(), vec![a], Some(pb.clone()))?);
        }
    }
    Ok(Decomposition {
        triple: (i, j, k),
        pair,
        merged,
        pieces,
    })
}

fn hole(e: ImpreciseError, outer: usize, inner: usize) -> ImpreciseError {
    match e {
        ImpreciseError::Geometry(GeometryError::HoleTopology) => {
            ImpreciseError::HoleTopology { outer, inner }
        }
        other => other,
    }
}

/// Convex pieces of `a \ b`. When `b` sits strictly inside `a`, `a` is
/// first cut by the horizontal chord through the centroid of `b`.
fn difference(a: &ConvexPolygon, b: &ConvexPolygon) -> Result<Vec<ConvexPolygon>, ImpreciseError> {
    match subtract_and_triangulate(a, b) {
        Ok(p) => Ok(p),
        Err(GeometryError::HoleTopology) => {
            let cy = b.centroid().y;
            let below = HalfPlane {
                normal: Vec2::new(0.0, 1.0),
                offset: cy,
            };
            let mut out = Vec::new();
            for half in [below, below.flipped()] {
                if let Some(part) = a.clipped(&[half]) {
                    out.extend(subtract_and_triangulate(&part, b)?);
                }
            }
            Ok(out)
        }
        Err(e) => Err(e.into()),
    }
}

/// How [`solve`] reached its answer.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    CommonPoint,
    Separable(Box<PipelineReport>),
    Decomposed {
        decomposition: Box<Decomposition>,
        /// Index into `decomposition.subproblems()` of the best solution.
        best: usize,
        values: Vec<f64>,
    },
    SamplingFallback { resolution: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub value: f64,
    pub selection: Selection,
    pub outcome: SolveOutcome,
    pub warnings: Vec<String>,
}

/// General planar solver: common point, separable pipeline, or
/// decomposition; after [`MAX_DEPTH`] levels of decomposition it falls
/// back to the sampling oracle at resolution `ε·R / 4`.
pub fn solve(instance: &ImpreciseInstance, config: &PipelineConfig) -> Result<SolveReport, ImpreciseError> {
    solve_at(instance, config, 0)
}

fn solve_at(
    instance: &ImpreciseInstance,
    config: &PipelineConfig,
    depth: usize,
) -> Result<SolveReport, ImpreciseError> {
    if !(config.eps > 0.0 && config.eps <= 1.0) {
        return Err(ImpreciseError::InvalidEpsilon(config.eps));
    }
    if let Some(p) = common_point(instance)? {
        return Ok(SolveReport {
            value: 0.0,
            selection: Selection::from_points_unchecked(vec![p; instance.len()]),
            outcome: SolveOutcome::CommonPoint,
            warnings: Vec::new(),
        });
    }
    let polys = instance.polygons()?;
    let separable = (0..polys.len())
        .any(|i| (i + 1..polys.len()).any(|j| clip_convex(&polys[i], &polys[j]).is_none()));
    if separable {
        let report = min_diam_eps_with(instance, config)?;
        return Ok(SolveReport {
            value: report.value,
            selection: report.selection.clone(),
            outcome: SolveOutcome::Separable(Box::new(report)),
            warnings: Vec::new(),
        });
    }
    if depth >= MAX_DEPTH {
        let r = sqrt_d_approx(instance)?.ell;
        let resolution = config.eps * r / 4.0;
        let oracle = sampling_oracle(instance, resolution)?;
        return Ok(SolveReport {
            value: oracle.value,
            selection: oracle.selection,
            outcome: SolveOutcome::SamplingFallback {
                resolution: oracle.resolution,
            },
            warnings: vec![format!(
                "decomposition deeper than {MAX_DEPTH} levels; used the sampling oracle at resolution {}",
                oracle.resolution
            )],
        });
    }
    let decomposition = decompose(instance)?;
    let mut best: Option<(usize, SolveReport)> = None;
    let mut values = Vec::new();
    let mut warnings = Vec::new();
    for (idx, sub) in decomposition.subproblems().enumerate() {
        let report = solve_at(&sub.instance, config, depth + 1)?;
        warnings.extend(report.warnings.iter().cloned());
        let selection = sub.lift(&report.selection, instance.len());
        let value = selection.diameter().value;
        values.push(value);
        if best.as_ref().map_or(true, |(_, b)| value < b.value) {
            best = Some((
                idx,
                SolveReport {
                    value,
                    selection,
                    outcome: report.outcome,
                    warnings: Vec::new(),
                },
            ));
        }
    }
    let (idx, chosen) = best.expect("at least the merged sub-instance");
    Ok(SolveReport {
        value: chosen.value,
        selection: chosen.selection,
        outcome: SolveOutcome::Decomposed {
            decomposition: Box::new(decomposition),
            best: idx,
            values,
        },
        warnings,
    })
}
