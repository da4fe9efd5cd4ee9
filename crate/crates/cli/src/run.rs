//! Command dispatch and the JSON run report.

use crate::error::CliError;
use crate::instance::{InstanceFile, Model};
use crate::svg::{self, Scene, Shape};
use mindiam::geometry::{Point, Vec2};
use mindiam::imprecise::{
    max_separability, sampling_oracle, solve, FocusRect, ImpreciseInstance, PipelineConfig,
    PipelineReport, SeparabilityCert, SolveOutcome,
};
use mindiam::lp::{build_lp3, sqrt_d_approx};
use mindiam::mindcs::{brute_force, min_diameter_apx_with, ApproxConfig, IndecisiveInstance, Selection};
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

pub const DEFAULT_EPS: f64 = 0.25;
pub const DEFAULT_RESOLUTION: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Mindcs,
    Imprecise,
    Lp,
    Separability,
    Oracle,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Mindcs => "mindcs",
            Command::Imprecise => "imprecise",
            Command::Lp => "lp",
            Command::Separability => "separability",
            Command::Oracle => "oracle",
        }
    }
}

/// Flags that shape a run; file destinations stay with the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub eps: f64,
    pub strict_eps: bool,
    /// Compare against the exact (indecisive) or sampling (imprecise) oracle.
    pub oracle: bool,
    /// Sampling-oracle grid step.
    pub resolution: f64,
    pub svg: bool,
    pub dump_lp: bool,
    /// Echoed in the report, never read.
    pub input: Option<String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            eps: DEFAULT_EPS,
            strict_eps: false,
            oracle: false,
            resolution: DEFAULT_RESOLUTION,
            svg: false,
            dump_lp: false,
            input: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandEcho {
    pub name: String,
    pub input: Option<String>,
    pub eps: f64,
    pub strict_eps: bool,
    pub oracle: bool,
    pub resolution: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceStats {
    pub model: String,
    /// Candidate points (indecisive) or regions (imprecise).
    pub n: usize,
    /// Colors (indecisive) or regions (imprecise).
    pub m: usize,
    pub d: usize,
}

/// Machine-readable outcome of one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: CommandEcho,
    pub instance: InstanceStats,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Value>,
    pub warnings: Vec<String>,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub report: RunReport,
    pub svg: Option<String>,
    pub lp_dump: Option<String>,
}

/// Runs `command` on a parsed instance.
pub fn run(command: Command, file: &InstanceFile, opts: &RunOptions) -> Result<RunOutput, CliError> {
    let start = Instant::now();
    let model = file.build()?;
    let stats = match &model {
        Model::Indecisive(i) => InstanceStats {
            model: "indecisive".into(),
            n: i.num_points(),
            m: i.num_colors(),
            d: i.dimension(),
        },
        Model::Imprecise(i) => InstanceStats {
            model: "imprecise".into(),
            n: i.len(),
            m: i.len(),
            d: i.dimension(),
        },
    };
    let mut out = Outcome::default();
    match (command, &model) {
        (Command::Mindcs, Model::Indecisive(inst)) => mindcs(inst, opts, &mut out)?,
        (Command::Mindcs, _) => {
            return Err(CliError::WrongModel {
                command: "mindcs",
                expected: "an indecisive instance",
            })
        }
        (Command::Imprecise, Model::Imprecise(inst)) => imprecise(inst, opts, &mut out)?,
        (Command::Lp, Model::Imprecise(inst)) => lp(inst, opts, &mut out)?,
        (Command::Separability, Model::Imprecise(inst)) => separability(inst, &mut out)?,
        (Command::Imprecise | Command::Lp | Command::Separability, _) => {
            return Err(CliError::WrongModel {
                command: command.name(),
                expected: "an imprecise instance",
            })
        }
        (Command::Oracle, Model::Indecisive(inst)) => {
            let sol = brute_force(inst)?;
            out.result = json!({
                "kind": "exact",
                "value": sol.value,
                "selection": selection_json(&sol.selection),
                "choices": sol.choices,
                "witness": witness_json(&sol.selection),
            });
            out.scene = Some(candidate_scene(inst, &sol.selection));
        }
        (Command::Oracle, Model::Imprecise(inst)) => {
            let o = sampling_oracle(inst, opts.resolution)?;
            if o.resolution != opts.resolution {
                out.warnings.push(format!(
                    "resolution coarsened from {} to {} to respect the sample cap",
                    opts.resolution, o.resolution
                ));
            }
            out.result = json!({
                "kind": "sampling",
                "value": o.value,
                "resolution": o.resolution,
                "slack": 2.0 * (inst.dimension() as f64).sqrt() * o.resolution,
                "samples": o.samples,
                "selection": selection_json(&o.selection),
                "witness": witness_json(&o.selection),
            });
            out.scene = region_scene(inst, Some(&o.selection));
        }
    }
    if opts.oracle && command == Command::Oracle {
        out.warnings.push("--oracle has no effect on the oracle command".into());
    }
    if opts.dump_lp && command != Command::Lp {
        out.warnings.push(format!("--dump-lp has no effect on the {} command", command.name()));
    }
    let svg = if opts.svg {
        match &out.scene {
            Some(scene) => {
                let mut scene = scene.clone();
                scene.title = Some(format!("{} ({} model)", command.name(), stats.model));
                Some(svg::render(&scene))
            }
            None => {
                out.warnings
                    .push(format!("no figure: SVG output needs d = 2, instance has d = {}", stats.d));
                None
            }
        }
    } else {
        None
    };
    let report = RunReport {
        command: CommandEcho {
            name: command.name().into(),
            input: opts.input.clone(),
            eps: opts.eps,
            strict_eps: opts.strict_eps,
            oracle: opts.oracle,
            resolution: opts.resolution,
        },
        instance: stats,
        result: out.result,
        oracle: out.oracle,
        warnings: out.warnings,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(RunOutput {
        report,
        svg,
        lp_dump: out.lp_dump,
    })
}

#[derive(Default)]
struct Outcome {
    result: Value,
    oracle: Option<Value>,
    warnings: Vec<String>,
    scene: Option<Scene>,
    lp_dump: Option<String>,
}

fn point_json(p: &Point) -> Value {
    json!(p.coords())
}

fn vec_json(v: Vec2) -> Value {
    json!([v.x, v.y])
}

fn selection_json(s: &Selection) -> Value {
    Value::Array(s.points().iter().map(point_json).collect())
}

fn witness_json(s: &Selection) -> Value {
    let w = s.diameter().witness;
    json!([w.0, w.1])
}

/// `approx / exact`, with `0/0 = 1`; `None` when only the oracle is zero.
fn ratio(approx: f64, exact: f64) -> Option<f64> {
    if exact > 0.0 {
        Some(approx / exact)
    } else if approx <= 1e-12 {
        Some(1.0)
    } else {
        None
    }
}

fn witness_segment(s: &Selection) -> Option<(Vec2, Vec2)> {
    if s.points().first()?.dim() != 2 {
        return None;
    }
    let (i, j) = s.diameter().witness;
    Some((s.points()[i].to_vec2(), s.points()[j].to_vec2()))
}

fn candidate_scene(inst: &IndecisiveInstance, selection: &Selection) -> Scene {
    let shapes = inst
        .classes()
        .iter()
        .enumerate()
        .flat_map(|(c, pts)| {
            pts.iter().map(move |p| Shape::Candidate {
                color: c,
                at: p.to_vec2(),
            })
        })
        .collect();
    Scene {
        shapes,
        selection: selection.points().iter().map(Point::to_vec2).collect(),
        witness: witness_segment(selection),
        ..Scene::default()
    }
}

fn region_scene(inst: &ImpreciseInstance, selection: Option<&Selection>) -> Option<Scene> {
    let polys = inst.polygons().ok()?;
    let shapes = polys
        .iter()
        .enumerate()
        .map(|(index, p)| Shape::Region {
            index,
            vertices: p.vertices().to_vec(),
        })
        .collect();
    Some(Scene {
        shapes,
        selection: selection
            .map(|s| s.points().iter().map(Point::to_vec2).collect())
            .unwrap_or_default(),
        witness: selection.and_then(witness_segment),
        ..Scene::default()
    })
}

fn mindcs(inst: &IndecisiveInstance, opts: &RunOptions, out: &mut Outcome) -> Result<(), CliError> {
    let cfg = ApproxConfig {
        strict: opts.strict_eps,
        ..ApproxConfig::new(opts.eps)
    };
    let r = min_diameter_apx_with(inst, &cfg)?;
    let d = inst.dimension() as f64;
    let factor = if opts.strict_eps {
        1.0 + opts.eps
    } else {
        1.0 + 2.0 * d.sqrt() * opts.eps
    };
    // global candidate index -> (class, index within class)
    let mut owner = Vec::with_capacity(inst.num_points());
    for (c, pts) in inst.classes().iter().enumerate() {
        owner.extend((0..pts.len()).map(|j| (c, j)));
    }
    let local: Vec<usize> = r.choices.iter().map(|&g| owner[g].1).collect();
    out.result = json!({
        "value": r.value,
        "selection_diameter": r.selection_diameter,
        "selection": selection_json(&r.selection),
        "choices": local,
        "witness": [r.witness.0, r.witness.1],
        "epsilon": r.epsilon,
        "guarantee_factor": factor,
        "pair": r.pair.map(|(p, q)| json!([p, q])),
        "cell_size": r.cell_size,
        "mask": r.mask.chosen.iter().collect::<Vec<_>>(),
        "lens_searches": r.lens_searches,
    });
    if opts.oracle {
        let exact = brute_force(inst)?;
        let observed = ratio(r.selection_diameter, exact.value);
        out.oracle = Some(json!({
            "value": exact.value,
            "selection": selection_json(&exact.selection),
            "choices": exact.choices,
            "ratio": observed,
            "bound": factor,
            "within_bound": r.selection_diameter <= factor * exact.value + 1e-9
                && exact.value <= r.selection_diameter + 1e-9,
        }));
    }
    if inst.dimension() == 2 {
        out.scene = Some(candidate_scene(inst, &r.selection));
    }
    Ok(())
}

fn cert_json(c: &SeparabilityCert) -> Value {
    json!({
        "pair": [c.pair.0, c.pair.1],
        "alpha": c.alpha,
        "apex": point_json(&c.apex),
        "axis": vec_json(c.axis),
        "lines": [
            {"point": vec_json(c.lines.0.point), "direction": vec_json(c.lines.0.direction)},
            {"point": vec_json(c.lines.1.point), "direction": vec_json(c.lines.1.direction)},
        ],
    })
}

fn rect_json(r: &FocusRect) -> Value {
    json!({
        "center": point_json(&r.center),
        "axes": [vec_json(r.axes[0]), vec_json(r.axes[1])],
        "half_extents": r.half_extents,
        "corners": r.corners().iter().map(|c| vec_json(*c)).collect::<Vec<_>>(),
    })
}

fn pipeline_json(p: &PipelineReport) -> Value {
    json!({
        "r_bound": p.r_bound,
        "certificate": cert_json(&p.cert),
        "focus_rect": rect_json(&p.rect),
        "cell": p.cell,
        "colored_points": p.colored_points,
        "completion_points": p.completion_points,
        "mindcs": {
            "value": p.mindcs.value,
            "selection_diameter": p.mindcs.selection_diameter,
            "epsilon": p.mindcs.epsilon,
            "lens_searches": p.mindcs.lens_searches,
        },
    })
}

/// Nominal factor of the planar pipeline.
fn pipeline_factor(opts: &RunOptions) -> f64 {
    let s2 = std::f64::consts::SQRT_2;
    if opts.strict_eps {
        1.0 + (1.0 + s2) * opts.eps
    } else {
        1.0 + (2.0 * s2 + s2) * opts.eps
    }
}

fn imprecise(inst: &ImpreciseInstance, opts: &RunOptions, out: &mut Outcome) -> Result<(), CliError> {
    let cfg = PipelineConfig {
        strict: opts.strict_eps,
        ..PipelineConfig::new(opts.eps)
    };
    let rep = solve(inst, &cfg)?;
    out.warnings.extend(rep.warnings.iter().cloned());
    let mut result = json!({
        "value": rep.value,
        "selection": selection_json(&rep.selection),
        "witness": witness_json(&rep.selection),
        "guarantee_factor": pipeline_factor(opts),
    });
    let obj = result.as_object_mut().expect("object literal");
    match &rep.outcome {
        SolveOutcome::CommonPoint => {
            obj.insert("path".into(), json!("common_point"));
        }
        SolveOutcome::Separable(p) => {
            obj.insert("path".into(), json!("separable"));
            obj.insert("pipeline".into(), pipeline_json(p));
        }
        SolveOutcome::Decomposed {
            decomposition,
            best,
            values,
        } => {
            obj.insert("path".into(), json!("decomposed"));
            let subs: Vec<Value> = decomposition
                .subproblems()
                .zip(values)
                .map(|(s, v)| json!({"members": s.members, "value": v}))
                .collect();
            obj.insert(
                "decomposition".into(),
                json!({
                    "triple": [decomposition.triple.0, decomposition.triple.1, decomposition.triple.2],
                    "pair": [decomposition.pair.0, decomposition.pair.1],
                    "subproblems": subs,
                    "best": best,
                }),
            );
        }
        SolveOutcome::SamplingFallback { resolution } => {
            obj.insert("path".into(), json!("sampling_fallback"));
            obj.insert("fallback_resolution".into(), json!(resolution));
        }
    }
    out.result = result;
    if opts.oracle {
        let o = sampling_oracle(inst, opts.resolution)?;
        let slack = 2.0 * std::f64::consts::SQRT_2 * o.resolution;
        let bound = pipeline_factor(opts) * o.value + slack;
        out.oracle = Some(json!({
            "value": o.value,
            "resolution": o.resolution,
            "slack": slack,
            "ratio": ratio(rep.value, o.value),
            "bound": bound,
            "within_bound": rep.value <= bound + 1e-9,
            "selection": selection_json(&o.selection),
        }));
    }
    out.scene = region_scene(inst, Some(&rep.selection));
    Ok(())
}

fn lp(inst: &ImpreciseInstance, opts: &RunOptions, out: &mut Outcome) -> Result<(), CliError> {
    let approx = sqrt_d_approx(inst)?;
    let d = inst.dimension();
    let l1 = pairwise_max(approx.selection.points(), |a, b| {
        a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y).abs()).sum()
    });
    let l2 = approx.selection.diameter().value;
    let (vars, rows) = if inst.len() >= 2 {
        let (program, layout) = build_lp3(inst)?;
        if opts.dump_lp {
            out.lp_dump = Some(program.to_text(Some(&layout.names())));
        }
        (program.num_vars(), program.num_rows())
    } else {
        if opts.dump_lp {
            out.warnings.push("single region: no LP is built, nothing to dump".into());
        }
        (0, 0)
    };
    out.result = json!({
        "ell": approx.ell,
        "selection": selection_json(&approx.selection),
        "l1_diameter": l1,
        "l2_diameter": l2,
        "variables": vars,
        "rows": rows,
        "iterations": approx.iterations,
    });
    if opts.oracle {
        if d != 2 {
            out.warnings.push("--oracle needs d = 2 for the lp command".into());
        } else {
            let o = sampling_oracle(inst, opts.resolution)?;
            let root_d = (d as f64).sqrt();
            let tol = 2.0 * root_d * o.resolution;
            let lower = o.value - tol;
            let upper = root_d * (o.value + tol);
            out.oracle = Some(json!({
                "value": o.value,
                "resolution": o.resolution,
                "lower": lower,
                "upper": upper,
                "within_bound": lower <= approx.ell + 1e-9 && approx.ell <= upper + 1e-9,
            }));
        }
    }
    out.scene = region_scene(inst, Some(&approx.selection));
    Ok(())
}

fn pairwise_max(points: &[Point], f: impl Fn(&Point, &Point) -> f64) -> f64 {
    let mut best = 0.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.max(f(&points[i], &points[j]));
        }
    }
    best
}

fn separability(inst: &ImpreciseInstance, out: &mut Outcome) -> Result<(), CliError> {
    let polys = inst.polygons()?;
    let mut pairs = Vec::new();
    let mut best: Option<SeparabilityCert> = None;
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if let Some(mut cert) = max_separability(&polys[i], &polys[j]) {
                cert.pair = (i, j);
                pairs.push(json!({"pair": [i, j], "alpha": cert.alpha}));
                if best.as_ref().map_or(true, |b| cert.alpha > b.alpha) {
                    best = Some(cert);
                }
            }
        }
    }
    out.result = json!({
        "separable": best.is_some(),
        "certificate": best.as_ref().map(cert_json),
        "pairs": pairs,
    });
    if let Some(mut scene) = region_scene(inst, None) {
        if let Some(c) = &best {
            let (lo, hi) = extent(polys);
            let reach = (hi - lo).norm().max(1e-9);
            for l in [c.lines.0, c.lines.1] {
                scene
                    .guides
                    .push((l.point - l.direction * reach, l.point + l.direction * reach));
            }
        }
        out.scene = Some(scene);
    }
    Ok(())
}

fn extent(polys: &[mindiam::geometry::ConvexPolygon]) -> (Vec2, Vec2) {
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in polys {
        let (a, b) = p.bounds();
        lo = Vec2::new(lo.x.min(a.x), lo.y.min(a.y));
        hi = Vec2::new(hi.x.max(b.x), hi.y.max(b.y));
    }
    (lo, hi)
}
