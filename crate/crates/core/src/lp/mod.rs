//! Dense linear programming and the rectilinear relaxation of MinDiam.
//!
//! Minimizing the L1 diameter of a selection is linear: with one vector
//! `s_i` per region, a gadget `d_ijk >= |s_ik − s_jk|` per pair and axis,
//! and `Σ_k d_ijk <= ℓ`, the optimum ℓ* satisfies `D_min <= ℓ* <= √d·D_min`.

mod simplex;

pub use simplex::{
    simplex_solve, simplex_solve_with_cap, DEFAULT_ITERATION_CAP, FEASIBILITY_TOL, PIVOT_TOL,
};

use std::fmt::Write as _;

use crate::geometry::{HalfSpace, Point, Region};
use crate::imprecise::ImpreciseInstance;
use crate::mindcs::Selection;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("inconsistent dimensions: {0}")]
    DimensionMismatch(String),
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("simplex exceeded {0} iterations")]
    IterationLimit(usize),
    #[error("the relaxation needs at least {needed} regions, got {found}")]
    TooFewRegions { needed: usize, found: usize },
    #[error("solver reported {0:?}")]
    Solver(LpStatus),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Optional bounds on one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarBounds {
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl VarBounds {
    pub fn nonneg() -> Self {
        VarBounds {
            lower: Some(0.0),
            upper: None,
        }
    }

    pub fn free() -> Self {
        VarBounds {
            lower: None,
            upper: None,
        }
    }

    pub fn between(lower: f64, upper: f64) -> Self {
        VarBounds {
            lower: Some(lower),
            upper: Some(upper),
        }
    }
}

/// `min objective·x` subject to `rows·x <= rhs` and per-variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub bounds: Vec<VarBounds>,
}

impl LinearProgram {
    /// Program over nonnegative variables.
    pub fn new(objective: Vec<f64>, rows: Vec<Vec<f64>>, rhs: Vec<f64>) -> Result<Self, LpError> {
        let bounds = vec![VarBounds::nonneg(); objective.len()];
        let lp = LinearProgram {
            objective,
            rows,
            rhs,
            bounds,
        };
        lp.validate()?;
        Ok(lp)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.rows.len() != self.rhs.len() {
            return Err(LpError::DimensionMismatch(format!(
                "{} rows but {} right-hand sides",
                self.rows.len(),
                self.rhs.len()
            )));
        }
        if self.bounds.len() != n {
            return Err(LpError::DimensionMismatch(format!(
                "{} variables but {} bounds",
                n,
                self.bounds.len()
            )));
        }
        if let Some((i, r)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(LpError::DimensionMismatch(format!(
                "row {} has {} coefficients, expected {}",
                i,
                r.len(),
                n
            )));
        }
        let finite = self.objective.iter().all(|v| v.is_finite())
            && self.rhs.iter().all(|v| v.is_finite())
            && self.rows.iter().flatten().all(|v| v.is_finite())
            && self
                .bounds
                .iter()
                .flat_map(|b| [b.lower, b.upper])
                .flatten()
                .all(f64::is_finite);
        if finite {
            Ok(())
        } else {
            Err(LpError::NonFinite)
        }
    }

    /// Plain-text dump: a `min` line with the objective, one `c1 c2 … <= b`
    /// line per row, and bounds as `#` comments.
    pub fn to_text(&self, names: Option<&[String]>) -> String {
        let join = |v: &[f64]| {
            v.iter()
                .map(|c| format!("{c}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        let _ = writeln!(out, "# variables {} rows {}", self.num_vars(), self.num_rows());
        if let Some(names) = names {
            let _ = writeln!(out, "# columns {}", names.join(" "));
        }
        let _ = writeln!(out, "min {}", join(&self.objective));
        for (r, b) in self.rows.iter().zip(&self.rhs) {
            let _ = writeln!(out, "{} <= {}", join(r), b);
        }
        for (j, b) in self.bounds.iter().enumerate() {
            let lo = b.lower.map_or("-inf".to_string(), |v| format!("{v}"));
            let hi = b.upper.map_or("inf".to_string(), |v| format!("{v}"));
            let _ = writeln!(out, "# bound x{j} {lo} {hi}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point; empty unless optimal.
    pub x: Vec<f64>,
    pub objective_value: f64,
    pub iterations: usize,
}

impl LpSolution {
    fn infeasible(iterations: usize) -> Self {
        LpSolution {
            status: LpStatus::Infeasible,
            x: Vec::new(),
            objective_value: f64::INFINITY,
            iterations,
        }
    }
}

/// Linear rows `a·x <= b` describing a region: one outward half-plane per
/// polygon edge, four rows for a point, two line rows plus two end caps
/// for a segment, or the given half-space list.
pub fn region_constraints(region: &Region) -> Vec<HalfSpace> {
    region.rows()
}

/// Column map of the relaxation. Every variable is a shifted coordinate,
/// `s_ik = x_ik − offset_k`, so all columns are nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct Lp3Layout {
    pub n: usize,
    pub d: usize,
    /// Region pairs `(i, j)`, `i < j`, in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
    /// Translation subtracted from every coordinate.
    pub offset: Vec<f64>,
}

impl Lp3Layout {
    pub fn s(&self, i: usize, k: usize) -> usize {
        i * self.d + k
    }

    /// Column of `d_{pairs[p], k}`.
    pub fn pair_col(&self, p: usize, k: usize) -> usize {
        self.n * self.d + p * self.d + k
    }

    pub fn dcol(&self, i: usize, j: usize, k: usize) -> Option<usize> {
        let p = self.pairs.iter().position(|&q| q == (i.min(j), i.max(j)))?;
        Some(self.pair_col(p, k))
    }

    pub fn ell(&self) -> usize {
        self.n * self.d + self.pairs.len() * self.d
    }

    pub fn num_vars(&self) -> usize {
        self.ell() + 1
    }

    /// Column names, in column order.
    pub fn names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.num_vars());
        for i in 0..self.n {
            for k in 0..self.d {
                names.push(format!("s_{i}_{k}"));
            }
        }
        for &(i, j) in &self.pairs {
            for k in 0..self.d {
                names.push(format!("d_{i}_{j}_{k}"));
            }
        }
        names.push("l".to_string());
        names
    }
}

/// The relaxation with objective `min ℓ`. Rows: one `Σ_k d_ijk − ℓ <= 0`
/// per pair, then every region row, then `±(s_ik − s_jk) − d_ijk <= 0`.
pub fn build_lp3(instance: &ImpreciseInstance) -> Result<(LinearProgram, Lp3Layout), LpError> {
    let n = instance.len();
    if n < 2 {
        return Err(LpError::TooFewRegions {
            needed: 2,
            found: n,
        });
    }
    let d = instance.dimension();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let layout = Lp3Layout {
        n,
        d,
        pairs,
        offset: instance.lower_corner(),
    };
    let cols = layout.num_vars();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();

    for p in 0..layout.pairs.len() {
        let mut r = vec![0.0; cols];
        for k in 0..d {
            r[layout.pair_col(p, k)] = 1.0;
        }
        r[layout.ell()] = -1.0;
        rows.push(r);
        rhs.push(0.0);
    }
    for (i, region) in instance.regions().iter().enumerate() {
        for h in region_constraints(region) {
            let mut r = vec![0.0; cols];
            let mut shift = 0.0;
            for k in 0..d {
                r[layout.s(i, k)] = h.normal[k];
                shift += h.normal[k] * layout.offset[k];
            }
            rows.push(r);
            rhs.push(h.offset - shift);
        }
    }
    for (p, &(i, j)) in layout.pairs.iter().enumerate() {
        for k in 0..d {
            for sign in [1.0, -1.0] {
                let mut r = vec![0.0; cols];
                r[layout.s(i, k)] = sign;
                r[layout.s(j, k)] = -sign;
                r[layout.pair_col(p, k)] = -1.0;
                rows.push(r);
                rhs.push(0.0);
            }
        }
    }
    let mut objective = vec![0.0; cols];
    objective[layout.ell()] = 1.0;
    let lp = LinearProgram {
        objective,
        rows,
        rhs,
        bounds: vec![VarBounds::nonneg(); cols],
    };
    lp.validate()?;
    Ok((lp, layout))
}

/// Result of the rectilinear relaxation.
#[derive(Debug, Clone, PartialEq)]
pub struct RectilinearApprox {
    /// Optimal rectilinear diameter ℓ*.
    pub ell: f64,
    pub selection: Selection,
    pub iterations: usize,
}

/// Solves the relaxation lexicographically: first minimize ℓ, then, with ℓ
/// capped at its optimum, minimize `Σ d_ijk` so every gadget is tight.
pub fn sqrt_d_approx(instance: &ImpreciseInstance) -> Result<RectilinearApprox, LpError> {
    if instance.len() == 1 {
        return Ok(RectilinearApprox {
            ell: 0.0,
            selection: Selection::from_points_unchecked(vec![instance.anchor(0)]),
            iterations: 0,
        });
    }
    let (mut lp, layout) = build_lp3(instance)?;
    let first = simplex_solve(&lp)?;
    if first.status != LpStatus::Optimal {
        return Err(LpError::Solver(first.status));
    }
    let ell = first.x[layout.ell()];
    lp.bounds[layout.ell()].upper = Some(ell + 1e-9 * ell.max(1.0));
    lp.objective = vec![0.0; layout.num_vars()];
    for p in 0..layout.pairs.len() {
        for k in 0..layout.d {
            lp.objective[layout.pair_col(p, k)] = 1.0;
        }
    }
    let second = simplex_solve(&lp)?;
    if second.status != LpStatus::Optimal {
        return Err(LpError::Solver(second.status));
    }
    let points = (0..layout.n)
        .map(|i| {
            let coords = (0..layout.d)
                .map(|k| second.x[layout.s(i, k)] + layout.offset[k])
                .collect();
            Point::new(coords).expect("finite solution")
        })
        .collect();
    Ok(RectilinearApprox {
        ell,
        selection: Selection::from_points_unchecked(points),
        iterations: first.iterations + second.iterations,
    })
}
