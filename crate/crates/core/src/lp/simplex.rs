use super::{LinearProgram, LpError, LpSolution, LpStatus};

/// Smallest admissible pivot magnitude and reduced-cost threshold.
pub const PIVOT_TOL: f64 = 1e-9;
/// Phase-1 residual above which the program is declared infeasible.
pub const FEASIBILITY_TOL: f64 = 1e-7;
pub const DEFAULT_ITERATION_CAP: usize = 100_000;

/// Original variable `x_j = constant + Σ coef·y` over nonnegative columns.
struct Substitution {
    constant: f64,
    terms: Vec<(usize, f64)>,
}

/// Solves `min c·x` s.t. `A·x <= b` and the variable bounds with a dense
/// two-phase tableau simplex under Bland's rule.
pub fn simplex_solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    simplex_solve_with_cap(lp, DEFAULT_ITERATION_CAP)
}

pub fn simplex_solve_with_cap(lp: &LinearProgram, cap: usize) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let n = lp.num_vars();

    // Map every variable onto nonnegative columns.
    let mut subs = Vec::with_capacity(n);
    let mut extra_rows: Vec<(usize, f64)> = Vec::new();
    let mut cols = 0;
    for b in &lp.bounds {
        match (b.lower, b.upper) {
            (Some(l), Some(u)) if u < l => return Ok(LpSolution::infeasible(0)),
            (Some(l), upper) => {
                subs.push(Substitution {
                    constant: l,
                    terms: vec![(cols, 1.0)],
                });
                if let Some(u) = upper {
                    extra_rows.push((cols, u - l));
                }
                cols += 1;
            }
            (None, Some(u)) => {
                subs.push(Substitution {
                    constant: u,
                    terms: vec![(cols, -1.0)],
                });
                cols += 1;
            }
            (None, None) => {
                subs.push(Substitution {
                    constant: 0.0,
                    terms: vec![(cols, 1.0), (cols + 1, -1.0)],
                });
                cols += 2;
            }
        }
    }

    let mut a: Vec<Vec<f64>> = Vec::with_capacity(lp.rows.len() + extra_rows.len());
    let mut b: Vec<f64> = Vec::with_capacity(a.capacity());
    for (row, &rhs) in lp.rows.iter().zip(&lp.rhs) {
        let mut r = vec![0.0; cols];
        let mut shift = 0.0;
        for (j, &coef) in row.iter().enumerate() {
            if coef == 0.0 {
                continue;
            }
            shift += coef * subs[j].constant;
            for &(c, s) in &subs[j].terms {
                r[c] += coef * s;
            }
        }
        a.push(r);
        b.push(rhs - shift);
    }
    for &(c, ub) in &extra_rows {
        let mut r = vec![0.0; cols];
        r[c] = 1.0;
        a.push(r);
        b.push(ub);
    }
    let mut cost = vec![0.0; cols];
    for (j, &c) in lp.objective.iter().enumerate() {
        for &(col, s) in &subs[j].terms {
            cost[col] += c * s;
        }
    }

    let mut tableau = Tableau::new(&a, &b, cols);
    let mut iterations = 0;

    if tableau.num_artificial > 0 {
        tableau.set_phase1_costs();
        match tableau.optimize(false, &mut iterations, cap)? {
            Outcome::Optimal => {}
            Outcome::Unbounded => unreachable!("phase 1 is bounded below by zero"),
        }
        if -tableau.objective_rhs() > FEASIBILITY_TOL {
            return Ok(LpSolution::infeasible(iterations));
        }
        tableau.drive_out_artificials();
    }
    tableau.set_costs(&cost);
    if tableau.optimize(true, &mut iterations, cap)? == Outcome::Unbounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: Vec::new(),
            objective_value: f64::NEG_INFINITY,
            iterations,
        });
    }

    let y = tableau.primal(cols);
    let x: Vec<f64> = subs
        .iter()
        .map(|s| s.constant + s.terms.iter().map(|&(c, k)| k * y[c]).sum::<f64>())
        .collect();
    let objective_value = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective_value,
        iterations,
    })
}

#[derive(Debug, PartialEq, Eq)]
enum Outcome {
    Optimal,
    Unbounded,
}

/// Rows `0..m` are constraints, row `m` holds reduced costs; the last
/// column is the right-hand side. Column layout: structural, slack,
/// artificial.
struct Tableau {
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    m: usize,
    width: usize,
    first_artificial: usize,
    num_artificial: usize,
}

impl Tableau {
    fn new(a: &[Vec<f64>], b: &[f64], cols: usize) -> Self {
        let m = a.len();
        let negative: Vec<usize> = (0..m).filter(|&i| b[i] < 0.0).collect();
        let first_artificial = cols + m;
        let width = first_artificial + negative.len();
        let mut t = vec![vec![0.0; width + 1]; m + 1];
        let mut basis = vec![0; m];
        let mut art = first_artificial;
        for i in 0..m {
            let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
            for j in 0..cols {
                t[i][j] = sign * a[i][j];
            }
            t[i][cols + i] = sign;
            t[i][width] = sign * b[i];
            if b[i] < 0.0 {
                t[i][art] = 1.0;
                basis[i] = art;
                art += 1;
            } else {
                basis[i] = cols + i;
            }
        }
        Tableau {
            t,
            basis,
            m,
            width,
            first_artificial,
            num_artificial: negative.len(),
        }
    }

    fn objective_rhs(&self) -> f64 {
        self.t[self.m][self.width]
    }

    fn set_phase1_costs(&mut self) {
        let cost: Vec<f64> = (0..self.width)
            .map(|j| if j >= self.first_artificial { 1.0 } else { 0.0 })
            .collect();
        self.load_costs(&cost);
    }

    fn set_costs(&mut self, structural: &[f64]) {
        let mut cost = vec![0.0; self.width];
        cost[..structural.len()].copy_from_slice(structural);
        self.load_costs(&cost);
    }

    /// Reduced costs `c_j − c_B·B⁻¹A_j`; the rhs cell holds `−c_B·x_B`.
    fn load_costs(&mut self, cost: &[f64]) {
        let m = self.m;
        for j in 0..self.width {
            self.t[m][j] = cost[j];
        }
        self.t[m][self.width] = 0.0;
        for i in 0..m {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for j in 0..=self.width {
                    self.t[m][j] -= cb * self.t[i][j];
                }
            }
        }
    }

    fn optimize(
        &mut self,
        forbid_artificial: bool,
        iterations: &mut usize,
        cap: usize,
    ) -> Result<Outcome, LpError> {
        let limit = if forbid_artificial {
            self.first_artificial
        } else {
            self.width
        };
        loop {
            // Bland: lowest-index improving column
            let Some(enter) = (0..limit).find(|&j| self.t[self.m][j] < -PIVOT_TOL) else {
                return Ok(Outcome::Optimal);
            };
            // ratio test; ties broken by lowest basic variable index
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a = self.t[i][enter];
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.t[i][self.width] / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best - 1e-12
                            || (ratio <= best + 1e-12 && self.basis[i] < self.basis[r])
                        {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
            let Some((row, _)) = leave else {
                return Ok(Outcome::Unbounded);
            };
            *iterations += 1;
            if *iterations > cap {
                return Err(LpError::IterationLimit(cap));
            }
            self.pivot(row, enter);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                r[col] = 0.0;
            }
        }
        self.basis[row] = col;
    }

    /// Pivots zero-level artificials out of the basis where possible; rows
    /// left with an artificial are redundant and keep it at zero.
    fn drive_out_artificials(&mut self) {
        for i in 0..self.m {
            if self.basis[i] < self.first_artificial {
                continue;
            }
            if let Some(j) =
                (0..self.first_artificial).find(|&j| self.t[i][j].abs() > PIVOT_TOL)
            {
                self.pivot(i, j);
            }
        }
    }

    fn primal(&self, cols: usize) -> Vec<f64> {
        let mut y = vec![0.0; cols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < cols {
                y[b] = self.t[i][self.width].max(0.0);
            }
        }
        y
    }
}
