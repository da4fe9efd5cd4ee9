//! Minimum-diameter color selection over finite candidate sets.
//!
//! For every pair of candidate points `p, q` the solver keeps the points of
//! the lens `C_pq` (the intersection of the two balls of radius `|pq|`
//! around `p` and `q`), lays a grid of side `ε·|pq|` over their bounding box,
//! and searches cell assignments that cover every color. One point per
//! (color, cell) stands in for the whole cell, so the best assignment at the
//! optimal witness pair is within `2·√d·ε·D_min` of the optimum.

use std::collections::{BTreeMap, BTreeSet};

use crate::geometry::{bounding_box, dist_unchecked, GeometryError, Metric, Point, EPS};

/// Default cap on the number of selections the exhaustive oracle enumerates.
pub const DEFAULT_ORACLE_CAP: u128 = 1_000_000;

/// Default cap on search-tree nodes per lens before giving up.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 24;

/// Cell-count limit for exhaustive mask enumeration.
pub const FULL_ENUMERATION_CELL_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MinDcsError {
    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("instance has no color classes")]
    NoClasses,
    #[error("color class {0} is empty")]
    EmptyClass(usize),
    #[error("choice {choice} is out of range for class {class}")]
    InvalidChoice { class: usize, choice: usize },
    #[error("exhaustive search over {size} selections exceeds cap {cap}")]
    OracleTooLarge { size: u128, cap: u128 },
    #[error("grid too fine: {0}; use a larger epsilon")]
    GridTooFine(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub struct ColoredPoint {
    pub point: Point,
    pub color: ColorId,
}

/// Colored candidate sets; class `i` holds the alternatives of color `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndecisiveInstance {
    dimension: usize,
    classes: Vec<Vec<Point>>,
}

impl IndecisiveInstance {
    pub fn new(classes: Vec<Vec<Point>>) -> Result<Self, MinDcsError> {
        let first = classes.first().ok_or(MinDcsError::NoClasses)?;
        let dimension = first.first().ok_or(MinDcsError::EmptyClass(0))?.dim();
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(MinDcsError::EmptyClass(i));
            }
            if let Some(p) = class.iter().find(|p| p.dim() != dimension) {
                return Err(GeometryError::DimensionMismatch {
                    expected: dimension,
                    found: p.dim(),
                }
                .into());
            }
        }
        Ok(IndecisiveInstance { dimension, classes })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn classes(&self) -> &[Vec<Point>] {
        &self.classes
    }

    /// Number of colors `m`.
    pub fn num_colors(&self) -> usize {
        self.classes.len()
    }

    /// Total number of candidate points `n`.
    pub fn num_points(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// All candidates in global index order: class 0 first, then class 1, …
    pub fn colored_points(&self) -> Vec<ColoredPoint> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(c, class)| {
                class.iter().map(move |p| ColoredPoint {
                    point: p.clone(),
                    color: ColorId(c),
                })
            })
            .collect()
    }

    pub fn translated(&self, offset: &[f64]) -> Self {
        self.map_points(|p| p.translated(offset))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.map_points(|p| p.scaled(factor))
    }

    fn map_points(&self, f: impl Fn(&Point) -> Point) -> Self {
        IndecisiveInstance {
            dimension: self.dimension,
            classes: self
                .classes
                .iter()
                .map(|c| c.iter().map(&f).collect())
                .collect(),
        }
    }
}

/// One point per color class (or per region).
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    points: Vec<Point>,
}

impl Selection {
    /// Picks `classes[i][choices[i]]` for every class.
    pub fn from_choices(
        instance: &IndecisiveInstance,
        choices: &[usize],
    ) -> Result<Self, MinDcsError> {
        if choices.len() != instance.num_colors() {
            return Err(MinDcsError::InvalidChoice {
                class: choices.len().min(instance.num_colors()),
                choice: usize::MAX,
            });
        }
        let points = choices
            .iter()
            .enumerate()
            .map(|(class, &choice)| {
                instance.classes[class]
                    .get(choice)
                    .cloned()
                    .ok_or(MinDcsError::InvalidChoice { class, choice })
            })
            .collect::<Result<_, _>>()?;
        Ok(Selection { points })
    }

    /// Caller vouches that entry `i` belongs to class or region `i`.
    pub(crate) fn from_points_unchecked(points: Vec<Point>) -> Self {
        Selection { points }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn diameter(&self) -> crate::geometry::DiameterResult {
        crate::geometry::diameter(&self.points, Metric::L2).expect("non-empty selection")
    }
}

/// Cell coordinates in a [`Grid`].
pub type CellIndex = Vec<usize>;

/// Uniform grid anchored at the bounding-box minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub origin: Point,
    pub cell_size: f64,
    pub extent: Vec<usize>,
}

impl Grid {
    /// Covers the bounding box of `points` with cells of side `cell_size`.
    pub fn covering(points: &[&Point], cell_size: f64) -> Result<Self, MinDcsError> {
        assert!(cell_size > 0.0);
        let owned: Vec<Point> = points.iter().map(|p| (*p).clone()).collect();
        let bbox = bounding_box(&owned)?;
        let extent = (0..bbox.min_corner.dim())
            .map(|k| ((bbox.extent(k) / cell_size).ceil() as usize).max(1))
            .collect();
        Ok(Grid {
            origin: bbox.min_corner,
            cell_size,
            extent,
        })
    }

    /// Cell of `p`; points on the upper boundary fall into the last cell.
    pub fn cell_of(&self, p: &Point) -> CellIndex {
        p.coords()
            .iter()
            .zip(self.origin.coords())
            .zip(&self.extent)
            .map(|((c, o), &n)| {
                let k = ((c - o) / self.cell_size).floor().max(0.0) as usize;
                k.min(n - 1)
            })
            .collect()
    }

    pub fn cell_count(&self) -> usize {
        self.extent.iter().product()
    }

    /// Diameter of one cell.
    pub fn cell_diameter(&self) -> f64 {
        self.cell_size * (self.extent.len() as f64).sqrt()
    }
}

/// Cells assigned the value 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CellMask {
    pub chosen: BTreeSet<CellIndex>,
}

/// Whether `x` lies in the lens of `p` and `q`.
pub fn in_lens(p: &Point, q: &Point, x: &Point) -> bool {
    let r = dist_unchecked(p.coords(), q.coords(), Metric::L2);
    dist_unchecked(x.coords(), p.coords(), Metric::L2) <= r + EPS
        && dist_unchecked(x.coords(), q.coords(), Metric::L2) <= r + EPS
}

/// True iff every color in `0..colors` occurs among `points`.
pub fn is_c_legal(points: &[ColoredPoint], colors: usize) -> bool {
    let mut seen = vec![false; colors];
    for p in points {
        if let Some(s) = seen.get_mut(p.color.0) {
            *s = true;
        }
    }
    colors > 0 && seen.iter().all(|s| *s)
}

/// Exact optimum by enumerating selections.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    pub value: f64,
    pub selection: Selection,
    /// Index into each class.
    pub choices: Vec<usize>,
}

pub fn brute_force(instance: &IndecisiveInstance) -> Result<OracleSolution, MinDcsError> {
    brute_force_with_cap(instance, DEFAULT_ORACLE_CAP)
}

/// Exhaustive search in lexicographic selection order; the first selection
/// attaining the minimum wins. Fails if `Π |P_i|` exceeds `cap`.
pub fn brute_force_with_cap(
    instance: &IndecisiveInstance,
    cap: u128,
) -> Result<OracleSolution, MinDcsError> {
    let size = instance
        .classes
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if size > cap {
        return Err(MinDcsError::OracleTooLarge { size, cap });
    }
    let m = instance.num_colors();
    let mut best = (f64::INFINITY, vec![0; m]);
    let mut current = Vec::with_capacity(m);
    brute_dfs(instance, &mut current, 0.0, &mut best);
    let selection = Selection::from_choices(instance, &best.1)?;
    Ok(OracleSolution {
        value: best.0,
        selection,
        choices: best.1,
    })
}

fn brute_dfs(
    instance: &IndecisiveInstance,
    current: &mut Vec<usize>,
    partial: f64,
    best: &mut (f64, Vec<usize>),
) {
    let depth = current.len();
    if depth == instance.num_colors() {
        if partial < best.0 {
            *best = (partial, current.clone());
        }
        return;
    }
    for (k, p) in instance.classes[depth].iter().enumerate() {
        let mut reach = partial;
        for (c, &choice) in current.iter().enumerate() {
            let d = dist_unchecked(p.coords(), instance.classes[c][choice].coords(), Metric::L2);
            reach = reach.max(d);
        }
        if reach >= best.0 {
            continue;
        }
        current.push(k);
        brute_dfs(instance, current, reach, best);
        current.pop();
    }
}

/// Outcome of the cell search inside one lens.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSearch {
    /// Diameter of the cell representatives of the winning mask.
    pub value: f64,
    /// True diameter of `selection`.
    pub selection_diameter: f64,
    pub mask: CellMask,
    /// Per color, the index (into the searched points) of the chosen point.
    pub selection: Vec<usize>,
    pub grid: Grid,
}

fn check_eps(eps: f64) -> Result<(), MinDcsError> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(MinDcsError::InvalidEpsilon(eps))
    }
}

/// Grid search over the lens points `points` for the witness pair `p, q`.
///
/// Every color is assigned a non-empty cell that contains it; the point of
/// that color with the lowest index in the cell is selected. Assignments
/// are ranked by the true diameter of the selected points. `None` when the
/// points do not cover every color.
pub fn diameter_apx(
    points: &[ColoredPoint],
    colors: usize,
    p: &Point,
    q: &Point,
    eps: f64,
) -> Result<Option<CellSearch>, MinDcsError> {
    check_eps(eps)?;
    let delta = dist_unchecked(p.coords(), q.coords(), Metric::L2);
    if delta <= 0.0 {
        return Err(MinDcsError::InvalidEpsilon(eps));
    }
    if !is_c_legal(points, colors) {
        return Ok(None);
    }
    let refs: Vec<&Point> = points.iter().map(|c| &c.point).collect();
    let color_of: Vec<usize> = points.iter().map(|c| c.color.0).collect();
    let subset: Vec<usize> = (0..points.len()).collect();
    search_lens(
        &refs,
        &color_of,
        &subset,
        colors,
        eps * delta,
        f64::INFINITY,
        DEFAULT_SEARCH_BUDGET,
    )
}

struct CellData {
    rep: usize,
    first_of_color: Vec<Option<usize>>,
}

fn bucket(
    points: &[&Point],
    colors_of: &[usize],
    subset: &[usize],
    colors: usize,
    grid: &Grid,
) -> BTreeMap<CellIndex, CellData> {
    let mut cells: BTreeMap<CellIndex, CellData> = BTreeMap::new();
    for &i in subset {
        let cell = cells.entry(grid.cell_of(points[i])).or_insert(CellData {
            rep: i,
            first_of_color: vec![None; colors],
        });
        let slot = &mut cell.first_of_color[colors_of[i]];
        if slot.is_none() {
            *slot = Some(i);
        }
    }
    cells
}

fn search_lens(
    points: &[&Point],
    colors_of: &[usize],
    subset: &[usize],
    colors: usize,
    cell_size: f64,
    bound: f64,
    budget: u64,
) -> Result<Option<CellSearch>, MinDcsError> {
    let members: Vec<&Point> = subset.iter().map(|&i| points[i]).collect();
    let grid = Grid::covering(&members, cell_size)?;
    let cells = bucket(points, colors_of, subset, colors, &grid);
    let cell_keys: Vec<&CellIndex> = cells.keys().collect();

    // candidates[c] = (cell position, point index) for every cell holding c
    let mut candidates: Vec<Vec<(usize, usize)>> = vec![Vec::new(); colors];
    for (pos, data) in cells.values().enumerate() {
        for (c, first) in data.first_of_color.iter().enumerate() {
            if let Some(i) = first {
                candidates[c].push((pos, *i));
            }
        }
    }
    let mut order: Vec<usize> = (0..colors).collect();
    order.sort_by_key(|&c| (candidates[c].len(), c));

    let mut search = AssignmentSearch {
        points,
        candidates: &candidates,
        order: &order,
        chosen: Vec::with_capacity(colors),
        best: None,
        bound,
        visits: 0,
        budget,
    };
    search.run(0, 0.0)?;
    let Some((sel_diam, picks)) = search.best else {
        return Ok(None);
    };

    let mut selection = vec![0; colors];
    let mut mask = CellMask::default();
    let mut reps = BTreeSet::new();
    for (k, &(pos, idx)) in picks.iter().enumerate() {
        selection[order[k]] = idx;
        mask.chosen.insert(cell_keys[pos].clone());
        reps.insert(cells[cell_keys[pos]].rep);
    }
    let rep_points: Vec<Point> = reps.iter().map(|&i| points[i].clone()).collect();
    let value = crate::geometry::diameter(&rep_points, Metric::L2)?.value;
    Ok(Some(CellSearch {
        value,
        selection_diameter: sel_diam,
        mask,
        selection,
        grid,
    }))
}

struct AssignmentSearch<'a> {
    points: &'a [&'a Point],
    candidates: &'a [Vec<(usize, usize)>],
    order: &'a [usize],
    chosen: Vec<(usize, usize)>,
    best: Option<(f64, Vec<(usize, usize)>)>,
    bound: f64,
    visits: u64,
    budget: u64,
}

impl AssignmentSearch<'_> {
    fn run(&mut self, depth: usize, partial: f64) -> Result<(), MinDcsError> {
        if depth == self.order.len() {
            if partial < self.bound {
                self.bound = partial;
                self.best = Some((partial, self.chosen.clone()));
            }
            return Ok(());
        }
        for &(pos, idx) in &self.candidates[self.order[depth]] {
            self.visits += 1;
            if self.visits > self.budget {
                return Err(MinDcsError::GridTooFine(format!(
                    "cell search exceeded {} nodes",
                    self.budget
                )));
            }
            let p = self.points[idx].coords();
            let mut reach = partial;
            for &(_, j) in &self.chosen {
                reach = reach.max(dist_unchecked(p, self.points[j].coords(), Metric::L2));
                if reach >= self.bound {
                    break;
                }
            }
            if reach >= self.bound {
                continue;
            }
            self.chosen.push((pos, idx));
            self.run(depth + 1, reach)?;
            self.chosen.pop();
        }
        Ok(())
    }
}

/// How legal masks are enumerated when minimizing the representative
/// diameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskEnumeration {
    /// Every subset of the non-empty cells.
    Full,
    /// Only unions of one covering cell per color; contains every
    /// inclusion-minimal legal mask.
    Minimal,
}

/// Minimum representative diameter over legal masks of `grid`, where each
/// non-empty cell is represented by its lowest-index point.
pub fn representative_minimum(
    points: &[ColoredPoint],
    colors: usize,
    grid: &Grid,
    enumeration: MaskEnumeration,
) -> Result<Option<(f64, CellMask)>, MinDcsError> {
    let refs: Vec<&Point> = points.iter().map(|c| &c.point).collect();
    let color_of: Vec<usize> = points.iter().map(|c| c.color.0).collect();
    let subset: Vec<usize> = (0..points.len()).collect();
    let cells = bucket(&refs, &color_of, &subset, colors, grid);
    let keys: Vec<&CellIndex> = cells.keys().collect();
    let data: Vec<&CellData> = cells.values().collect();
    let rep_diam = |positions: &BTreeSet<usize>| {
        let reps: Vec<Point> = positions.iter().map(|&k| refs[data[k].rep].clone()).collect();
        crate::geometry::diameter(&reps, Metric::L2).map(|d| d.value)
    };
    let to_mask = |positions: &BTreeSet<usize>| CellMask {
        chosen: positions.iter().map(|&k| keys[k].clone()).collect(),
    };
    let mut best: Option<(f64, BTreeSet<usize>)> = None;
    match enumeration {
        MaskEnumeration::Full => {
            if data.len() > FULL_ENUMERATION_CELL_CAP {
                return Err(MinDcsError::GridTooFine(format!(
                    "{} non-empty cells exceed {}",
                    data.len(),
                    FULL_ENUMERATION_CELL_CAP
                )));
            }
            for bits in 1u32..(1u32 << data.len()) {
                let positions: BTreeSet<usize> =
                    (0..data.len()).filter(|k| bits & (1 << k) != 0).collect();
                let legal = (0..colors).all(|c| {
                    positions
                        .iter()
                        .any(|&k| data[k].first_of_color[c].is_some())
                });
                if !legal {
                    continue;
                }
                let v = rep_diam(&positions)?;
                if best.as_ref().map_or(true, |(b, _)| v < *b) {
                    best = Some((v, positions));
                }
            }
        }
        MaskEnumeration::Minimal => {
            let per_color: Vec<Vec<usize>> = (0..colors)
                .map(|c| {
                    (0..data.len())
                        .filter(|&k| data[k].first_of_color[c].is_some())
                        .collect()
                })
                .collect();
            let mut stack = BTreeSet::new();
            minimal_dfs(&per_color, 0, &mut stack, &mut |mask| {
                let v = rep_diam(mask).expect("non-empty mask");
                if best.as_ref().map_or(true, |(b, _)| v < *b) {
                    best = Some((v, mask.clone()));
                }
            });
        }
    }
    Ok(best.map(|(v, positions)| (v, to_mask(&positions))))
}

fn minimal_dfs(
    per_color: &[Vec<usize>],
    color: usize,
    mask: &mut BTreeSet<usize>,
    visit: &mut dyn FnMut(&BTreeSet<usize>),
) {
    if color == per_color.len() {
        visit(mask);
        return;
    }
    if per_color[color].iter().any(|k| mask.contains(k)) {
        minimal_dfs(per_color, color + 1, mask, visit);
        return;
    }
    for &k in &per_color[color] {
        mask.insert(k);
        minimal_dfs(per_color, color + 1, mask, visit);
        mask.remove(&k);
    }
}

/// Solver parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxConfig {
    pub eps: f64,
    /// Shrink the grid to `ε / (2√d)` so the selection is within `(1+ε)`.
    pub strict: bool,
    pub search_budget: u64,
}

impl ApproxConfig {
    pub fn new(eps: f64) -> Self {
        ApproxConfig {
            eps,
            strict: false,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }

    pub fn effective_eps(&self, dimension: usize) -> f64 {
        if self.strict {
            self.eps / (2.0 * (dimension as f64).sqrt())
        } else {
            self.eps
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    /// Representative diameter of the winning mask.
    pub value: f64,
    /// True diameter of `selection`; within `(1 + 2√d·ε)` of the optimum.
    pub selection_diameter: f64,
    pub selection: Selection,
    /// Global candidate index chosen for each color.
    pub choices: Vec<usize>,
    /// Selection indices of the diameter witness.
    pub witness: (usize, usize),
    /// Grid parameter actually used.
    pub epsilon: f64,
    /// Global indices of the winning lens pair; `None` for the coincident
    /// and single-color shortcuts.
    pub pair: Option<(usize, usize)>,
    pub mask: CellMask,
    pub cell_size: f64,
    /// Number of lenses searched.
    pub lens_searches: usize,
}

pub fn min_diameter_apx(
    instance: &IndecisiveInstance,
    eps: f64,
) -> Result<ApproxResult, MinDcsError> {
    min_diameter_apx_with(instance, &ApproxConfig::new(eps))
}

pub fn min_diameter_apx_with(
    instance: &IndecisiveInstance,
    config: &ApproxConfig,
) -> Result<ApproxResult, MinDcsError> {
    check_eps(config.eps)?;
    let eps = config.effective_eps(instance.dimension());
    let m = instance.num_colors();
    let colored = instance.colored_points();
    let points: Vec<&Point> = colored.iter().map(|c| &c.point).collect();
    let colors_of: Vec<usize> = colored.iter().map(|c| c.color.0).collect();

    if m == 1 {
        return Ok(trivial_result(instance, vec![0], eps));
    }
    if let Some(choices) = coincident_selection(&points, &colors_of, m) {
        return Ok(trivial_result(instance, choices, eps));
    }

    // Only a pair of differently colored points with
    // `lower <= |pq| <= upper` can be the diameter witness of an optimum.
    let (lower, upper) = witness_range(&points, &colors_of, m);
    let n = points.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if colors_of[i] == colors_of[j] {
                continue;
            }
            let delta = dist_unchecked(points[i].coords(), points[j].coords(), Metric::L2);
            if delta > 0.0 && delta >= lower && delta <= upper {
                pairs.push((delta, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut best: Option<((usize, usize), CellSearch)> = None;
    let mut lens_searches = 0;
    let mut lens = Vec::with_capacity(n);
    let mut seen = vec![usize::MAX; m];
    for (stamp, &(delta, i, j)) in pairs.iter().enumerate() {
        let bound = best
            .as_ref()
            .map_or(f64::INFINITY, |(_, b)| b.selection_diameter);
        if delta > bound {
            break;
        }
        lens.clear();
        let mut covered = 0;
        for k in 0..n {
            let x = points[k].coords();
            if dist_unchecked(x, points[i].coords(), Metric::L2) <= delta + EPS
                && dist_unchecked(x, points[j].coords(), Metric::L2) <= delta + EPS
            {
                lens.push(k);
                if seen[colors_of[k]] != stamp {
                    seen[colors_of[k]] = stamp;
                    covered += 1;
                }
            }
        }
        if covered < m {
            continue;
        }
        lens_searches += 1;
        if let Some(found) = search_lens(
            &points,
            &colors_of,
            &lens,
            m,
            eps * delta,
            bound,
            config.search_budget,
        )? {
            best = Some(((i, j), found));
        }
    }
    let ((i, j), found) = best.expect("the optimal witness pair is always legal");
    let selection = Selection::from_points_unchecked(
        found.selection.iter().map(|&k| points[k].clone()).collect(),
    );
    let witness = selection.diameter().witness;
    Ok(ApproxResult {
        value: found.value,
        selection_diameter: found.selection_diameter,
        selection,
        choices: found.selection,
        witness,
        epsilon: eps,
        pair: Some((i, j)),
        mask: found.mask,
        cell_size: found.grid.cell_size,
        lens_searches,
    })
}

/// Bounds on the optimal diameter: the largest gap between two color
/// classes, and the diameter of a nearest-neighbour selection around each
/// point of the smallest class.
fn witness_range(points: &[&Point], colors_of: &[usize], m: usize) -> (f64, f64) {
    let mut gap = vec![f64::INFINITY; m * m];
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (a, b) = (colors_of[i], colors_of[j]);
            if a != b {
                let d = dist_unchecked(points[i].coords(), points[j].coords(), Metric::L2);
                let slot = &mut gap[a.min(b) * m + a.max(b)];
                *slot = slot.min(d);
            }
        }
    }
    let lower = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .map(|(a, b)| gap[a * m + b])
        .fold(0.0, f64::max);

    let mut sizes = vec![0usize; m];
    for &c in colors_of {
        sizes[c] += 1;
    }
    let pivot = (0..m).min_by_key(|&c| (sizes[c], c)).expect("m >= 1");
    let mut upper = f64::INFINITY;
    let mut nearest = vec![(f64::INFINITY, 0usize); m];
    for a in (0..points.len()).filter(|&a| colors_of[a] == pivot) {
        nearest.iter_mut().for_each(|n| *n = (f64::INFINITY, 0));
        for (k, p) in points.iter().enumerate() {
            let d = dist_unchecked(p.coords(), points[a].coords(), Metric::L2);
            if d < nearest[colors_of[k]].0 {
                nearest[colors_of[k]] = (d, k);
            }
        }
        let mut diam = 0.0f64;
        for x in 0..m {
            for y in x + 1..m {
                let (p, q) = (points[nearest[x].1], points[nearest[y].1]);
                diam = diam.max(dist_unchecked(p.coords(), q.coords(), Metric::L2));
            }
        }
        upper = upper.min(diam);
    }
    (lower, upper)
}

/// A location holding every color, if any; picks the lowest-index point of
/// each color there.
fn coincident_selection(points: &[&Point], colors_of: &[usize], m: usize) -> Option<Vec<usize>> {
    let mut groups: BTreeMap<Vec<u64>, Vec<Option<usize>>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let key: Vec<u64> = p.coords().iter().map(|c| (c + 0.0).to_bits()).collect();
        let slot = groups.entry(key).or_insert_with(|| vec![None; m]);
        if slot[colors_of[i]].is_none() {
            slot[colors_of[i]] = Some(i);
        }
    }
    let mut hits: Vec<Vec<usize>> = groups
        .into_values()
        .filter_map(|g| g.into_iter().collect::<Option<Vec<usize>>>())
        .collect();
    hits.sort();
    hits.into_iter().next()
}

fn trivial_result(instance: &IndecisiveInstance, choices: Vec<usize>, eps: f64) -> ApproxResult {
    let colored = instance.colored_points();
    let selection = Selection::from_points_unchecked(
        choices.iter().map(|&k| colored[k].point.clone()).collect(),
    );
    ApproxResult {
        value: 0.0,
        selection_diameter: 0.0,
        selection,
        choices,
        witness: (0, 0),
        epsilon: eps,
        pair: None,
        mask: CellMask::default(),
        cell_size: 0.0,
        lens_searches: 0,
    }
}
