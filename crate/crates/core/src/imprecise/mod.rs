//! Minimum-diameter selection from convex regions.
//!
//! In the plane, a pair of disjoint regions certifies a wedge around which
//! every near-optimal selection must lie; a grid over that focus rectangle
//! turns the problem into a colored point instance for [`crate::mindcs`].
//! When all regions pairwise intersect, either they share a point (diameter
//! zero) or some triple has an empty intersection and the instance splits
//! into separable sub-instances.

mod helly;
mod instance;
mod oracle;
mod pipeline;
mod separability;

pub use helly::{
    common_point, decompose, solve, Decomposition, SolveOutcome, SolveReport, SubProblem, MAX_DEPTH,
};
pub use instance::ImpreciseInstance;
pub use oracle::{sampling_oracle, sampling_oracle_with_cap, OracleOutcome, DEFAULT_SAMPLE_CAP};
pub use pipeline::{
    discretize, discretize_with_cap, focus_rectangle, min_diam_eps, min_diam_eps_with,
    Discretization, FocusRect, PipelineConfig, PipelineReport, DEFAULT_NODE_CAP,
};
pub use separability::{max_separability, max_separability_set, SeparabilityCert};

use crate::geometry::GeometryError;
use crate::lp::LpError;
use crate::mindcs::MinDcsError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ImpreciseError {
    #[error("instance has no regions")]
    NoRegions,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("region {0} is empty")]
    EmptyRegion(usize),
    #[error("region {0} is unbounded")]
    UnboundedRegion(usize),
    #[error("operation needs planar regions, instance has dimension {0}")]
    NotPlanar(usize),
    #[error("no two regions are disjoint; decompose the instance first")]
    NotSeparable,
    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("region {0} does not meet the focus rectangle")]
    RegionOutsideFocus(usize),
    #[error("grid too fine: {0}")]
    GridTooFine(String),
    #[error("oracle needs {samples} samples in one region, cap is {cap}")]
    OracleTooLarge { samples: usize, cap: usize },
    #[error("region {inner} lies strictly inside region {outer}")]
    HoleTopology { outer: usize, inner: usize },
    #[error("all regions share a common point")]
    CommonPoint,
    #[error("some pair of regions is disjoint")]
    NotPairwiseIntersecting,
    #[error("selected point {0} lies outside its region")]
    SelectionOutsideRegion(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    MinDcs(#[from] MinDcsError),
}
