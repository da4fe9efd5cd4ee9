//! Minimum-diameter selection for uncertain point sets.
//!
//! * [`mindcs`]: finite colored candidate sets (indecisive points), with a
//!   grid-based (1+O(ε)) approximation and an exhaustive oracle.
//! * [`lp`]: a dense two-phase simplex and the rectilinear LP relaxation that
//!   bounds the minimum diameter of convex regions within a factor √d.
//! * [`imprecise`]: convex polygonal regions in the plane: separability
//!   certificates, the focus rectangle, discretization into a colored
//!   instance, and the Helly-case decomposition.
//! * [`geometry`]: shared metric and polygon primitives.

pub mod geometry;
pub mod imprecise;
pub mod lp;
pub mod mindcs;

pub use geometry::{ConvexPolygon, Metric, Point, Region, Vec2};
