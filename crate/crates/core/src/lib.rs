//! Hilbert-curve coverage planning for an agent that discovers obstacles online.
//!
//! The agent follows the order-`n` Hilbert curve through the cell centers of
//! the unit square. When it senses that the next node is blocked it classifies
//! the node, rewrites the upcoming part of its plan with one of three local
//! maneuvers, and carries on, still visiting every free cell. The same
//! machinery drives non-uniform coverage over a Hilbert-ordered quadtree.
//!
//! Module map:
//!
//! - [`hilbert`]: nodes, cells, the exact curve maps and their inverse.
//! - [`corner`]: corner detection, effective order, maneuver selection.
//! - [`evasion`]: plan rewrites and the resulting polyline.
//! - [`world`], [`sensor`], [`trace`]: what the agent moves through, what it
//!   may observe, and what it did.
//! - [`simulator`]: online traversal and the coverage verifiers.
//! - [`nonuniform`]: resolution maps, coverage-tree leaves, multi-resolution plans.
//! - [`io`]: world files, CSV/JSON exports, SVG figures.

pub mod corner;
pub mod dyadic;
pub mod error;
pub mod evasion;
pub mod hilbert;
pub mod io;
mod navigator;
pub mod nonuniform;
pub mod sensor;
pub mod simulator;
pub mod trace;
pub mod world;

pub use corner::{classify, maneuver_group, Classification, CornerClass, ManeuverGroup};
pub use dyadic::{Dyadic, ExactPoint};
pub use error::{Error, Result};
pub use evasion::{to_polyline, PlannedSequence, Polyline};
pub use hilbert::{
    apply_transform, curve_nodes, inverse_map_center, map_center, map_simplified, map_standard,
    rank_to_digits, GridCell, NodeIndex,
};
pub use nonuniform::{build_leaves, plan_nonuniform, CoverageTree, Region, ResolutionMap};
pub use simulator::{simulate, verify_coverage, verify_multi_obstacle, CoverageReport};
pub use trace::{Event, Step, Trace};
pub use world::{Occupancy, OccupancyOracle, World};
