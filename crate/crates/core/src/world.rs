use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{node_count, NodeIndex, MAX_ORDER};
use crate::nonuniform::{build_leaves, ResolutionMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Occupancy {
    Free,
    /// The whole cell lies inside an obstacle.
    Blocked,
    /// The cell strictly contains a smaller obstacle.
    Mixed,
}

/// Ground-truth occupancy. Planners only reach it through a
/// [`SensorView`](crate::sensor::SensorView).
pub trait OccupancyOracle {
    fn occupancy(&self, node: NodeIndex) -> Occupancy;
}

/// Grid order, blocked quaternary prefixes and an optional resolution map.
///
/// An obstacle prefix of length `l < order` blocks the whole order-`l` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct World {
    order: u32,
    obstacles: Vec<NodeIndex>,
    resolution: Option<ResolutionMap>,
}

impl World {
    pub fn new(order: u32, obstacles: impl IntoIterator<Item = NodeIndex>) -> Result<Self> {
        if order == 0 {
            return Err(Error::OrderTooSmall { order, min: 1 });
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        let set: BTreeSet<NodeIndex> = obstacles.into_iter().collect();
        let obstacles: Vec<NodeIndex> = set.into_iter().collect();
        for o in &obstacles {
            if o.order() == 0 || o.order() > order {
                return Err(Error::InvalidWorld(format!(
                    "obstacle {o} must have between 1 and {order} digits"
                )));
            }
            let first = NodeIndex::new(order, 0)?;
            let last = NodeIndex::new(order, node_count(order) - 1)?;
            if o.is_prefix_of(first) || o.is_prefix_of(last) {
                return Err(Error::BlockedTerminal { node: *o });
            }
        }
        // Sorted lexicographically, so a prefix is immediately followed by its extensions.
        for w in obstacles.windows(2) {
            if w[0].is_prefix_of(w[1]) {
                return Err(Error::InvalidWorld(format!(
                    "obstacle {} lies inside obstacle {}",
                    w[1], w[0]
                )));
            }
        }
        Ok(World {
            order,
            obstacles,
            resolution: None,
        })
    }

    pub fn with_resolution(mut self, map: ResolutionMap) -> Result<Self> {
        if map.max_order() > self.order {
            return Err(Error::InvalidResolution(format!(
                "demanded order {} exceeds world order {}",
                map.max_order(),
                self.order
            )));
        }
        self.resolution = Some(map);
        Ok(self)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn obstacles(&self) -> &[NodeIndex] {
        &self.obstacles
    }

    pub fn resolution(&self) -> Option<&ResolutionMap> {
        self.resolution.as_ref()
    }

    pub fn has_coarse_obstacles(&self) -> bool {
        self.obstacles.iter().any(|o| o.order() < self.order)
    }

    /// Whether moves between a node and its parent or child are legitimate
    /// in this world: only when resolutions differ.
    pub fn allows_tree_moves(&self) -> bool {
        self.resolution.is_some() || self.has_coarse_obstacles()
    }

    /// Leaves the agent is asked to cover, before obstacles are taken into account.
    pub fn leaves(&self) -> Result<Vec<NodeIndex>> {
        match &self.resolution {
            Some(map) => build_leaves(map, self.order),
            None => Ok((0..node_count(self.order))
                .map(|r| NodeIndex::new(self.order, r).expect("rank in range"))
                .collect()),
        }
    }

    /// Leaves that must be visited: mixed leaves are split until no leaf
    /// straddles an obstacle boundary, and blocked leaves are dropped.
    pub fn free_leaves(&self) -> Result<Vec<NodeIndex>> {
        let mut out = Vec::new();
        let mut stack: Vec<NodeIndex> = self.leaves()?.into_iter().rev().collect();
        while let Some(node) = stack.pop() {
            match self.occupancy(node) {
                Occupancy::Free => out.push(node),
                Occupancy::Blocked => {}
                Occupancy::Mixed => stack.extend(node.children().into_iter().rev()),
            }
        }
        Ok(out)
    }
}

impl OccupancyOracle for World {
    fn occupancy(&self, node: NodeIndex) -> Occupancy {
        let mut mixed = false;
        for o in &self.obstacles {
            if o.is_prefix_of(node) {
                return Occupancy::Blocked;
            }
            if node.is_prefix_of(*o) {
                mixed = true;
            }
        }
        if mixed {
            Occupancy::Mixed
        } else {
            Occupancy::Free
        }
    }
}
