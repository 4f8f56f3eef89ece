//! Coverage at several resolutions at once.
//!
//! A [`ResolutionMap`] says how finely each region must be searched. The
//! quadtree whose level-`k` nodes are the order-`k` curve nodes is cut at
//! those depths, and its leaves, listed in prefix order, form the plan. The
//! agent moves between leaves of different orders through parent and child
//! nodes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{NodeIndex, MAX_ORDER};
use crate::navigator::navigate;
use crate::trace::Trace;
use crate::world::World;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub prefix: NodeIndex,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionMap {
    regions: Vec<Region>,
    default_order: u32,
}

impl ResolutionMap {
    pub fn new(default_order: u32, regions: impl IntoIterator<Item = Region>) -> Result<Self> {
        if default_order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: default_order,
                max: MAX_ORDER,
            });
        }
        let regions: Vec<Region> = regions.into_iter().collect();
        for r in &regions {
            if r.order < r.prefix.order() {
                return Err(Error::InvalidResolution(format!(
                    "region {} asks for order {} but is itself order {}",
                    r.prefix,
                    r.order,
                    r.prefix.order()
                )));
            }
            if r.order > MAX_ORDER {
                return Err(Error::OrderTooLarge {
                    order: r.order,
                    max: MAX_ORDER,
                });
            }
        }
        for (i, a) in regions.iter().enumerate() {
            for b in &regions[i + 1..] {
                let overlap = a.prefix.is_prefix_of(b.prefix) || b.prefix.is_prefix_of(a.prefix);
                if overlap && a.order != b.order {
                    return Err(Error::InvalidResolution(format!(
                        "regions {} (order {}) and {} (order {}) overlap",
                        a.prefix, a.order, b.prefix, b.order
                    )));
                }
            }
        }
        Ok(ResolutionMap {
            regions,
            default_order,
        })
    }

    /// Every cell searched at the same order.
    pub fn uniform(order: u32) -> Result<Self> {
        Self::new(order, [])
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn default_order(&self) -> u32 {
        self.default_order
    }

    pub fn max_order(&self) -> u32 {
        self.regions
            .iter()
            .map(|r| r.order)
            .chain([self.default_order])
            .max()
            .unwrap_or(0)
    }

    /// Order demanded at `node`, from the region containing it if any.
    pub fn demanded_order(&self, node: NodeIndex) -> u32 {
        self.regions
            .iter()
            .find(|r| r.prefix.is_prefix_of(node))
            .map_or(self.default_order, |r| r.order)
    }
}

/// Leaves of the coverage tree cut according to `map`, in prefix order.
pub fn build_leaves(map: &ResolutionMap, n_max: u32) -> Result<Vec<NodeIndex>> {
    if map.max_order() > n_max {
        return Err(Error::InvalidResolution(format!(
            "demanded order {} exceeds the maximum {n_max}",
            map.max_order()
        )));
    }
    let mut leaves = Vec::new();
    let mut stack = vec![NodeIndex::ROOT];
    while let Some(node) = stack.pop() {
        let region_inside = map
            .regions
            .iter()
            .any(|r| node.is_prefix_of(r.prefix) && node != r.prefix);
        if region_inside || node.order() < map.demanded_order(node) {
            stack.extend(node.children().into_iter().rev());
        } else {
            leaves.push(node);
        }
    }
    Ok(leaves)
}

/// Leaves of a quadtree over the unit square, checked to tile it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageTree {
    leaves: Vec<NodeIndex>,
}

impl CoverageTree {
    pub fn new(leaves: Vec<NodeIndex>) -> Result<Self> {
        if leaves.is_empty() {
            return Err(Error::InvalidResolution("no leaves".into()));
        }
        for w in leaves.windows(2) {
            if w[0] >= w[1] || w[0].is_prefix_of(w[1]) {
                return Err(Error::InvalidResolution(format!(
                    "leaves {} and {} are out of order or overlap",
                    w[0], w[1]
                )));
            }
        }
        // Sorted and prefix-free, so the leaves tile the square iff their areas sum to one.
        let unit = 1u128 << (2 * MAX_ORDER);
        let area: u128 = leaves
            .iter()
            .map(|l| 1u128 << (2 * (MAX_ORDER - l.order())))
            .sum();
        if area != unit {
            return Err(Error::InvalidResolution(
                "leaves leave part of the square uncovered".into(),
            ));
        }
        Ok(CoverageTree { leaves })
    }

    pub fn from_map(map: &ResolutionMap, n_max: u32) -> Result<Self> {
        Self::new(build_leaves(map, n_max)?)
    }

    pub fn root(&self) -> NodeIndex {
        NodeIndex::ROOT
    }

    pub fn leaves(&self) -> &[NodeIndex] {
        &self.leaves
    }

    pub fn max_order(&self) -> u32 {
        self.leaves.iter().map(|l| l.order()).max().unwrap_or(0)
    }

    /// The leaf whose cell contains `node`'s cell, if `node` is at least as fine.
    pub fn leaf_containing(&self, node: NodeIndex) -> Option<NodeIndex> {
        let idx = self.leaves.partition_point(|l| *l <= node);
        idx.checked_sub(1)
            .map(|i| self.leaves[i])
            .filter(|l| l.is_prefix_of(node))
    }
}

/// Covers `leaves` in `world`, evading obstacles at their own order.
///
/// Every obstacle must be a leaf or a union of leaves.
pub fn plan_nonuniform(leaves: &[NodeIndex], world: &World) -> Result<Trace> {
    let tree = CoverageTree::new(leaves.to_vec())?;
    if tree.max_order() > world.order() {
        return Err(Error::InvalidResolution(format!(
            "leaf order {} exceeds world order {}",
            tree.max_order(),
            world.order()
        )));
    }
    for &obstacle in world.obstacles() {
        if let Some(leaf) = tree.leaf_containing(obstacle).filter(|&l| l != obstacle) {
            return Err(Error::ObstacleFinerThanLeaf { obstacle, leaf });
        }
    }
    navigate(tree.leaves(), world)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(s: &str) -> NodeIndex {
        s.parse().unwrap()
    }

    fn region(p: &str, order: u32) -> Region {
        Region {
            prefix: node(p),
            order,
        }
    }

    #[test]
    fn uniform_map_gives_the_curve_nodes() {
        let leaves = build_leaves(&ResolutionMap::uniform(3).unwrap(), 3).unwrap();
        let expect: Vec<_> = (0..64).map(|r| NodeIndex::new(3, r).unwrap()).collect();
        assert_eq!(leaves, expect);
    }

    #[test]
    fn one_fine_quadrant() {
        let map = ResolutionMap::new(2, [region("2", 3)]).unwrap();
        let leaves = build_leaves(&map, 3).unwrap();
        assert_eq!(leaves.len(), 28);
        assert_eq!(leaves.iter().filter(|l| l.order() == 3).count(), 16);
        assert!(leaves.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(leaves[8], node("200"));
        CoverageTree::new(leaves).unwrap();
    }

    #[test]
    fn default_one_gives_the_four_quadrants() {
        let leaves = build_leaves(&ResolutionMap::uniform(1).unwrap(), 1).unwrap();
        assert_eq!(leaves, vec![node("0"), node("1"), node("2"), node("3")]);
    }

    #[test]
    fn coarse_region_inside_a_finer_default() {
        let map = ResolutionMap::new(3, [region("12", 2)]).unwrap();
        let leaves = build_leaves(&map, 3).unwrap();
        assert_eq!(leaves.len(), 64 - 4 + 1);
        assert!(leaves.contains(&node("12")));
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(ResolutionMap::new(2, [region("12", 1)]).is_err());
        assert!(ResolutionMap::new(2, [region("1", 3), region("12", 4)]).is_err());
        assert!(ResolutionMap::new(2, [region("1", 3), region("12", 3)]).is_ok());
        let map = ResolutionMap::new(2, [region("1", 4)]).unwrap();
        assert!(build_leaves(&map, 3).is_err());
    }

    #[test]
    fn tree_rejects_gaps_and_overlaps() {
        assert!(CoverageTree::new(vec![node("0"), node("1"), node("2")]).is_err());
        assert!(CoverageTree::new(vec![node("0"), node("00"), node("1"), node("2")]).is_err());
        let t = CoverageTree::new(vec![node("0"), node("1"), node("2"), node("3")]).unwrap();
        assert_eq!(t.leaf_containing(node("213")), Some(node("2")));
        assert_eq!(t.leaf_containing(NodeIndex::ROOT), None);
    }

    #[test]
    fn obstacles_finer_than_their_leaf_are_rejected() {
        let map = ResolutionMap::new(2, [region("2", 3)]).unwrap();
        let leaves = build_leaves(&map, 3).unwrap();
        let world = |o: &str| World::new(3, [node(o)]).unwrap();
        assert!(matches!(
            plan_nonuniform(&leaves, &world("031")),
            Err(Error::ObstacleFinerThanLeaf { .. })
        ));
        assert!(plan_nonuniform(&leaves, &world("213")).is_ok());
        assert!(plan_nonuniform(&leaves, &world("1")).is_ok());
    }
}
