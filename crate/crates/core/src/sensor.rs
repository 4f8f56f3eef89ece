//! The agent's only window onto the world.

use crate::error::{Error, Result};
use crate::hilbert::NodeIndex;
use crate::world::{Occupancy, OccupancyOracle};

/// Answers occupancy queries for cells touching the agent's current cell
/// (sharing an edge or a corner with it, at any order) and rejects the rest.
pub struct SensorView<'a> {
    oracle: &'a dyn OccupancyOracle,
    position: NodeIndex,
    queries: usize,
}

impl<'a> SensorView<'a> {
    pub fn new(oracle: &'a dyn OccupancyOracle, position: NodeIndex) -> Self {
        SensorView {
            oracle,
            position,
            queries: 0,
        }
    }

    pub fn position(&self) -> NodeIndex {
        self.position
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn can_sense(&self, node: NodeIndex) -> bool {
        self.position.cell().touches(node.cell())
    }

    pub fn sense(&mut self, node: NodeIndex) -> Result<Occupancy> {
        if !self.can_sense(node) {
            return Err(Error::SensingViolation {
                position: self.position,
                query: node,
            });
        }
        self.queries += 1;
        Ok(self.oracle.occupancy(node))
    }

    pub(crate) fn relocate(&mut self, node: NodeIndex) {
        self.position = node;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::World;

    #[test]
    fn rejects_queries_outside_the_neighborhood() {
        let world = World::new(2, ["12".parse().unwrap()]).unwrap();
        let mut s = SensorView::new(&world, "00".parse().unwrap());
        assert_eq!(s.sense("01".parse().unwrap()).unwrap(), Occupancy::Free);
        // Diagonal neighbour and the containing quadrant are both visible.
        assert_eq!(s.sense("02".parse().unwrap()).unwrap(), Occupancy::Free);
        assert_eq!(s.sense("0".parse().unwrap()).unwrap(), Occupancy::Free);
        assert!(matches!(
            s.sense("12".parse().unwrap()),
            Err(Error::SensingViolation { .. })
        ));
        assert_eq!(s.queries(), 3);
    }
}
