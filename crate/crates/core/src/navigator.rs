//! The online agent shared by the flat simulator and the non-uniform planner.
//!
//! The agent works through a queue of plan entries (coverage-tree leaves, in
//! Hilbert order). To reach the next entry it matches orders by moving to
//! parent or child nodes, then steps sideways. Every node is sensed right
//! before the agent enters it. When a node turns out to be blocked, the agent
//! finds the obstacle's order, moves to the obstacle's predecessor at that
//! order, and lets the maneuver window of a rewritten [`PlannedSequence`]
//! reorder the entries that follow.

use std::collections::{HashSet, VecDeque};

use crate::corner::{classify, maneuver_for};
use crate::error::{Error, Result};
use crate::evasion::PlannedSequence;
use crate::hilbert::{inverse_map_center, GridCell, NodeIndex};
use crate::sensor::SensorView;
use crate::trace::{Event, ManeuverRecord, Step, Trace};
use crate::world::{Occupancy, OccupancyOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ItemKind {
    /// A leaf to cover.
    Cover,
    /// A waypoint placed by a maneuver.
    Transit,
}

#[derive(Clone, Copy, Debug)]
struct Item {
    node: NodeIndex,
    slot: u64,
    kind: ItemKind,
    tag: Event,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    Ascend,
    Descend,
    Lateral,
}

/// Moves from `from` to `to`: ascend or descend on the agent's side until the
/// orders match, then one sideways step. When that does not end next to the
/// target, climb to the deepest pair of ancestors that touch, cross over, and
/// descend along the target's own path.
fn route(from: NodeIndex, to: NodeIndex) -> Vec<(NodeIndex, Move)> {
    if from == to {
        return Vec::new();
    }
    direct_route(from, to).unwrap_or_else(|| common_ancestor_route(from, to))
}

fn direct_route(from: NodeIndex, to: NodeIndex) -> Option<Vec<(NodeIndex, Move)>> {
    let mut path = Vec::new();
    let mut cur = from;
    while cur.order() > to.order() {
        cur = cur.parent().expect("order > 0");
        path.push((cur, Move::Ascend));
    }
    let target_cell = to.cell();
    while cur.order() < to.order() {
        let next = if cur.is_prefix_of(to) {
            to.prefix(cur.order() + 1)
        } else {
            // Latest child in curve order that still touches the target.
            cur.children()
                .into_iter()
                .rev()
                .find(|c| c.cell().touches(target_cell))?
        };
        path.push((next, Move::Descend));
        cur = next;
    }
    if cur == to {
        Some(path)
    } else if cur.cell().king_adjacent(target_cell) {
        path.push((to, Move::Lateral));
        Some(path)
    } else {
        None
    }
}

fn common_ancestor_route(from: NodeIndex, to: NodeIndex) -> Vec<(NodeIndex, Move)> {
    let deepest = from.order().min(to.order());
    let k = (0..=deepest)
        .rev()
        .find(|&k| {
            let (a, b) = (from.prefix(k), to.prefix(k));
            a == b || a.cell().king_adjacent(b.cell())
        })
        .unwrap_or(0);
    let mut path: Vec<(NodeIndex, Move)> = (k..from.order())
        .rev()
        .map(|o| (from.prefix(o), Move::Ascend))
        .collect();
    if from.prefix(k) != to.prefix(k) {
        path.push((to.prefix(k), Move::Lateral));
    }
    path.extend((k + 1..=to.order()).map(|o| (to.prefix(o), Move::Descend)));
    path
}

/// Sub-cells whose full diagonal the segment between the centers of `a` and
/// `b` runs along, with `true` for the lower-left to upper-right diagonal.
/// Moves across a shared edge only follow grid lines of finer orders.
fn swept_diagonals(a: GridCell, b: GridCell) -> Vec<(GridCell, bool)> {
    // The sub-cell of `outer` (one order finer) with `inner`'s center as a corner.
    let corner_child = |outer: GridCell, towards: (bool, bool)| GridCell {
        order: outer.order + 1,
        i: 2 * outer.i + u64::from(towards.0),
        j: 2 * outer.j + u64::from(towards.1),
    };
    if a.order + 1 == b.order || b.order + 1 == a.order {
        let (fine, _) = if a.order > b.order { (a, b) } else { (b, a) };
        // The coarse center is the corner of `fine` on the side of its even index.
        let towards = (fine.i % 2 == 0, fine.j % 2 == 0);
        return vec![(corner_child(fine, towards), towards.0 == towards.1)];
    }
    if a.order == b.order && a.i != b.i && a.j != b.j {
        let towards = (b.i > a.i, b.j > a.j);
        let main = towards.0 == towards.1;
        return vec![
            (corner_child(a, towards), main),
            (corner_child(b, (!towards.0, !towards.1)), main),
        ];
    }
    Vec::new()
}

struct Navigator<'a> {
    sensor: SensorView<'a>,
    plan: VecDeque<Item>,
    steps: Vec<Step>,
    visited: HashSet<NodeIndex>,
    maneuvers: Vec<ManeuverRecord>,
}

/// Runs the agent over `leaves` (Hilbert-ordered, tiling the square).
pub(crate) fn navigate(leaves: &[NodeIndex], oracle: &dyn OccupancyOracle) -> Result<Trace> {
    let Some(&first) = leaves.first() else {
        return Err(Error::InvalidWorld("nothing to cover".into()));
    };
    let mut nav = Navigator {
        sensor: SensorView::new(oracle, first),
        plan: leaves
            .iter()
            .enumerate()
            .map(|(slot, &node)| Item {
                node,
                slot: slot as u64,
                kind: ItemKind::Cover,
                tag: Event::Normal,
            })
            .collect(),
        steps: Vec::new(),
        visited: HashSet::new(),
        maneuvers: Vec::new(),
    };
    nav.place_at_start()?;
    while let Some(item) = nav.plan.pop_front() {
        nav.pursue(item)?;
    }
    Ok(Trace {
        steps: nav.steps,
        maneuvers: nav.maneuvers,
    })
}

impl Navigator<'_> {
    fn current(&self) -> NodeIndex {
        self.sensor.position()
    }

    fn place_at_start(&mut self) -> Result<()> {
        let item = self.plan.pop_front().expect("non-empty plan");
        if self.sensor.sense(item.node)? == Occupancy::Blocked {
            return Err(Error::BlockedTerminal { node: item.node });
        }
        self.record(item.node, item.slot, Event::Normal);
        Ok(())
    }

    fn record(&mut self, node: NodeIndex, slot: u64, event: Event) {
        let event = if self.visited.insert(node) {
            event
        } else {
            Event::Revisit
        };
        self.steps.push(Step {
            slot,
            t: node.t(),
            node,
            cell: node.cell(),
            event,
        });
        self.sensor.relocate(node);
    }

    /// Walks towards `target`, sensing each node before entering it. Stops at
    /// the first blocked node and returns it.
    fn travel(&mut self, target: NodeIndex, slot: u64, tag: Event) -> Result<Option<NodeIndex>> {
        let mut path: VecDeque<(NodeIndex, Move)> = route(self.current(), target).into();
        while let Some((node, mv)) = path.pop_front() {
            if self.sensor.sense(node)? == Occupancy::Blocked {
                return Ok(Some(node));
            }
            if !self.move_is_clear(node)? {
                let from = self.current();
                if mv != Move::Ascend || !from.cell().touches(target.cell()) {
                    return Err(Error::NoClearPath { from, to: node });
                }
                path = self.enter_and_climb(target)?.into();
                continue;
            }
            let event = match mv {
                Move::Ascend => Event::Ascend,
                Move::Descend => Event::Descend,
                Move::Lateral if node == target => tag,
                Move::Lateral => Event::Detour,
            };
            self.record(node, slot, event);
        }
        Ok(None)
    }

    /// Replacement for an ascent that would cut through an obstacle: step
    /// into `target` at the current order, then climb inside it.
    fn enter_and_climb(&mut self, target: NodeIndex) -> Result<Vec<(NodeIndex, Move)>> {
        let from = self.current();
        let c = from.cell();
        let t = target.cell();
        let shift = c.order - t.order;
        let mut candidates: Vec<NodeIndex> = Vec::new();
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                let (i, j) = (c.i as i64 + di, c.j as i64 + dj);
                if i < 0 || j < 0 || (di, dj) == (0, 0) {
                    continue;
                }
                let (i, j) = (i as u64, j as u64);
                if (i >> shift, j >> shift) == (t.i, t.j) {
                    candidates.push(inverse_map_center(GridCell {
                        order: c.order,
                        i,
                        j,
                    }));
                }
            }
        }
        candidates.sort();
        for f in candidates {
            if self.sensor.sense(f)? == Occupancy::Free && self.move_is_clear(f)? {
                let mut path = vec![(f, Move::Lateral)];
                path.extend(
                    (target.order()..f.order())
                        .rev()
                        .map(|o| (f.prefix(o), Move::Ascend)),
                );
                return Ok(path);
            }
        }
        Err(Error::NoClearPath { from, to: target })
    }

    /// Whether the straight move from the current center to `to`'s center
    /// avoids every obstacle interior, judged from sensor answers alone.
    fn move_is_clear(&mut self, to: NodeIndex) -> Result<bool> {
        for (cell, main) in swept_diagonals(self.current().cell(), to.cell()) {
            if !self.diagonal_is_clear(cell, main)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn diagonal_is_clear(&mut self, cell: GridCell, main: bool) -> Result<bool> {
        let node = inverse_map_center(cell);
        if !self.sensor.can_sense(node) {
            return Ok(false);
        }
        Ok(match self.sensor.sense(node)? {
            Occupancy::Free => true,
            Occupancy::Blocked => false,
            Occupancy::Mixed => {
                let (i, j, order) = (2 * cell.i, 2 * cell.j, cell.order + 1);
                let ends = if main {
                    [(i, j), (i + 1, j + 1)]
                } else {
                    [(i + 1, j), (i, j + 1)]
                };
                for (i, j) in ends {
                    if !self.diagonal_is_clear(GridCell { order, i, j }, main)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    fn pursue(&mut self, item: Item) -> Result<()> {
        if item.kind == ItemKind::Cover && self.visited.contains(&item.node) {
            return Ok(());
        }
        match self.travel(item.node, item.slot, item.tag)? {
            None => Ok(()),
            Some(blocked) => self.evade(blocked, item),
        }
    }

    fn evade(&mut self, blocked: NodeIndex, item: Item) -> Result<()> {
        if !blocked.is_prefix_of(item.node) {
            return Err(Error::ManeuverBlocked {
                obstacle: blocked,
                target: item.node,
                blocked,
            });
        }
        // The obstacle is the coarsest blocked cell containing what was sensed.
        let mut obstacle = blocked;
        for len in 1..blocked.order() {
            let candidate = blocked.prefix(len);
            if self.sensor.sense(candidate)? == Occupancy::Blocked {
                obstacle = candidate;
                break;
            }
        }
        self.plan.retain(|it| !obstacle.is_prefix_of(it.node));

        let group = maneuver_for(obstacle)?;
        let order = obstacle.order();
        let n_obs = obstacle.rank();
        let seq = PlannedSequence::new(order)?.rewrite(n_obs, group)?;
        let window = seq.maneuver_window(n_obs, group);

        let pred = obstacle.predecessor().expect("non-terminal obstacle");
        if let Some(b) = self.travel(pred, item.slot, Event::Detour)? {
            return Err(Error::ManeuverBlocked {
                obstacle,
                target: pred,
                blocked: b,
            });
        }
        self.maneuvers.push(ManeuverRecord {
            slot: item.slot,
            obstacle,
            from: self.current(),
            classification: classify(obstacle),
            group,
        });

        let mut front: Vec<Item> = Vec::new();
        for (idx, &rank) in window.iter().enumerate() {
            let node = NodeIndex::new(order, rank)?;
            let tag = if rank < n_obs {
                Event::Revisit
            } else if idx + 1 == window.len() {
                Event::Skip
            } else {
                Event::Detour
            };
            let transit = Item {
                node,
                slot: item.slot,
                kind: ItemKind::Transit,
                tag,
            };
            if rank < n_obs {
                front.push(transit);
                continue;
            }
            let mut inside: Vec<Item> = Vec::new();
            self.plan.retain(|it| {
                if node.is_prefix_of(it.node) {
                    inside.push(*it);
                    false
                } else {
                    true
                }
            });
            match inside.first_mut() {
                Some(first) if first.node == node => first.tag = tag,
                _ => front.push(transit),
            }
            front.extend(inside);
        }
        for it in front.into_iter().rev() {
            self.plan.push_front(it);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(s: &str) -> NodeIndex {
        s.parse().unwrap()
    }

    #[test]
    fn same_order_neighbours_take_one_step() {
        assert_eq!(
            route(node("00"), node("01")),
            vec![(node("01"), Move::Lateral)]
        );
    }

    #[test]
    fn coarser_target_ascends_then_steps() {
        // Last child of quadrant 0 to quadrant 1.
        assert_eq!(
            route(node("03"), node("1")),
            vec![(node("0"), Move::Ascend), (node("1"), Move::Lateral)]
        );
    }

    #[test]
    fn finer_target_descends_on_the_exit_side() {
        let r = route(node("0"), node("10"));
        assert_eq!(
            r,
            vec![(node("03"), Move::Descend), (node("10"), Move::Lateral)]
        );
    }

    #[test]
    fn descendant_target_follows_its_own_path() {
        assert_eq!(
            route(node("2"), node("201")),
            vec![(node("20"), Move::Descend), (node("201"), Move::Descend)]
        );
    }

    #[test]
    fn swept_cells_of_each_move_kind() {
        let cell = |o, i, j| GridCell { order: o, i, j };
        // Up from (1,0) at order 2 to the center of (0,0) at order 1.
        assert_eq!(
            swept_diagonals(cell(2, 1, 0), cell(1, 0, 0)),
            vec![(cell(3, 2, 1), false)]
        );
        assert_eq!(
            swept_diagonals(cell(1, 0, 0), cell(2, 1, 0)),
            vec![(cell(3, 2, 1), false)]
        );
        assert_eq!(
            swept_diagonals(cell(2, 0, 0), cell(2, 1, 1)),
            vec![(cell(3, 1, 1), true), (cell(3, 2, 2), true)]
        );
        assert!(swept_diagonals(cell(2, 0, 0), cell(2, 1, 0)).is_empty());
    }

    #[test]
    fn distant_targets_go_through_a_common_ancestor() {
        let r = route(node("00"), node("22"));
        assert_eq!(r.first(), Some(&(node("0"), Move::Ascend)));
        assert_eq!(r.last(), Some(&(node("22"), Move::Descend)));
        for w in r.windows(2) {
            let (a, b) = (w[0].0, w[1].0);
            let tree_edge = a.parent() == Some(b) || b.parent() == Some(a);
            assert!(tree_edge || a.cell().king_adjacent(b.cell()), "{a} -> {b}");
        }
    }
}
