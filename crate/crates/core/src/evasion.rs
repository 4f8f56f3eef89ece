//! Rewriting the planned node sequence around a blocked node, and the
//! piecewise-linear path that results.

use std::collections::BTreeMap;

use crate::corner::ManeuverGroup;
use crate::dyadic::{Dyadic, ExactPoint};
use crate::error::{Error, Result};
use crate::hilbert::{node_count, GridCell, NodeIndex, MAX_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotTag {
    Normal,
    Rewritten,
}

/// The order-`n` visiting plan: slot `s` initially holds the node of rank `s`.
///
/// Only rewritten slots are stored, so a sequence is cheap to create at any order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlannedSequence {
    order: u32,
    overrides: BTreeMap<u64, u64>,
}

impl PlannedSequence {
    pub fn new(order: u32) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        Ok(PlannedSequence {
            order,
            overrides: BTreeMap::new(),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> u64 {
        node_count(self.order)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Rank of the node held by `slot`.
    pub fn rank_at(&self, slot: u64) -> u64 {
        self.overrides.get(&slot).copied().unwrap_or(slot)
    }

    pub fn node_at(&self, slot: u64) -> NodeIndex {
        NodeIndex::new(self.order, self.rank_at(slot)).expect("slot within sequence")
    }

    pub fn cell_at(&self, slot: u64) -> GridCell {
        self.node_at(slot).cell()
    }

    pub fn annotation(&self, slot: u64) -> SlotTag {
        if self.overrides.contains_key(&slot) {
            SlotTag::Rewritten
        } else {
            SlotTag::Normal
        }
    }

    /// Slots a maneuver at `n_obs` assigns to.
    pub fn touched_slots(n_obs: u64, group: ManeuverGroup) -> Vec<u64> {
        match group {
            ManeuverGroup::DetourAhead => vec![n_obs, n_obs + 3],
            _ => vec![n_obs],
        }
    }

    fn check_slot(&self, n_obs: u64, group: ManeuverGroup) -> Result<()> {
        let last = self.len() - 1;
        let ok = n_obs > 0
            && n_obs < last
            && match group {
                ManeuverGroup::BacktrackThree => n_obs >= 3,
                ManeuverGroup::DetourAhead => n_obs + 4 <= last,
                ManeuverGroup::SkipForward | ManeuverGroup::NonCornerSkip => true,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::ManeuverOutOfRange {
                group,
                slot: n_obs,
                order: self.order,
            })
        }
    }

    fn assign(&mut self, slot: u64, rank: u64) {
        if slot == rank {
            self.overrides.remove(&slot);
        } else {
            self.overrides.insert(slot, rank);
        }
    }

    /// Applies the evasive maneuver for a blocked node at slot `n_obs`.
    pub fn rewrite(&self, n_obs: u64, group: ManeuverGroup) -> Result<PlannedSequence> {
        self.check_slot(n_obs, group)?;
        let mut out = self.clone();
        match group {
            ManeuverGroup::SkipForward | ManeuverGroup::NonCornerSkip => {
                out.assign(n_obs, self.rank_at(n_obs + 1));
            }
            ManeuverGroup::BacktrackThree => {
                out.assign(n_obs, self.rank_at(n_obs - 3));
            }
            ManeuverGroup::DetourAhead => {
                out.assign(n_obs, self.rank_at(n_obs + 3));
                out.assign(n_obs + 3, self.rank_at(n_obs + 4));
            }
        }
        Ok(out)
    }

    /// Ranks visited over `slots`, with consecutive duplicates collapsed.
    pub fn executed_range(&self, slots: std::ops::RangeInclusive<u64>) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for s in slots {
            let r = self.rank_at(s);
            if out.last() != Some(&r) {
                out.push(r);
            }
        }
        out
    }

    pub fn executed(&self) -> Vec<u64> {
        self.executed_range(0..=self.len() - 1)
    }

    /// Nodes visited after slot `n_obs - 1` until the plan rejoins its
    /// original order, for a maneuver already applied at `n_obs`.
    pub fn maneuver_window(&self, n_obs: u64, group: ManeuverGroup) -> Vec<u64> {
        let end = Self::touched_slots(n_obs, group)
            .into_iter()
            .max()
            .unwrap_or(n_obs)
            + 1;
        self.executed_range(n_obs..=end.min(self.len() - 1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: ExactPoint,
    pub end: ExactPoint,
    pub t_start: Dyadic,
    pub t_end: Dyadic,
}

impl Segment {
    pub fn point_at(&self, t: Dyadic) -> [f64; 2] {
        let span = (self.t_end - self.t_start).to_f64();
        let s = (t - self.t_start).to_f64() / span;
        let [x0, y0] = self.start.to_f64();
        let [x1, y1] = self.end.to_f64();
        [x0 + s * (x1 - x0), y0 + s * (y1 - y0)]
    }
}

/// Piecewise-linear path over the parameter interval.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polyline {
    pub segments: Vec<Segment>,
}

impl Polyline {
    pub fn vertices(&self) -> Vec<ExactPoint> {
        let mut v: Vec<ExactPoint> = self.segments.iter().map(|s| s.start).collect();
        if let Some(last) = self.segments.last() {
            v.push(last.end);
        }
        v
    }

    pub fn point_at(&self, t: Dyadic) -> Option<[f64; 2]> {
        self.segments
            .iter()
            .find(|s| s.t_start <= t && t <= s.t_end)
            .map(|s| s.point_at(t))
    }
}

/// Joins consecutive distinct slots with straight segments. A node held by
/// several consecutive slots is one vertex; the segment reaching it spans up
/// to the last of those slots.
pub fn to_polyline(seq: &PlannedSequence) -> Polyline {
    let mut runs: Vec<(u64, u64)> = Vec::new();
    for s in 0..seq.len() {
        let r = seq.rank_at(s);
        match runs.last_mut() {
            Some((rank, last)) if *rank == r => *last = s,
            _ => runs.push((r, s)),
        }
    }
    let exp = 2 * seq.order();
    let node = |r: u64| NodeIndex::new(seq.order(), r).expect("rank within order");
    let segments = runs
        .windows(2)
        .map(|w| Segment {
            start: node(w[0].0).cell().center(),
            end: node(w[1].0).cell().center(),
            t_start: Dyadic::new(w[0].1 as i64, exp),
            t_end: Dyadic::new(w[1].1 as i64, exp),
        })
        .collect();
    Polyline { segments }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corner::maneuver_for;

    fn rewritten(order: u32, n_obs: u64) -> PlannedSequence {
        let node = NodeIndex::new(order, n_obs).unwrap();
        PlannedSequence::new(order)
            .unwrap()
            .rewrite(n_obs, maneuver_for(node).unwrap())
            .unwrap()
    }

    #[test]
    fn non_corner_skip_on_first_order_curve() {
        let seq = rewritten(1, 1);
        assert_eq!(seq.executed(), vec![0, 2, 3]);
        assert_eq!(seq.annotation(1), SlotTag::Rewritten);
        assert_eq!(seq.annotation(2), SlotTag::Normal);
    }

    #[test]
    fn backtrack_three_example() {
        let n_obs = "23".parse::<NodeIndex>().unwrap().rank();
        assert_eq!(n_obs, 11);
        let seq = rewritten(2, n_obs);
        assert_eq!(seq.rank_at(11), 8);
        let mut expected: Vec<u64> = (0..=10).collect();
        expected.push(8);
        expected.extend(12..16);
        assert_eq!(seq.executed(), expected);
    }

    #[test]
    fn detour_ahead_example() {
        let seq = rewritten(2, 4);
        let mut expected: Vec<u64> = (0..=3).collect();
        expected.extend([7, 5, 6, 8]);
        expected.extend(9..16);
        assert_eq!(seq.executed(), expected);
        assert_eq!(
            seq.maneuver_window(4, ManeuverGroup::DetourAhead),
            vec![7, 5, 6, 8]
        );
    }

    #[test]
    fn slot_range_preconditions() {
        let seq = PlannedSequence::new(2).unwrap();
        assert!(seq.rewrite(0, ManeuverGroup::SkipForward).is_err());
        assert!(seq.rewrite(15, ManeuverGroup::SkipForward).is_err());
        assert!(seq.rewrite(2, ManeuverGroup::BacktrackThree).is_err());
        assert!(seq.rewrite(11, ManeuverGroup::DetourAhead).is_ok());
        assert!(seq.rewrite(12, ManeuverGroup::DetourAhead).is_err());
        assert!(seq.rewrite(11, ManeuverGroup::BacktrackThree).is_ok());
    }

    #[test]
    fn polyline_identity_and_skip() {
        let seq = PlannedSequence::new(1).unwrap();
        let poly = to_polyline(&seq);
        assert_eq!(poly.segments.len(), 3);
        let f: Vec<_> = (0..4).map(crate::hilbert::first_order_center).collect();
        assert_eq!(poly.vertices(), f);

        let poly = to_polyline(&rewritten(1, 1));
        assert_eq!(poly.segments.len(), 2);
        assert_eq!(poly.vertices(), vec![f[0], f[2], f[3]]);
        assert_eq!(poly.segments[0].t_start, Dyadic::ZERO);
        assert_eq!(poly.segments[0].t_end, Dyadic::new(2, 2));
        let mid = poly.point_at(Dyadic::new(1, 2)).unwrap();
        assert_eq!(mid, [0.5, 0.5]);
    }

    #[test]
    fn polyline_intervals_follow_the_maneuver() {
        // BacktrackThree at slot 11: [10,11] then [11,12].
        let poly = to_polyline(&rewritten(2, 11));
        let spans: Vec<(Dyadic, Dyadic)> =
            poly.segments.iter().map(|s| (s.t_start, s.t_end)).collect();
        assert!(spans.contains(&(Dyadic::new(10, 4), Dyadic::new(11, 4))));
        assert!(spans.contains(&(Dyadic::new(11, 4), Dyadic::new(12, 4))));
        // DetourAhead at slot 4: the last detour segment spans [6, 8].
        let poly = to_polyline(&rewritten(2, 4));
        let last_detour = poly
            .segments
            .iter()
            .find(|s| s.t_start == Dyadic::new(6, 4))
            .unwrap();
        assert_eq!(last_detour.t_end, Dyadic::new(8, 4));
    }

    #[test]
    fn single_obstacle_rewrites_are_local_and_adjacent() {
        for n in 1..=5u32 {
            let len = node_count(n);
            for n_obs in 1..len - 1 {
                let node = NodeIndex::new(n, n_obs).unwrap();
                let group = maneuver_for(node).unwrap();
                let seq = PlannedSequence::new(n)
                    .unwrap()
                    .rewrite(n_obs, group)
                    .unwrap();
                let touched = PlannedSequence::touched_slots(n_obs, group);
                for s in 0..len {
                    if !touched.contains(&s) {
                        assert_eq!(seq.rank_at(s), s);
                    }
                }
                let exec = seq.executed();
                assert!(!exec.contains(&n_obs));
                for w in exec.windows(2) {
                    let (a, b) = (
                        NodeIndex::new(n, w[0]).unwrap().cell(),
                        NodeIndex::new(n, w[1]).unwrap().cell(),
                    );
                    assert!(
                        a.king_adjacent(b),
                        "order {n} obstacle {node}: {a:?} -> {b:?}"
                    );
                }
                let poly = to_polyline(&seq);
                assert_eq!(
                    poly.vertices().first(),
                    Some(&NodeIndex::new(n, 0).unwrap().cell().center())
                );
                assert_eq!(
                    poly.vertices().last(),
                    Some(&NodeIndex::new(n, len - 1).unwrap().cell().center())
                );
            }
        }
    }
}
