//! Corner-node detection and maneuver selection.
//!
//! A node whose last digit is 0 or 3 enters or leaves a sub-curve. Writing it
//! as `q1 .. qp m m .. m` with a maximal trailing run of `m`, the sub-curve it
//! belongs to has effective order `n_eff = n - p + 1`, and the tuple
//! `(n_eff mod 2, q_p, m)` alone decides how an obstacle there is evaded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::NodeIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CornerKind {
    Entering,
    Exiting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CornerClass {
    /// Number of digits before the trailing run.
    pub p: u32,
    pub n_eff: u32,
    /// `n_eff mod 2`.
    pub e: u8,
    /// Digit immediately preceding the trailing run.
    pub q_p: u8,
    /// The run digit, 0 or 3.
    pub m: u8,
}

impl CornerClass {
    pub fn tuple(&self) -> (u8, u8, u8) {
        (self.e, self.q_p, self.m)
    }

    pub fn kind(&self) -> CornerKind {
        if self.m == 0 {
            CornerKind::Entering
        } else {
            CornerKind::Exiting
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    NonCorner,
    /// First or last node of the curve.
    Terminal,
    Corner(CornerClass),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManeuverGroup {
    SkipForward,
    BacktrackThree,
    DetourAhead,
    NonCornerSkip,
}

pub fn classify(node: NodeIndex) -> Classification {
    let Some(m) = node.last_digit() else {
        return Classification::Terminal;
    };
    if m == 1 || m == 2 {
        return Classification::NonCorner;
    }
    let n = node.order();
    let mut p = n;
    while p > 0 && node.digit(p) == m {
        p -= 1;
    }
    if p == 0 {
        return Classification::Terminal;
    }
    let n_eff = n - p + 1;
    Classification::Corner(CornerClass {
        p,
        n_eff,
        e: (n_eff % 2) as u8,
        q_p: node.digit(p),
        m,
    })
}

pub fn maneuver_group(c: &CornerClass) -> Result<ManeuverGroup> {
    use ManeuverGroup::*;
    Ok(match c.tuple() {
        (0, 0, 3) | (0, 3, 0) | (1, 1, 0) | (1, 2, 3) | (0, 1, 3) | (0, 2, 0) => SkipForward,
        (1, 0, 3) | (0, 2, 3) | (1, 1, 3) => BacktrackThree,
        (0, 1, 0) | (1, 3, 0) | (1, 2, 0) => DetourAhead,
        (e, q_p, m) => return Err(Error::UnclassifiedTuple { e, q_p, m }),
    })
}

/// Maneuver for an obstacle on `node`; terminal nodes cannot be evaded.
pub fn maneuver_for(node: NodeIndex) -> Result<ManeuverGroup> {
    match classify(node) {
        Classification::NonCorner => Ok(ManeuverGroup::NonCornerSkip),
        Classification::Corner(c) => maneuver_group(&c),
        Classification::Terminal => Err(Error::BlockedTerminal { node }),
    }
}
