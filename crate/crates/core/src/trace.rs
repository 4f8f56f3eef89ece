use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corner::{Classification, ManeuverGroup};
use crate::dyadic::{Dyadic, ExactPoint};
use crate::error::Error;
use crate::hilbert::{GridCell, NodeIndex};

/// What kind of move brought the agent into a step's node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    /// Next node of the plan, in curve order.
    Normal,
    /// First node after a maneuver rejoins the curve order.
    Skip,
    /// Out-of-order node visited as part of a maneuver.
    Detour,
    /// A node the agent has already been in.
    Revisit,
    /// Move to the parent node.
    Ascend,
    /// Move to a child node.
    Descend,
}

impl Event {
    pub fn as_str(self) -> &'static str {
        match self {
            Event::Normal => "normal",
            Event::Skip => "skip",
            Event::Detour => "detour",
            Event::Revisit => "revisit",
            Event::Ascend => "ascend",
            Event::Descend => "descend",
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Event {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "normal" => Event::Normal,
            "skip" => Event::Skip,
            "detour" => Event::Detour,
            "revisit" => Event::Revisit,
            "ascend" => Event::Ascend,
            "descend" => Event::Descend,
            _ => {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("unknown event {s:?}"),
                })
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    /// Index of the plan entry this step serves.
    pub slot: u64,
    /// Start of the node's parameter interval.
    pub t: Dyadic,
    pub node: NodeIndex,
    pub cell: GridCell,
    pub event: Event,
}

/// A maneuver the planner chose after sensing a blocked node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ManeuverRecord {
    pub slot: u64,
    pub obstacle: NodeIndex,
    /// Where the agent stood when it committed to the maneuver.
    pub from: NodeIndex,
    pub classification: Classification,
    pub group: ManeuverGroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceStats {
    pub steps: usize,
    pub distinct_cells: usize,
    pub revisits: usize,
    pub path_length: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<Step>,
    pub maneuvers: Vec<ManeuverRecord>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeIndex> + '_ {
        self.steps.iter().map(|s| s.node)
    }

    pub fn centers(&self) -> Vec<ExactPoint> {
        self.steps.iter().map(|s| s.cell.center()).collect()
    }

    /// The first `len` steps, for negative controls.
    pub fn truncated(&self, len: usize) -> Trace {
        Trace {
            steps: self.steps[..len.min(self.steps.len())].to_vec(),
            maneuvers: self.maneuvers.clone(),
        }
    }

    pub fn stats(&self) -> TraceStats {
        let mut seen = HashSet::new();
        let mut revisits = 0;
        for s in &self.steps {
            if !seen.insert(s.node) {
                revisits += 1;
            }
        }
        let path_length = self
            .centers()
            .windows(2)
            .map(|w| {
                let [x0, y0] = w[0].to_f64();
                let [x1, y1] = w[1].to_f64();
                (x1 - x0).hypot(y1 - y0)
            })
            .sum();
        TraceStats {
            steps: self.steps.len(),
            distinct_cells: seen.len(),
            revisits,
            path_length,
        }
    }
}
