//! Tables of curve nodes and trace steps.

use std::io::{Read, Write};

use serde::Serialize;

use crate::corner::ManeuverGroup;
use crate::dyadic::ExactPoint;
use crate::error::{Error, Result};
use crate::hilbert::{map_center, map_standard, node_count, NodeIndex};
use crate::simulator::CoverageReport;
use crate::trace::{Event, ManeuverRecord, Step, Trace, TraceStats};
use crate::world::World;

/// Which curve map places the nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapVariant {
    /// Start corner of each node's sub-square.
    Standard,
    /// Center of each node's sub-square.
    Center,
}

impl MapVariant {
    pub fn point(self, node: NodeIndex) -> ExactPoint {
        match self {
            MapVariant::Standard => map_standard(node),
            MapVariant::Center => map_center(node).center(),
        }
    }

    /// Points of all order-`order` nodes in rank order.
    pub fn points(self, order: u32) -> Result<Vec<ExactPoint>> {
        (0..node_count(order))
            .map(|r| Ok(self.point(NodeIndex::new(order, r)?)))
            .collect()
    }
}

fn csv_error(e: csv::Error) -> Error {
    match e.position() {
        Some(p) => Error::Parse {
            line: p.line() as usize,
            column: 1,
            message: e.to_string(),
        },
        None => Error::Io(e.to_string()),
    }
}

/// Writes `rank,digits,x,y` rows for every node of the given order.
pub fn write_curve_csv(order: u32, variant: MapVariant, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rank", "digits", "x", "y"])
        .map_err(csv_error)?;
    for r in 0..node_count(order) {
        let node = NodeIndex::new(order, r)?;
        let p = variant.point(node);
        w.write_record([
            r.to_string(),
            node.to_string(),
            p.x.to_decimal_string(),
            p.y.to_decimal_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

const TRACE_HEADER: [&str; 7] = ["slot", "t", "rank", "digits", "x", "y", "event"];

fn digits_field(node: NodeIndex) -> String {
    if node.is_root() {
        String::new()
    } else {
        node.to_string()
    }
}

/// Writes one row per step. Coordinates and parameters are exact decimals.
pub fn write_trace_csv(trace: &Trace, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER).map_err(csv_error)?;
    for s in &trace.steps {
        let c = s.cell.center();
        w.write_record([
            s.slot.to_string(),
            s.t.to_decimal_string(),
            s.node.rank().to_string(),
            digits_field(s.node),
            c.x.to_decimal_string(),
            c.y.to_decimal_string(),
            s.event.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a table written by [`write_trace_csv`]. Rows whose rank, parameter
/// or coordinates disagree with their digits are rejected.
pub fn read_trace_csv(input: impl Read) -> Result<Trace> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(csv_error)?.clone();
    if headers.iter().ne(TRACE_HEADER) {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("expected header {}", TRACE_HEADER.join(",")),
        });
    }
    let mut steps = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let bad = |column: usize, message: String| Error::Parse {
            line,
            column,
            message,
        };
        let slot: u64 = record[0]
            .parse()
            .map_err(|_| bad(1, format!("bad slot {:?}", &record[0])))?;
        let node: NodeIndex = record[3]
            .parse()
            .map_err(|e: Error| bad(4, format!("digits {:?}: {e}", &record[3])))?;
        let cell = node.cell();
        let center = cell.center();
        let expected = [
            node.t().to_decimal_string(),
            node.rank().to_string(),
            center.x.to_decimal_string(),
            center.y.to_decimal_string(),
        ];
        for (column, want) in [
            (2, &expected[0]),
            (3, &expected[1]),
            (5, &expected[2]),
            (6, &expected[3]),
        ] {
            if record[column - 1] != **want {
                return Err(bad(
                    column,
                    format!(
                        "{:?} does not match digits {node} (expected {want})",
                        &record[column - 1]
                    ),
                ));
            }
        }
        let event: Event = record[6]
            .parse()
            .map_err(|e: Error| bad(7, e.to_string()))?;
        steps.push(Step {
            slot,
            t: node.t(),
            node,
            cell,
            event,
        });
    }
    Ok(Trace {
        steps,
        maneuvers: Vec::new(),
    })
}

/// Everything the `cover` and `tree` commands report about one run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport<'a> {
    pub order: u32,
    pub obstacles: &'a [NodeIndex],
    pub leaves: usize,
    pub stats: TraceStats,
    pub maneuvers: Vec<ManeuverSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<&'a CoverageReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ManeuverSummary {
    pub slot: u64,
    pub obstacle: NodeIndex,
    pub from: NodeIndex,
    /// `(e, q_p, m)` for corners.
    pub tuple: Option<(u8, u8, u8)>,
    pub group: ManeuverGroup,
}

impl From<&ManeuverRecord> for ManeuverSummary {
    fn from(m: &ManeuverRecord) -> Self {
        let tuple = match m.classification {
            crate::corner::Classification::Corner(c) => Some(c.tuple()),
            _ => None,
        };
        ManeuverSummary {
            slot: m.slot,
            obstacle: m.obstacle,
            from: m.from,
            tuple,
            group: m.group,
        }
    }
}

impl<'a> RunReport<'a> {
    pub fn new(
        world: &'a World,
        trace: &Trace,
        coverage: Option<&'a CoverageReport>,
    ) -> Result<Self> {
        Ok(RunReport {
            order: world.order(),
            obstacles: world.obstacles(),
            leaves: world.leaves()?.len(),
            stats: trace.stats(),
            maneuvers: trace.maneuvers.iter().map(ManeuverSummary::from).collect(),
            coverage,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::simulate;

    #[test]
    fn curve_tables() {
        let mut buf = Vec::new();
        write_curve_csv(2, MapVariant::Center, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 17);
        assert_eq!(lines[1], "0,00,0.125,0.125");

        let mut buf = Vec::new();
        write_curve_csv(1, MapVariant::Standard, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1), Some("0,0,0,0"));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn trace_round_trip() {
        let world = World::new(3, ["110".parse().unwrap()]).unwrap();
        let trace = simulate(&world).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&trace, &mut buf).unwrap();
        let back = read_trace_csv(buf.as_slice()).unwrap();
        assert_eq!(back.steps, trace.steps);
    }

    #[test]
    fn inconsistent_rows_are_rejected() {
        let text = "slot,t,rank,digits,x,y,event\n0,0,0,00,0.125,0.375,normal\n";
        let err = read_trace_csv(text.as_bytes()).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 2,
                    column: 6,
                    ..
                }
            ),
            "{err:?}"
        );
    }
}
