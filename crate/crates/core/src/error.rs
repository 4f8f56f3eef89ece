//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::corner::ManeuverGroup;
use crate::hilbert::NodeIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank {rank} is out of range for order {order} (must be < 4^{order})")]
    RankOutOfRange { rank: u64, order: u32 },

    #[error("order {order} exceeds the supported maximum of {max}")]
    OrderTooLarge { order: u32, max: u32 },

    #[error("order must be at least {min}, got {order}")]
    OrderTooSmall { order: u32, min: u32 },

    #[error("invalid quaternary digit {digit:?}")]
    InvalidDigit { digit: char },

    #[error("cell ({i}, {j}) is outside the order-{order} grid")]
    CellOutOfRange { order: u32, i: u64, j: u64 },

    #[error("point is not the center of an order-{order} cell")]
    NotACellCenter { order: u32 },

    #[error("classification tuple ({e}, {q_p}, {m}) has no evasive maneuver")]
    UnclassifiedTuple { e: u8, q_p: u8, m: u8 },

    #[error("{group:?} cannot be applied at slot {slot} of an order-{order} sequence")]
    ManeuverOutOfRange {
        group: ManeuverGroup,
        slot: u64,
        order: u32,
    },

    #[error("terminal node {node} is blocked")]
    BlockedTerminal { node: NodeIndex },

    #[error("sensor query for {query} from {position} is outside the agent's neighborhood")]
    SensingViolation {
        position: NodeIndex,
        query: NodeIndex,
    },

    #[error("cannot reach {target} while evading {obstacle}: {blocked} is blocked")]
    ManeuverBlocked {
        obstacle: NodeIndex,
        target: NodeIndex,
        blocked: NodeIndex,
    },

    #[error("obstacle {obstacle} is finer than the leaf {leaf} that contains it")]
    ObstacleFinerThanLeaf {
        obstacle: NodeIndex,
        leaf: NodeIndex,
    },

    #[error("no obstacle-free move from {from} towards {to}")]
    NoClearPath { from: NodeIndex, to: NodeIndex },

    #[error("invalid world: {0}")]
    InvalidWorld(String),

    #[error("invalid resolution map: {0}")]
    InvalidResolution(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
