//! TOML world files.
//!
//! ```toml
//! order = 3
//! obstacles = ["110", "23"]
//! obstacle_cells = [[5, 2]]   # column, row at `order`
//! default_order = 2
//!
//! [[regions]]
//! prefix = "2"
//! order = 3
//! ```
//!
//! `regions` and `default_order` are optional; giving either one turns on
//! non-uniform coverage.

use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::hilbert::{inverse_map_center, GridCell, NodeIndex};
use crate::nonuniform::{Region, ResolutionMap};
use crate::world::World;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorld {
    order: Spanned<u32>,
    #[serde(default)]
    obstacles: Vec<Spanned<String>>,
    #[serde(default)]
    obstacle_cells: Vec<Spanned<[u64; 2]>>,
    #[serde(default)]
    regions: Vec<RawRegion>,
    default_order: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRegion {
    prefix: Spanned<String>,
    order: u32,
}

/// 1-based line and column of a byte offset.
fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before
        .rfind('\n')
        .map_or(before.len(), |nl| before.len() - nl - 1)
        + 1;
    (line, column)
}

fn parse_error(src: &str, span: Range<usize>, message: String) -> Error {
    let (line, column) = position(src, span.start);
    Error::Parse {
        line,
        column,
        message,
    }
}

fn parse_prefix(src: &str, token: &Spanned<String>, what: &str) -> Result<NodeIndex> {
    token.get_ref().parse().map_err(|e: Error| {
        parse_error(
            src,
            token.span(),
            format!("{what} {:?}: {e}", token.get_ref()),
        )
    })
}

/// Parses a world file. Errors carry the line and column of the offending token.
pub fn parse_world(src: &str) -> Result<World> {
    let raw: RawWorld = toml::from_str(src).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        parse_error(src, span, e.message().to_string())
    })?;
    let order = *raw.order.get_ref();

    let mut obstacles = Vec::new();
    for token in &raw.obstacles {
        let node = parse_prefix(src, token, "obstacle")?;
        if node.order() == 0 || node.order() > order {
            return Err(parse_error(
                src,
                token.span(),
                format!(
                    "obstacle {:?} must have between 1 and {order} digits",
                    token.get_ref()
                ),
            ));
        }
        obstacles.push(node);
    }
    for token in &raw.obstacle_cells {
        let [i, j] = *token.get_ref();
        let cell = GridCell::new(order, i, j)
            .map_err(|e| parse_error(src, token.span(), format!("obstacle cell: {e}")))?;
        obstacles.push(inverse_map_center(cell));
    }
    let world = World::new(order, obstacles)
        .map_err(|e| parse_error(src, raw.order.span(), e.to_string()))?;

    if raw.regions.is_empty() && raw.default_order.is_none() {
        return Ok(world);
    }
    let mut regions = Vec::new();
    for r in &raw.regions {
        regions.push(Region {
            prefix: parse_prefix(src, &r.prefix, "region")?,
            order: r.order,
        });
    }
    let map = ResolutionMap::new(raw.default_order.unwrap_or(order), regions)?;
    world.with_resolution(map)
}

pub fn read_world(path: impl AsRef<Path>) -> Result<World> {
    parse_world(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_world() {
        let w = parse_world("order = 3\nobstacles = [\"110\", \"23\"]\n").unwrap();
        assert_eq!(w.order(), 3);
        assert_eq!(w.obstacles().len(), 2);
        assert!(w.resolution().is_none());
    }

    #[test]
    fn cells_are_converted_to_prefixes() {
        let w = parse_world("order = 2\nobstacle_cells = [[1, 2]]\n").unwrap();
        assert_eq!(w.obstacles()[0].cell(), GridCell::new(2, 1, 2).unwrap());
    }

    #[test]
    fn regions_make_a_resolution_map() {
        let src = "order = 3\ndefault_order = 2\n[[regions]]\nprefix = \"2\"\norder = 3\n";
        let w = parse_world(src).unwrap();
        assert_eq!(w.leaves().unwrap().len(), 28);
    }

    #[test]
    fn bad_digit_is_named_with_its_position() {
        let err = parse_world("order = 3\nobstacles = [\"12\", \"142\"]\n").unwrap_err();
        match err {
            Error::Parse {
                line,
                column,
                message,
            } => {
                assert_eq!((line, column), (2, 20));
                assert!(message.contains("\"142\""), "{message}");
                assert!(message.contains("'4'"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_are_positioned() {
        let err = parse_world("order = 3\nobstacles = [\"12\"\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2.., .. }), "{err:?}");
        let err = parse_world("order = 3\nobstacle = []\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }
}
