//! Files in and out: world descriptions, tables, figures.

pub mod export;
pub mod svg;
pub mod world_file;

pub use export::{read_trace_csv, write_curve_csv, write_trace_csv, MapVariant, RunReport};
pub use svg::{curve_svg, trace_svg};
pub use world_file::{parse_world, read_world};
