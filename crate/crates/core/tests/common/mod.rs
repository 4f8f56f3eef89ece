use std::path::{Path, PathBuf};

use hilbert_cover::io::{curve_svg, read_world, trace_svg, MapVariant};
use hilbert_cover::simulate;

pub fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_dir() -> PathBuf {
    manifest_dir().join("tests/golden")
}

/// World files drawn as figures, in a fixed order.
pub const FIGURE_WORLDS: [&str; 8] = [
    "corner_010_detour",
    "corner_110_skip",
    "corner_003_skip",
    "corner_103_backtrack",
    "corner_013_skip",
    "corner_113_backtrack",
    "multi_obstacle",
    "nonuniform",
];

/// Every figure as (file name, SVG text).
pub fn figures() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (name, variant) in [
        ("standard", MapVariant::Standard),
        ("center", MapVariant::Center),
    ] {
        for order in [2, 3] {
            out.push((
                format!("curve_{name}_{order}.svg"),
                curve_svg(order, variant).unwrap(),
            ));
        }
    }
    for stem in FIGURE_WORLDS {
        let world = read_world(manifest_dir().join("worlds").join(format!("{stem}.toml"))).unwrap();
        let trace = simulate(&world).unwrap();
        let caption = format!("{stem} ({} steps)", trace.len());
        out.push((
            format!("{stem}.svg"),
            trace_svg(&world, &trace, &caption).unwrap(),
        ));
    }
    out
}

/// Writes the figures as new golden files when `UPDATE_GOLDEN` is set.
pub fn maybe_update_golden() {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        for (name, svg) in figures() {
            std::fs::write(golden_dir().join(name), svg).unwrap();
        }
    }
}
