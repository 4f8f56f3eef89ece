mod common;

use common::{figures, golden_dir, maybe_update_golden};

#[test]
fn figures_match_golden_files() {
    maybe_update_golden();
    for (name, svg) in figures() {
        let path = golden_dir().join(&name);
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e} (rerun with UPDATE_GOLDEN=1)", path.display()));
        assert!(svg == expected, "{name} differs from its golden file");
    }
}

#[test]
fn figures_are_reproducible() {
    assert_eq!(figures(), figures());
}
