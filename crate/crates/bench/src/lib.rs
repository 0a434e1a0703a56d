//! Shared setup for the engine benchmarks.

use std::path::PathBuf;

use tmlogic::{parse_model, Document};

/// Parses one of the workspace fixtures.
pub fn fixture(name: &str) -> Document {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_model(&text).unwrap_or_else(|d| panic!("{name}: {d:?}")).document
}
