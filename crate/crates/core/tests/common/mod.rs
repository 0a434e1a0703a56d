#![allow(dead_code)]

use std::path::PathBuf;

use tmlogic::{parse_model, Document};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

pub fn load(name: &str) -> Document {
    match parse_model(&fixture_text(name)) {
        Ok(p) => {
            assert!(p.warnings.is_empty(), "{name}: {:?}", p.warnings);
            p.document
        }
        Err(diags) => panic!("{name} failed to parse: {diags:#?}"),
    }
}

/// The library fixture with the `absent S;` line of E3 removed.
pub fn mutated_library_text() -> String {
    let text = fixture_text("library.tm");
    let start = text.find("event E3").expect("E3 present");
    let line = text[start..].find("    absent S;\n").expect("E3 declares absent S") + start;
    let mut out = text.clone();
    out.replace_range(line..line + "    absent S;\n".len(), "");
    out
}
