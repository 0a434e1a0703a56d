mod common;

use common::{fixture_text, load};
use proptest::prelude::*;
use tmlogic::{deactualize, parse_formula, parse_model, realize, serialize_model, Formula, Mode};

#[test]
fn fixtures_survive_serialization() {
    for name in ["waiter.tm", "library.tm"] {
        let doc = load(name);
        let text = serialize_model(&doc);
        let again = parse_model(&text).unwrap_or_else(|d| panic!("{name}: {d:#?}\n{text}"));
        assert_eq!(again.document, doc, "{name}");
        assert_eq!(serialize_model(&again.document), text, "{name}: not a fixpoint");
    }
}

/// Splits a model text into top-level declarations, keeping comments with
/// the declaration that follows them.
fn declarations(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for line in text.lines() {
        cur.push_str(line);
        cur.push('\n');
        depth += line.matches('{').count() as i32 - line.matches('}').count() as i32;
        let trimmed = line.trim_end();
        if depth == 0 && (trimmed.ends_with(';') || trimmed.ends_with('}')) {
            out.push(std::mem::take(&mut cur));
        }
    }
    out
}

#[test]
fn declaration_order_does_not_change_canonical_text() {
    for name in ["waiter.tm", "library.tm"] {
        let text = fixture_text(name);
        let mut decls = declarations(&text);
        decls.reverse();
        let shuffled = decls.concat();
        assert_ne!(shuffled, text);
        let a = parse_model(&text).unwrap().document;
        let b = parse_model(&shuffled).unwrap().document;
        assert_eq!(serialize_model(&a), serialize_model(&b), "{name}");
    }
}

#[test]
fn every_region_round_trips_through_its_event() {
    for name in ["waiter.tm", "library.tm"] {
        let doc = load(name);
        for region in doc.model.statics.regions.values() {
            for mode in [Mode::Actual, Mode::Absent] {
                let event = realize(region, 7, mode).unwrap();
                assert_eq!(deactualize(&event), region);
            }
        }
        for event in doc.model.events.values() {
            assert_eq!(deactualize(event), &doc.model.statics.regions[&event.region.name]);
        }
    }
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(vec!["A", "B", "C", "D"]).prop_map(Formula::atom);
    leaf.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
        ]
    })
}

proptest! {
    #[test]
    fn formula_display_parses_back(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }
}
