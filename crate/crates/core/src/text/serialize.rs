use std::fmt::Write;

use super::Document;
use crate::chrono::EdgeKind;
use crate::kernel::{EventMode, StaticModel, ThimacId};

const INDENT: &str = "    ";

/// Canonical text for a document: fixed section order, sorted identifiers,
/// four-space indentation. An empty document yields an empty string.
pub fn serialize_model(doc: &Document) -> String {
    let mut sections: Vec<String> = Vec::new();
    let statics = &doc.model.statics;

    let mut s = String::new();
    for root in statics.roots() {
        write_thimac(&mut s, statics, &root.id, 0);
    }
    sections.push(s);

    sections.push(
        statics
            .flows
            .iter()
            .map(|f| format!("flow {} -> {};\n", f.from, f.to))
            .collect(),
    );
    sections.push(
        statics
            .triggers
            .iter()
            .map(|t| format!("trigger {} ~> {};\n", t.from, t.to))
            .collect(),
    );
    sections.push(
        statics
            .regions
            .values()
            .map(|r| {
                let nodes: Vec<&str> = r.nodes.iter().map(|n| n.as_str()).collect();
                format!("region {} = {{ {} }};\n", r.name, nodes.join(", "))
            })
            .collect(),
    );
    sections.push(
        doc.model
            .atoms
            .iter()
            .map(|(a, r)| format!("atom {a} = {r};\n"))
            .collect(),
    );

    let mut s = String::new();
    for (i, e) in doc.model.events.values().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        let _ = writeln!(s, "event {} @ {} over {} {{", e.id, e.time, e.region.name);
        for (atom, mode) in &e.constituents {
            let word = match mode {
                EventMode::Actual => "actual",
                EventMode::Absent => "absent",
            };
            let _ = writeln!(s, "{INDENT}{word} {atom};");
        }
        s.push_str("}\n");
    }
    sections.push(s);

    let mut s = String::new();
    for (i, c) in doc.chronologies.values().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        let _ = writeln!(s, "chronology {} {{", c.name);
        let mut linked = std::collections::BTreeSet::new();
        for e in c.edges() {
            linked.insert(e.source.as_str());
            linked.extend(e.targets.iter().map(|t| t.as_str()));
            let arrow = match e.kind {
                EdgeKind::Sequence | EdgeKind::Alternative { triggered: false } => "->",
                EdgeKind::Trigger | EdgeKind::Alternative { triggered: true } => "~>",
            };
            let target = match e.kind {
                EdgeKind::Alternative { .. } => format!("({})", e.targets.join(" | ")),
                _ => e.targets[0].clone(),
            };
            let _ = writeln!(s, "{INDENT}{} {arrow} {target};", e.source);
        }
        for n in c.nodes.iter().filter(|n| !linked.contains(n.as_str())) {
            let _ = writeln!(s, "{INDENT}{n};");
        }
        s.push_str("}\n");
    }
    sections.push(s);

    sections.push(
        doc.choices
            .iter()
            .map(|g| {
                let events: Vec<&str> = g.events.iter().map(|e| e.as_str()).collect();
                format!("choose {} of ({});\n", g.count, events.join(" | "))
            })
            .collect(),
    );
    sections.push(
        doc.constraints
            .values()
            .map(|c| format!("constraint {}: {c};\n", c.name))
            .collect(),
    );

    sections.retain(|s| !s.is_empty());
    sections.join("\n")
}

fn write_thimac(out: &mut String, statics: &StaticModel, id: &ThimacId, depth: usize) {
    let t = &statics.thimacs[id];
    let pad = INDENT.repeat(depth);
    let _ = writeln!(out, "{pad}thimac {} {{", t.name);
    let mut kinds: Vec<_> = t
        .actions
        .iter()
        .filter_map(|a| statics.actions.get(a))
        .map(|a| a.kind)
        .collect();
    kinds.sort();
    for k in kinds {
        let _ = writeln!(out, "{pad}{INDENT}{k};");
    }
    for child in &t.children {
        write_thimac(out, statics, child, depth + 1);
    }
    let _ = writeln!(out, "{pad}}}");
}
