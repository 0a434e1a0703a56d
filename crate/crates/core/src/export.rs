//! Graphviz DOT output for static models and chronologies. Output is a pure
//! function of the input; layout is left to the renderer.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::chrono::{replay, ChronoError, Chronology, EdgeKind, Trace};
use crate::kernel::{EventMode, StaticModel, ThimacId};

const INDENT: &str = "    ";

fn quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One cluster per thimac (nested like the thimacs), one node per action
/// labeled with its kind, solid flows and dashed triggers.
pub fn dot_static(model: &StaticModel) -> String {
    let mut out = String::from("digraph tm {\n");
    if model.is_empty() {
        out.push_str("}\n");
        return out;
    }
    let _ = writeln!(out, "{INDENT}compound=true;");
    let _ = writeln!(out, "{INDENT}node [shape=ellipse];");
    for root in model.roots() {
        write_cluster(&mut out, model, &root.id, 1);
    }
    for f in &model.flows {
        let _ = writeln!(out, "{INDENT}{} -> {};", quote(f.from.as_str()), quote(f.to.as_str()));
    }
    for t in &model.triggers {
        let _ = writeln!(
            out,
            "{INDENT}{} -> {} [style=dashed];",
            quote(t.from.as_str()),
            quote(t.to.as_str())
        );
    }
    out.push_str("}\n");
    out
}

fn write_cluster(out: &mut String, model: &StaticModel, id: &ThimacId, depth: usize) {
    let t = &model.thimacs[id];
    let pad = INDENT.repeat(depth);
    let _ = writeln!(out, "{pad}subgraph {} {{", quote(&format!("cluster_{id}")));
    let _ = writeln!(out, "{pad}{INDENT}label={};", quote(&t.name));
    let mut nodes: Vec<_> = t.actions.iter().filter_map(|a| model.actions.get(a)).collect();
    nodes.sort_by_key(|n| n.kind);
    for n in nodes {
        let _ = writeln!(out, "{pad}{INDENT}{} [label={}];", quote(n.id.as_str()), quote(n.kind.as_str()));
    }
    for child in &t.children {
        write_cluster(out, model, child, depth + 1);
    }
    let _ = writeln!(out, "{pad}}}");
}

/// Event boxes and chronology edges. With a trace, events occurring only as
/// actual are filled, events with an absent occurrence are left hollow, and
/// events outside the trace are dotted.
pub fn dot_chronology(chronology: &Chronology, trace: Option<&Trace>) -> Result<String, ChronoError> {
    let mut status: BTreeMap<&str, EventMode> = BTreeMap::new();
    if let Some(trace) = trace {
        replay(chronology, trace)?;
        for occ in &trace.steps {
            let s = status.entry(occ.event.as_str()).or_insert(EventMode::Actual);
            if occ.mode == EventMode::Absent {
                *s = EventMode::Absent;
            }
        }
    }

    let mut out = format!("digraph {} {{\n", quote(&chronology.name));
    let _ = writeln!(out, "{INDENT}rankdir=LR;");
    let _ = writeln!(out, "{INDENT}node [shape=box];");
    for n in &chronology.nodes {
        let style = match (trace, status.get(n.as_str())) {
            (None, _) => String::new(),
            (Some(_), Some(EventMode::Actual)) => " [style=filled, fillcolor=gray25, fontcolor=white]".into(),
            (Some(_), Some(EventMode::Absent)) => " [style=solid]".into(),
            (Some(_), None) => " [style=dotted]".into(),
        };
        let _ = writeln!(out, "{INDENT}{}{style};", quote(n));
    }
    for e in chronology.edges() {
        for t in &e.targets {
            let mut attrs = Vec::new();
            if e.kind.is_dashed() {
                attrs.push("style=dashed".to_string());
            }
            if matches!(e.kind, EdgeKind::Alternative { .. }) {
                attrs.push("label=\"∨\"".to_string());
            }
            let attrs = if attrs.is_empty() {
                String::new()
            } else {
                format!(" [{}]", attrs.join(", "))
            };
            let _ = writeln!(out, "{INDENT}{} -> {}{attrs};", quote(&e.source), quote(t));
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chrono::mark_absent;
    use crate::kernel::ActionKind;

    #[test]
    fn empty_model_is_a_bare_digraph() {
        assert_eq!(dot_static(&StaticModel::new()), "digraph tm {\n}\n");
    }

    #[test]
    fn clusters_nest_and_triggers_are_dashed() {
        let mut m = StaticModel::new();
        let w = m.add_thimac(None, "W").unwrap();
        let d = m.add_thimac(Some(&w), "D").unwrap();
        let a = m.add_action(&w, ActionKind::Create).unwrap();
        let b = m.add_action(&d, ActionKind::Create).unwrap();
        let c = m.add_action(&d, ActionKind::Process).unwrap();
        m.add_flow(a, b.clone()).unwrap();
        m.add_trigger(b, c).unwrap();
        let dot = dot_static(&m);
        let inner = dot.find("subgraph \"cluster_W.D\"").unwrap();
        let outer = dot.find("subgraph \"cluster_W\"").unwrap();
        assert!(outer < inner);
        assert!(dot.contains("\"W.create\" -> \"W.D.create\";"));
        assert!(dot.contains("\"W.D.create\" -> \"W.D.process\" [style=dashed];"));
        assert!(dot.contains("\"W.D.process\" [label=\"process\"];"));
    }

    #[test]
    fn single_event_chronology_is_one_box() {
        let mut c = Chronology::new("one");
        c.add_node("E");
        let dot = dot_chronology(&c, None).unwrap();
        assert_eq!(dot.matches("->").count(), 0);
        assert!(dot.contains("    \"E\";\n"));
    }

    #[test]
    fn absent_events_are_hollow() {
        let mut c = Chronology::new("c");
        c.sequence("A", "B");
        c.alternative("B", &["C", "D"], false);
        let t = Trace::actual(&["A", "B", "C"]);
        let t = mark_absent(&c, &t, "B").unwrap();
        let dot = dot_chronology(&c, Some(&t)).unwrap();
        assert!(dot.contains("\"A\" [style=filled"));
        assert!(dot.contains("\"B\" [style=solid]"));
        assert!(dot.contains("\"C\" [style=filled"));
        assert!(dot.contains("\"D\" [style=dotted]"));
        assert!(dot.contains("\"B\" -> \"C\" [label=\"∨\"];"));
    }

    #[test]
    fn inconsistent_trace_is_rejected() {
        let mut c = Chronology::new("c");
        c.sequence("A", "B");
        let t = Trace::actual(&["B", "A"]);
        assert!(dot_chronology(&c, Some(&t)).is_err());
    }
}
