use std::collections::BTreeSet;

use super::model::{ActionKind, StaticModel, ThimacId};
use crate::diag::{DiagCode, Diagnostic, Subject};

/// Checks the structural rules of a static model and returns every
/// violation found. An empty result means the model is well formed.
pub fn validate_static(model: &StaticModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_thimacs(model, &mut out);
    check_nesting(model, &mut out);
    check_actions(model, &mut out);
    check_flows(model, &mut out);
    check_triggers(model, &mut out);
    check_regions(model, &mut out);
    out
}

fn dangling(subject: Subject, what: String) -> Diagnostic {
    Diagnostic::new(DiagCode::DanglingRef, what).about(subject)
}

fn check_thimacs(model: &StaticModel, out: &mut Vec<Diagnostic>) {
    for (id, t) in &model.thimacs {
        let subject = || Subject::Thimac(id.to_string());
        if let Some(p) = &t.parent {
            if !model.thimacs.contains_key(p) {
                out.push(dangling(subject(), format!("thimac `{id}` has unknown parent `{p}`")));
            }
        }
        for c in &t.children {
            if !model.thimacs.contains_key(c) {
                out.push(dangling(subject(), format!("thimac `{id}` has unknown child `{c}`")));
            }
        }
        let mut has_create = false;
        for a in &t.actions {
            match model.actions.get(a) {
                None => out.push(dangling(subject(), format!("thimac `{id}` lists unknown action `{a}`"))),
                Some(node) => has_create |= node.kind == ActionKind::Create && &node.owner == id,
            }
        }
        if !has_create {
            out.push(
                Diagnostic::new(DiagCode::NoCreate, format!("thimac `{id}` has no create action"))
                    .about(subject()),
            );
        }
    }
}

fn check_nesting(model: &StaticModel, out: &mut Vec<Diagnostic>) {
    let mut reported: BTreeSet<ThimacId> = BTreeSet::new();
    for start in model.thimacs.keys() {
        let mut seen: Vec<&ThimacId> = vec![start];
        let mut cur = model.thimacs.get(start).and_then(|t| t.parent.as_ref());
        while let Some(id) = cur {
            if let Some(at) = seen.iter().position(|s| *s == id) {
                let cycle: BTreeSet<ThimacId> = seen[at..].iter().map(|s| (*s).clone()).collect();
                if cycle.iter().all(|c| !reported.contains(c)) {
                    let first = cycle.iter().next().expect("nonempty cycle").clone();
                    let names: Vec<&str> = cycle.iter().map(|c| c.as_str()).collect();
                    out.push(
                        Diagnostic::new(
                            DiagCode::CyclicNesting,
                            format!("thimac nesting forms a cycle through {}", names.join(", ")),
                        )
                        .about(Subject::Thimac(first.to_string())),
                    );
                    reported.extend(cycle);
                }
                break;
            }
            seen.push(id);
            cur = model.thimacs.get(id).and_then(|t| t.parent.as_ref());
        }
    }
}

fn check_actions(model: &StaticModel, out: &mut Vec<Diagnostic>) {
    for (id, node) in &model.actions {
        if !model.thimacs.contains_key(&node.owner) {
            out.push(dangling(
                Subject::Action(id.to_string()),
                format!("action `{id}` is owned by unknown thimac `{}`", node.owner),
            ));
        }
    }
}

fn check_flows(model: &StaticModel, out: &mut Vec<Diagnostic>) {
    for arc in &model.flows {
        let subject = || Subject::Flow {
            from: arc.from.to_string(),
            to: arc.to.to_string(),
        };
        let (Some(from), Some(to)) = (model.actions.get(&arc.from), model.actions.get(&arc.to)) else {
            out.push(dangling(
                subject(),
                format!("flow `{} -> {}` references an unknown action", arc.from, arc.to),
            ));
            continue;
        };
        let nested = model.encloses(&from.owner, &to.owner) || model.encloses(&to.owner, &from.owner);
        if !nested && !(from.kind == ActionKind::Transfer && to.kind == ActionKind::Transfer) {
            out.push(
                Diagnostic::new(
                    DiagCode::IllegalBoundaryFlow,
                    format!(
                        "flow `{} -> {}` crosses from `{}` into `{}` without going transfer to transfer",
                        arc.from, arc.to, from.owner, to.owner
                    ),
                )
                .about(subject()),
            );
        }
    }
}

fn check_triggers(model: &StaticModel, out: &mut Vec<Diagnostic>) {
    for arc in &model.triggers {
        if !model.actions.contains_key(&arc.from) || !model.actions.contains_key(&arc.to) {
            out.push(dangling(
                Subject::Trigger {
                    from: arc.from.to_string(),
                    to: arc.to.to_string(),
                },
                format!("trigger `{} ~> {}` references an unknown action", arc.from, arc.to),
            ));
        }
    }
}

fn check_regions(model: &StaticModel, out: &mut Vec<Diagnostic>) {
    for (name, region) in &model.regions {
        let subject = || Subject::Region(name.clone());
        if region.nodes.is_empty() {
            out.push(Diagnostic::new(DiagCode::EmptyRegion, format!("region `{name}` has no nodes")).about(subject()));
        }
        for n in &region.nodes {
            if !model.actions.contains_key(n) {
                out.push(dangling(subject(), format!("region `{name}` names unknown action `{n}`")));
            }
        }
        for arc in &region.arcs {
            let (a, b) = arc.endpoints();
            if !region.nodes.contains(a) || !region.nodes.contains(b) {
                out.push(dangling(
                    subject(),
                    format!("region `{name}` holds arc `{a}` to `{b}` leaving its nodes"),
                ));
            }
        }
    }
}
