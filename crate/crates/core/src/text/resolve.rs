//! Turns parsed declarations into model objects, reporting every reference
//! that does not resolve.

use std::collections::{BTreeMap, BTreeSet};

use super::parser::{ChronoStmt, Ident, Item, PathRef, SourceModel, ThimacDecl};
use super::Document;
use crate::chrono::{ChoiceGroup, ChronoEdge, Chronology, Constraint, EdgeKind};
use crate::diag::{DiagCode, Diagnostic, Pos, Subject};
use crate::kernel::{ActionId, Event, StaticModel, ThimacId};

struct Resolver {
    doc: Document,
    diags: Vec<Diagnostic>,
}

pub(crate) fn resolve(source: &SourceModel) -> (Document, Vec<Diagnostic>) {
    let mut r = Resolver {
        doc: Document::default(),
        diags: Vec::new(),
    };
    // Declarations may appear in any order; resolve by layer.
    for d in &source.decls {
        if let Item::Thimac(t) = &d.item {
            r.thimac(None, t);
        }
    }
    for d in &source.decls {
        match &d.item {
            Item::Flow { from, to } => r.arc(from, to, false),
            Item::Trigger { from, to } => r.arc(from, to, true),
            _ => {}
        }
    }
    for d in &source.decls {
        if let Item::Region { name, nodes } = &d.item {
            r.region(d.pos, name, nodes);
        }
    }
    for d in &source.decls {
        if let Item::Atom { name, region } = &d.item {
            r.atom(name, region);
        }
    }
    for d in &source.decls {
        if let Item::Event {
            name,
            time,
            over,
            constituents,
        } = &d.item
        {
            r.event(name, *time, over.as_ref(), constituents);
        }
    }
    for d in &source.decls {
        if let Item::Chronology { name, stmts } = &d.item {
            r.chronology(name, stmts);
        }
    }
    for d in &source.decls {
        if let Item::Choose { count, events } = &d.item {
            r.choose(d.pos, *count, events);
        }
    }
    for d in &source.decls {
        if let Item::Constraint { name, lhs, kind, rhs } = &d.item {
            r.constraint(
                name,
                Constraint {
                    name: name.text.clone(),
                    lhs: lhs.clone(),
                    kind: *kind,
                    rhs: rhs.clone(),
                },
            );
        }
    }
    (r.doc, r.diags)
}

impl Resolver {
    fn err(&mut self, code: DiagCode, pos: Pos, msg: String) {
        self.diags.push(Diagnostic::new(code, msg).at(pos));
    }

    fn statics(&mut self) -> &mut StaticModel {
        &mut self.doc.model.statics
    }

    fn thimac(&mut self, parent: Option<&ThimacId>, decl: &ThimacDecl) {
        let id = match self.statics().add_thimac(parent, &decl.name.text) {
            Ok(id) => id,
            Err(_) => {
                let full = match parent {
                    Some(p) => p.child(&decl.name.text),
                    None => ThimacId(decl.name.text.clone()),
                };
                self.err(DiagCode::DuplicateId, decl.name.pos, format!("thimac `{full}` is declared twice"));
                return;
            }
        };
        for (kind, pos) in &decl.actions {
            if self.statics().add_action(&id, *kind).is_err() {
                self.err(DiagCode::DuplicateId, *pos, format!("thimac `{id}` declares `{kind}` twice"));
            }
        }
        for child in &decl.children {
            self.thimac(Some(&id), child);
        }
    }

    fn action(&mut self, path: &PathRef) -> Option<ActionId> {
        let thimac = ThimacId(path.thimac_id());
        let Some(t) = self.doc.model.statics.thimacs.get(&thimac) else {
            self.err(DiagCode::Unresolved, path.pos, format!("unknown thimac `{thimac}`"));
            return None;
        };
        let id = thimac.action(path.kind);
        if !t.actions.contains(&id) {
            self.err(
                DiagCode::Unresolved,
                path.pos,
                format!("thimac `{thimac}` has no `{}` action", path.kind),
            );
            return None;
        }
        Some(id)
    }

    fn arc(&mut self, from: &PathRef, to: &PathRef, trigger: bool) {
        let (Some(a), Some(b)) = (self.action(from), self.action(to)) else {
            return;
        };
        let added = if trigger {
            self.statics().add_trigger(a.clone(), b.clone())
        } else {
            self.statics().add_flow(a.clone(), b.clone())
        };
        if added == Ok(false) {
            let what = if trigger { "trigger" } else { "flow" };
            self.err(DiagCode::DuplicateArc, from.pos, format!("{what} `{a}` to `{b}` is declared twice"));
        }
    }

    fn region(&mut self, pos: Pos, name: &Ident, nodes: &[PathRef]) {
        if nodes.is_empty() {
            self.err(DiagCode::EmptyRegion, pos, format!("region `{}` has no nodes", name.text));
            return;
        }
        if self.doc.model.statics.regions.contains_key(&name.text) {
            self.err(DiagCode::DuplicateId, name.pos, format!("region `{}` is declared twice", name.text));
            return;
        }
        let ids: Vec<Option<ActionId>> = nodes.iter().map(|p| self.action(p)).collect();
        if ids.iter().any(|i| i.is_none()) {
            return;
        }
        self.statics()
            .add_region(&name.text, ids.into_iter().flatten())
            .expect("nodes resolved and name fresh");
    }

    fn atom(&mut self, name: &Ident, region: &Ident) {
        if self.doc.model.atoms.contains_key(&name.text) {
            self.err(DiagCode::DuplicateId, name.pos, format!("atom `{}` is declared twice", name.text));
            return;
        }
        if !self.doc.model.statics.regions.contains_key(&region.text) {
            self.err(DiagCode::Unresolved, region.pos, format!("unknown region `{}`", region.text));
            return;
        }
        self.doc.model.atoms.insert(name.text.clone(), region.text.clone());
    }

    fn event(
        &mut self,
        name: &Ident,
        time: u64,
        over: Option<&Ident>,
        constituents: &[(crate::kernel::EventMode, Ident)],
    ) {
        if self.doc.model.events.contains_key(&name.text) {
            self.err(DiagCode::DuplicateId, name.pos, format!("event `{}` is declared twice", name.text));
            return;
        }
        let mut decls = BTreeMap::new();
        let mut ok = true;
        for (mode, atom) in constituents {
            if !self.doc.model.atoms.contains_key(&atom.text) {
                self.err(DiagCode::Unresolved, atom.pos, format!("unknown atom `{}`", atom.text));
                ok = false;
            } else if decls.insert(atom.text.clone(), *mode).is_some() {
                self.err(
                    DiagCode::DuplicateId,
                    atom.pos,
                    format!("event `{}` declares atom `{}` twice", name.text, atom.text),
                );
                ok = false;
            }
        }
        let region_name = match over {
            Some(r) => {
                if !self.doc.model.statics.regions.contains_key(&r.text) {
                    self.err(DiagCode::Unresolved, r.pos, format!("unknown region `{}`", r.text));
                    return;
                }
                r.text.clone()
            }
            None => {
                if !ok {
                    return;
                }
                self.doc.model.atoms[&constituents[0].1.text].clone()
            }
        };
        if !ok {
            return;
        }
        let region = self.doc.model.statics.regions[&region_name].clone();
        self.doc.model.events.insert(
            name.text.clone(),
            Event {
                id: name.text.clone(),
                region,
                time,
                mode: crate::kernel::EventMode::Actual,
                constituents: decls,
            },
        );
    }

    fn known_event(&mut self, id: &Ident) -> bool {
        if self.doc.model.events.contains_key(&id.text) {
            true
        } else {
            self.err(DiagCode::Unresolved, id.pos, format!("unknown event `{}`", id.text));
            false
        }
    }

    fn chronology(&mut self, name: &Ident, stmts: &[ChronoStmt]) {
        if self.doc.chronologies.contains_key(&name.text) {
            self.err(DiagCode::DuplicateId, name.pos, format!("chronology `{}` is declared twice", name.text));
            return;
        }
        let mut chron = Chronology::new(name.text.clone());
        for s in stmts {
            match s {
                ChronoStmt::Node(n) => {
                    if self.known_event(n) {
                        chron.add_node(n.text.clone());
                    }
                }
                ChronoStmt::Sequence(a, b) | ChronoStmt::Trigger(a, b) => {
                    let ok = self.known_event(a) & self.known_event(b);
                    if ok {
                        if matches!(s, ChronoStmt::Sequence(..)) {
                            chron.sequence(&a.text, &b.text);
                        } else {
                            chron.trigger(&a.text, &b.text);
                        }
                    }
                }
                ChronoStmt::Alternative {
                    source,
                    targets,
                    triggered,
                } => {
                    let mut ok = self.known_event(source);
                    for t in targets {
                        ok &= self.known_event(t);
                    }
                    let distinct: BTreeSet<&str> = targets.iter().map(|t| t.text.as_str()).collect();
                    if distinct.len() != targets.len() {
                        self.err(
                            DiagCode::Chronology,
                            source.pos,
                            format!("alternative from `{}` repeats a branch", source.text),
                        );
                        ok = false;
                    } else if targets.len() < 2 {
                        self.err(
                            DiagCode::Chronology,
                            source.pos,
                            format!("alternative from `{}` needs at least two branches", source.text),
                        );
                        ok = false;
                    }
                    if ok {
                        chron.add_edge(ChronoEdge {
                            kind: EdgeKind::Alternative { triggered: *triggered },
                            source: source.text.clone(),
                            targets: distinct.into_iter().map(String::from).collect(),
                        });
                    }
                }
            }
        }
        self.doc.chronologies.insert(name.text.clone(), chron);
    }

    fn choose(&mut self, pos: Pos, count: u64, events: &[Ident]) {
        let mut ok = true;
        for e in events {
            ok &= self.known_event(e);
        }
        if !ok {
            return;
        }
        let distinct: BTreeSet<&str> = events.iter().map(|e| e.text.as_str()).collect();
        if count == 0 || count as usize > distinct.len() {
            self.err(
                DiagCode::Chronology,
                pos,
                format!("cannot choose {count} of {} distinct events", distinct.len()),
            );
            return;
        }
        let group = ChoiceGroup {
            count: count as usize,
            events: events.iter().map(|e| e.text.clone()).collect(),
        };
        if !self.doc.choices.insert(group.clone()) {
            self.err(DiagCode::DuplicateId, pos, "choice group is declared twice".to_string());
            return;
        }
        for chron in self.doc.chronologies.values_mut() {
            if group.events.iter().any(|e| chron.nodes.contains(e)) {
                chron.add_choice(group.clone());
            }
        }
    }

    fn constraint(&mut self, name: &Ident, c: Constraint) {
        if self.doc.constraints.contains_key(&name.text) {
            self.err(DiagCode::DuplicateId, name.pos, format!("constraint `{}` is declared twice", name.text));
            return;
        }
        let unknown: Vec<String> = c
            .lhs
            .atoms()
            .into_iter()
            .chain(c.rhs.atoms())
            .filter(|a| !self.doc.model.atoms.contains_key(*a))
            .map(String::from)
            .collect();
        if !unknown.is_empty() {
            self.err(
                DiagCode::Unresolved,
                name.pos,
                format!("constraint `{}` uses unknown atom `{}`", name.text, unknown[0]),
            );
            return;
        }
        self.doc.constraints.insert(name.text.clone(), c);
    }
}

/// Finds where a structural subject was declared.
pub(crate) fn position_of(source: &SourceModel, subject: &Subject) -> Option<Pos> {
    fn find_thimac(decl: &ThimacDecl, prefix: &str, target: &str) -> Option<Pos> {
        let id = if prefix.is_empty() {
            decl.name.text.clone()
        } else {
            format!("{prefix}.{}", decl.name.text)
        };
        if id == target {
            return Some(decl.name.pos);
        }
        if let Some(rest) = target.strip_prefix(&id) {
            if let Some(kind) = rest.strip_prefix('.') {
                if let Some((_, pos)) = decl.actions.iter().find(|(k, _)| k.as_str() == kind) {
                    return Some(*pos);
                }
            }
        }
        decl.children.iter().find_map(|c| find_thimac(c, &id, target))
    }

    source.decls.iter().find_map(|d| match (&d.item, subject) {
        (Item::Thimac(t), Subject::Thimac(id) | Subject::Action(id)) => find_thimac(t, "", id),
        (Item::Flow { from, to }, Subject::Flow { from: f, to: g })
        | (Item::Trigger { from, to }, Subject::Trigger { from: f, to: g }) => {
            (&from.action_id() == f && &to.action_id() == g).then_some(d.pos)
        }
        (Item::Region { name, .. }, Subject::Region(r)) => (&name.text == r).then_some(d.pos),
        _ => None,
    })
}
