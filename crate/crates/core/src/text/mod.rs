//! The `.tm` text format: parsing with positioned diagnostics, reference
//! resolution, and canonical serialization.

mod lexer;
mod parser;
mod resolve;
mod serialize;

use std::collections::{BTreeMap, BTreeSet};

use crate::chrono::{ChoiceGroup, Chronology, Constraint, ConstraintKind};
use crate::diag::{Diagnostic, Pos};
use crate::kernel::{validate_static, TmModel};
use crate::logic::{AnnotatedFormula, Formula, ModeAssignment};

pub use parser::{ChronoStmt, Decl, Ident, Item, PathRef, SourceModel, ThimacDecl};
pub use serialize::serialize_model;

use parser::Parser;

/// Everything a `.tm` file declares, fully resolved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub model: TmModel,
    pub chronologies: BTreeMap<String, Chronology>,
    pub choices: BTreeSet<ChoiceGroup>,
    pub constraints: BTreeMap<String, Constraint>,
}

impl Document {
    /// Constraints in name order.
    pub fn constraint_list(&self) -> Vec<Constraint> {
        self.constraints.values().cloned().collect()
    }

    /// The named chronology, or the only one when `name` is `None`.
    pub fn chronology(&self, name: Option<&str>) -> Option<&Chronology> {
        match name {
            Some(n) => self.chronologies.get(n),
            None if self.chronologies.len() == 1 => self.chronologies.values().next(),
            None => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedModel {
    pub source: SourceModel,
    pub document: Document,
    pub warnings: Vec<Diagnostic>,
}

fn analyze(text: &str) -> (Option<(SourceModel, Document)>, Vec<Diagnostic>) {
    let (mut parser, mut diags) = Parser::new(text);
    let (source, parse_diags) = parser.model();
    diags.extend(parse_diags);
    if diags.iter().any(|d| d.is_error()) {
        diags.sort_by_key(|d| d.pos);
        return (None, diags);
    }
    let (document, resolve_diags) = resolve::resolve(&source);
    diags.extend(resolve_diags);
    for d in validate_static(&document.model.statics) {
        let pos = d
            .subject
            .as_ref()
            .and_then(|s| resolve::position_of(&source, s))
            .unwrap_or(Pos::new(1, 1));
        diags.push(d.at(pos));
    }
    diags.sort_by_key(|d| d.pos);
    (Some((source, document)), diags)
}

/// Parses and resolves a model. Fails with every error found; warnings are
/// returned alongside a successful result.
pub fn parse_model(text: &str) -> Result<ParsedModel, Vec<Diagnostic>> {
    let (parsed, diags) = analyze(text);
    if diags.iter().any(|d| d.is_error()) {
        return Err(diags);
    }
    let (source, document) = parsed.expect("no errors means the model resolved");
    Ok(ParsedModel {
        source,
        document,
        warnings: diags,
    })
}

/// All diagnostics for a model text, errors and warnings, in source order.
pub fn check_model(text: &str) -> Vec<Diagnostic> {
    analyze(text).1
}

fn standalone<T>(text: &str, f: impl FnOnce(&mut Parser) -> Result<T, Diagnostic>) -> Result<T, Diagnostic> {
    let (mut parser, diags) = Parser::new(text);
    if let Some(d) = diags.into_iter().next() {
        return Err(d);
    }
    let out = f(&mut parser)?;
    parser.finish()?;
    Ok(out)
}

/// Parses a formula without implication. Precedence is `!` over `&` over
/// `|`; binary operators associate to the right.
pub fn parse_formula(text: &str) -> Result<Formula, Diagnostic> {
    standalone(text, |p| p.formula())
}

/// Parses `lhs => rhs` or `lhs ~> rhs`.
pub fn parse_constraint_body(text: &str) -> Result<(Formula, ConstraintKind, Formula), Diagnostic> {
    standalone(text, |p| p.constraint_body())
}

/// Parses `formula @ mode`.
pub fn parse_annotated(text: &str) -> Result<AnnotatedFormula, Diagnostic> {
    standalone(text, |p| p.annotated())
}

/// Parses a comma-separated list of annotated formulas; empty text is an
/// empty list.
pub fn parse_annotated_list(text: &str) -> Result<Vec<AnnotatedFormula>, Diagnostic> {
    standalone(text, |p| p.annotated_list())
}

/// Parses `A=actual,B=potential`. Atoms not listed are left out; callers
/// complete the assignment over their universe (defaulting to potential).
pub fn parse_mode_assignment(text: &str) -> Result<ModeAssignment, Diagnostic> {
    standalone(text, |p| p.mode_assignment())
}
