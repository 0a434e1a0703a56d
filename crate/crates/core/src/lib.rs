//! Thinging machine (TM) models: thimacs and their generic actions, regions
//! and events, a four-mode propositional logic over regions, event
//! chronologies with constraint checking, a `.tm` text format, and DOT
//! export.
//!
//! ```
//! use tmlogic::{derive_tm, parse_annotated, parse_annotated_list, EntailmentStatus};
//!
//! let premises = parse_annotated_list("(F|V|M)@actual, M@absent, F@absent").unwrap();
//! let goal = parse_annotated("V@actual").unwrap();
//! let verdict = derive_tm(&premises, &goal).unwrap();
//! assert_eq!(verdict.status, EntailmentStatus::Entailed);
//! ```

pub mod chrono;
pub mod diag;
pub mod export;
pub mod kernel;
pub mod logic;
pub mod text;

pub use chrono::{
    check_constraints, enumerate_traces, mark_absent, state_sequence, verify_consequence, ChoiceGroup,
    ChronoError, Chronology, ConsequenceVerdict, Constraint, ConstraintKind, ConstraintReport, EdgeKind,
    Occurrence, Trace, Violation, DEFAULT_BOUND,
};
pub use diag::{DiagCode, Diagnostic, Pos, Severity};
pub use export::{dot_chronology, dot_static};
pub use kernel::{
    deactualize, realize, validate_static, ActionId, ActionKind, Event, EventMode, Mode, Region, StaticModel,
    ThimacId, TmModel,
};
pub use logic::{
    admissible_premises, derive_tm, entails_classical, eval_classical, eval_tm, neg, AnnotatedFormula,
    AnnotationMode, EntailmentStatus, EntailmentVerdict, Formula, LogicError, ModeAssignment, Rule,
};
pub use text::{
    check_model, parse_annotated, parse_annotated_list, parse_constraint_body, parse_formula, parse_mode_assignment,
    parse_model, serialize_model, Document, ParsedModel,
};
