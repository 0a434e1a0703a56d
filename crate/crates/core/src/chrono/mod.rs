//! Event chronologies: bounded trace enumeration, state folding, constraint
//! checking and absence injection.

mod check;
mod chronology;
mod trace;

use thiserror::Error;

use crate::logic::LogicError;

pub use check::{
    check_constraints, check_traces, state_sequence, ConsequenceVerdict, ConstraintReport, Violation,
    verify_consequence,
};
pub use chronology::{ChoiceGroup, ChronoEdge, Chronology, Constraint, ConstraintKind, EdgeKind};
pub use trace::{enumerate_traces, mark_absent, mark_absent_at, replay, Occurrence, Trace};

/// Default trace bound for checks.
pub const DEFAULT_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChronoError {
    #[error("unknown start event `{0}`")]
    UnknownStart(String),
    #[error("the trace bound must be at least 1")]
    ZeroBound,
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("event `{0}` does not occur in the trace")]
    NotInTrace(String),
    #[error("no edge from `{from}` to `{to}` in the chronology")]
    NoEdge { from: String, to: String },
    #[error("event `{event}` declares undeclared atom `{atom}`")]
    UndeclaredAtom { event: String, atom: String },
    #[error(transparent)]
    Logic(#[from] LogicError),
}
