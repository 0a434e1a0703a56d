//! Four-mode propositional semantics: evaluation, admissibility, the
//! rule-based derivation engine, and the classical truth-table oracle.

mod classical;
mod derive;
mod eval;
mod formula;
mod verdict;

use thiserror::Error;

use crate::kernel::Mode;

pub use classical::{classical_reading, entails_classical, MAX_TRUTH_TABLE_ATOMS};
pub use derive::{
    admissible_premises, derive_tm, derive_tm_in, satisfies, saturate, Admissibility, Saturation, MAX_SEARCH_ATOMS,
};
pub use eval::{and_mode, collapse_check, eval_classical, eval_tm, neg, neg_preimage, or_mode, BoolAssignment, ModeAssignment};
pub use formula::{AnnotatedFormula, AnnotationMode, Formula};
pub use verdict::{Conflict, Countermodel, DerivationStep, EntailmentStatus, EntailmentVerdict, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("atom `{0}` has no value")]
    UnboundAtom(String),
    #[error("classical collapse is undefined for formulas with negation")]
    NegationInCollapse,
    #[error("classical collapse needs actual or potential atoms, but `{atom}` is {mode}")]
    CollapseMode { atom: String, mode: Mode },
    #[error("the atom universe is empty")]
    EmptyUniverse,
    #[error("{count} atoms exceed the search bound of {max}")]
    TooManyAtoms { count: usize, max: usize },
}
