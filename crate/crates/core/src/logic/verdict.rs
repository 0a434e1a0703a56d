use std::fmt;

use super::eval::{BoolAssignment, ModeAssignment};
use super::formula::AnnotatedFormula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntailmentStatus {
    Entailed,
    NotEntailed,
    InadmissiblePremises,
}

impl EntailmentStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            EntailmentStatus::Entailed => "Entailed",
            EntailmentStatus::NotEntailed => "NotEntailed",
            EntailmentStatus::InadmissiblePremises => "InadmissiblePremises",
        }
    }
}

impl fmt::Display for EntailmentStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The five rules of the forward-chaining engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// `X@actual, Y@actual ⊢ (X & Y)@actual`
    AndI,
    /// `(X & Y)@actual ⊢ X@actual` and `Y@actual`
    AndE,
    /// `X@actual ⊢ (X | Y)@actual`; `X@potential ⊢ (X | Y)@potential`
    OrI,
    /// `(X | Y)@actual, X@absent ⊢ Y@actual`
    DS,
    /// `(!X)@actual ⊣⊢ X@absent`
    NegE,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::AndI => "AndI",
            Rule::AndE => "AndE",
            Rule::OrI => "OrI",
            Rule::DS => "DS",
            Rule::NegE => "NegE",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub rule: Rule,
    pub inputs: Vec<AnnotatedFormula>,
    pub output: AnnotatedFormula,
}

impl fmt::Display for DerivationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ins: Vec<String> = self.inputs.iter().map(|i| i.to_string()).collect();
        write!(f, "{}: {} ⊢ {}", self.rule, ins.join(", "), self.output)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Countermodel {
    Modes(ModeAssignment),
    Bools(BoolAssignment),
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Countermodel::Modes(m) => write!(f, "{m}"),
            Countermodel::Bools(b) => {
                let parts: Vec<String> = b.iter().map(|(k, v)| format!("{k}={v}")).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

/// An atom forced to be both an actual and an absent event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub atom: String,
    pub actual_from: AnnotatedFormula,
    pub absent_from: AnnotatedFormula,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "`{}` is actual by {} and absent by {}",
            self.atom, self.actual_from, self.absent_from
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntailmentVerdict {
    pub status: EntailmentStatus,
    /// Proof of the goal when entailed by the rule engine; the saturated
    /// closure when no proof and no countermodel exist.
    pub derivation: Vec<DerivationStep>,
    pub countermodels: Vec<Countermodel>,
    pub conflicts: Vec<Conflict>,
    /// Assignments examined by an exhaustive search (0 if none ran).
    pub assignments_checked: u64,
}

impl EntailmentVerdict {
    pub(crate) fn new(status: EntailmentStatus) -> Self {
        EntailmentVerdict {
            status,
            derivation: Vec::new(),
            countermodels: Vec::new(),
            conflicts: Vec::new(),
            assignments_checked: 0,
        }
    }

    pub fn is_entailed(&self) -> bool {
        self.status == EntailmentStatus::Entailed
    }
}
