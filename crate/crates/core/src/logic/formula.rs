use std::collections::BTreeSet;
use std::fmt;

use crate::kernel::Mode;

/// Propositional formula over region-bound atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Right-nested disjunction of the given formulas.
    pub fn or_all(mut parts: Vec<Formula>) -> Option<Formula> {
        let mut acc = parts.pop()?;
        while let Some(f) = parts.pop() {
            acc = Formula::or(f, acc);
        }
        Some(acc)
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a);
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn is_negation_free(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(_) => false,
            Formula::And(a, b) | Formula::Or(a, b) => a.is_negation_free() && b.is_negation_free(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Every subformula, including `self`.
    pub fn subformulas(&self) -> BTreeSet<&Formula> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if out.insert(f) {
                match f {
                    Formula::Atom(_) => {}
                    Formula::Not(g) => stack.push(g),
                    Formula::And(a, b) | Formula::Or(a, b) => {
                        stack.push(a);
                        stack.push(b);
                    }
                }
            }
        }
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(_) | Formula::Atom(_) => 3,
        }
    }
}

// Printing uses the surface syntax with the fewest parentheses that reparse
// to the same tree: `!` binds tightest, then `&`, then `|`, both binary
// operators associating to the right.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(f: &mut fmt::Formatter<'_>, inner: &Formula, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({inner})")
            } else {
                write!(f, "{inner}")
            }
        }
        match self {
            Formula::Atom(a) => f.write_str(a),
            Formula::Not(g) => {
                f.write_str("!")?;
                wrap(f, g, g.precedence() < 3)
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let p = self.precedence();
                let op = if p == 1 { " | " } else { " & " };
                wrap(f, a, a.precedence() <= p)?;
                f.write_str(op)?;
                wrap(f, b, b.precedence() < p)
            }
        }
    }
}

/// A formula paired with the realization status claimed for it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnnotatedFormula {
    pub formula: Formula,
    pub mode: AnnotationMode,
}

/// Modes a formula may be annotated with. `Hole` is never claimed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnnotationMode {
    Actual,
    Potential,
    Absent,
}

impl AnnotationMode {
    pub fn as_mode(self) -> Mode {
        match self {
            AnnotationMode::Actual => Mode::Actual,
            AnnotationMode::Potential => Mode::Potential,
            AnnotationMode::Absent => Mode::Absent,
        }
    }

    pub fn from_mode(mode: Mode) -> Option<AnnotationMode> {
        match mode {
            Mode::Actual => Some(AnnotationMode::Actual),
            Mode::Potential => Some(AnnotationMode::Potential),
            Mode::Absent => Some(AnnotationMode::Absent),
            Mode::Hole => None,
        }
    }
}

impl AnnotatedFormula {
    pub fn new(formula: Formula, mode: AnnotationMode) -> Self {
        AnnotatedFormula { formula, mode }
    }

    pub fn actual(formula: Formula) -> Self {
        Self::new(formula, AnnotationMode::Actual)
    }

    pub fn absent(formula: Formula) -> Self {
        Self::new(formula, AnnotationMode::Absent)
    }

    pub fn potential(formula: Formula) -> Self {
        Self::new(formula, AnnotationMode::Potential)
    }
}

impl fmt::Display for AnnotatedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.formula {
            Formula::Atom(_) | Formula::Not(_) => write!(f, "{}", self.formula)?,
            _ => write!(f, "({})", self.formula)?,
        }
        write!(f, "@{}", self.mode.as_mode())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn display_uses_minimal_parentheses() {
        let f = Formula::or(a("F"), Formula::or(a("V"), a("M")));
        assert_eq!(f.to_string(), "F | V | M");
        let g = Formula::or(Formula::or(a("F"), a("V")), a("M"));
        assert_eq!(g.to_string(), "(F | V) | M");
        let h = Formula::not(Formula::or(a("R"), a("L")));
        assert_eq!(h.to_string(), "!(R | L)");
        let k = Formula::and(Formula::or(a("A"), a("B")), Formula::not(Formula::not(a("C"))));
        assert_eq!(k.to_string(), "(A | B) & !!C");
        let m = Formula::or(Formula::and(a("A"), a("B")), a("C"));
        assert_eq!(m.to_string(), "A & B | C");
    }

    #[test]
    fn or_all_nests_to_the_right() {
        let f = Formula::or_all(vec![a("F"), a("V"), a("M")]).unwrap();
        assert_eq!(f, Formula::or(a("F"), Formula::or(a("V"), a("M"))));
        assert!(Formula::or_all(vec![]).is_none());
    }

    #[test]
    fn subformulas_are_collected_once() {
        let f = Formula::and(a("A"), Formula::or(a("A"), a("B")));
        let subs = f.subformulas();
        assert_eq!(subs.len(), 4);
        assert_eq!(f.atoms().into_iter().collect::<Vec<_>>(), vec!["A", "B"]);
    }
}
