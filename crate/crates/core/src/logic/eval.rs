use std::collections::BTreeMap;
use std::fmt;

use super::formula::Formula;
use super::LogicError;
use crate::kernel::Mode;

/// Negation on modes.
///
/// Negating an actual event gives its subsisting region (`Potential`);
/// negating a potential region gives its absent event. Closing the cycle,
/// `Absent` negates to `Actual`, which is what makes disjunctive syllogism
/// valid under [`eval_tm`]. Double negation is therefore not the identity.
pub fn neg(mode: Mode) -> Mode {
    match mode {
        Mode::Actual => Mode::Potential,
        Mode::Potential => Mode::Absent,
        Mode::Absent => Mode::Actual,
        Mode::Hole => Mode::Hole,
    }
}

/// The unique `m` with `neg(m) == mode`.
pub fn neg_preimage(mode: Mode) -> Mode {
    match mode {
        Mode::Potential => Mode::Actual,
        Mode::Absent => Mode::Potential,
        Mode::Actual => Mode::Absent,
        Mode::Hole => Mode::Hole,
    }
}

/// Disjunction: the maximum under `Absent < Potential < Actual`. A hole
/// absorbs the result unless the other side is actual.
pub fn or_mode(a: Mode, b: Mode) -> Mode {
    match (a.rank(), b.rank()) {
        _ if a == Mode::Actual || b == Mode::Actual => Mode::Actual,
        (Some(x), Some(y)) => {
            if x >= y {
                a
            } else {
                b
            }
        }
        _ => Mode::Hole,
    }
}

/// Conjunction: the minimum under `Absent < Potential < Actual`. A hole
/// always absorbs.
pub fn and_mode(a: Mode, b: Mode) -> Mode {
    match (a.rank(), b.rank()) {
        (Some(x), Some(y)) => {
            if x <= y {
                a
            } else {
                b
            }
        }
        _ => Mode::Hole,
    }
}

/// An assignment of modes to atoms.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct ModeAssignment(pub BTreeMap<String, Mode>);

impl ModeAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every atom in `universe` set to `Potential`.
    pub fn all_potential<'a>(universe: impl IntoIterator<Item = &'a str>) -> Self {
        ModeAssignment(universe.into_iter().map(|a| (a.to_string(), Mode::Potential)).collect())
    }

    pub fn get(&self, atom: &str) -> Option<Mode> {
        self.0.get(atom).copied()
    }

    pub fn set(&mut self, atom: impl Into<String>, mode: Mode) {
        self.0.insert(atom.into(), mode);
    }

    /// Adds `Potential` for any atom of `universe` not yet assigned.
    pub fn complete_over<'a>(&mut self, universe: impl IntoIterator<Item = &'a str>) {
        for a in universe {
            self.0.entry(a.to_string()).or_insert(Mode::Potential);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Mode)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// All `4^n` assignments over `atoms`, first atom most significant, modes
    /// in [`Mode::ALL`] order.
    pub fn enumerate<'a>(atoms: &'a [&'a str]) -> impl Iterator<Item = ModeAssignment> + 'a {
        Self::enumerate_over(atoms, &Mode::ALL)
    }

    /// Like [`ModeAssignment::enumerate`] but over the given modes only.
    pub fn enumerate_over<'a>(atoms: &'a [&'a str], modes: &'a [Mode]) -> impl Iterator<Item = ModeAssignment> + 'a {
        let total = (modes.len() as u64).checked_pow(atoms.len() as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut code| {
            let mut slots = vec![modes[0]; atoms.len()];
            for slot in slots.iter_mut().rev() {
                *slot = modes[(code % modes.len() as u64) as usize];
                code /= modes.len() as u64;
            }
            ModeAssignment(atoms.iter().map(|a| a.to_string()).zip(slots).collect())
        })
    }
}

impl fmt::Display for ModeAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(a, m)| format!("{a}={m}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromIterator<(String, Mode)> for ModeAssignment {
    fn from_iter<T: IntoIterator<Item = (String, Mode)>>(iter: T) -> Self {
        ModeAssignment(iter.into_iter().collect())
    }
}

/// Four-mode evaluation.
pub fn eval_tm(formula: &Formula, sigma: &ModeAssignment) -> Result<Mode, LogicError> {
    Ok(match formula {
        Formula::Atom(a) => sigma.get(a).ok_or_else(|| LogicError::UnboundAtom(a.clone()))?,
        Formula::Not(f) => neg(eval_tm(f, sigma)?),
        Formula::And(a, b) => and_mode(eval_tm(a, sigma)?, eval_tm(b, sigma)?),
        Formula::Or(a, b) => or_mode(eval_tm(a, sigma)?, eval_tm(b, sigma)?),
    })
}

/// Boolean assignment for the classical reading.
pub type BoolAssignment = BTreeMap<String, bool>;

pub fn eval_classical(formula: &Formula, tau: &BoolAssignment) -> Result<bool, LogicError> {
    Ok(match formula {
        Formula::Atom(a) => *tau.get(a).ok_or_else(|| LogicError::UnboundAtom(a.clone()))?,
        Formula::Not(f) => !eval_classical(f, tau)?,
        Formula::And(a, b) => eval_classical(a, tau)? && eval_classical(b, tau)?,
        Formula::Or(a, b) => eval_classical(a, tau)? || eval_classical(b, tau)?,
    })
}

/// Checks that, for a negation-free formula and an assignment over
/// `{Actual, Potential}`, four-mode evaluation projected by
/// `Actual ↦ true, Potential ↦ false` agrees with classical evaluation.
pub fn collapse_check(formula: &Formula, sigma: &ModeAssignment) -> Result<bool, LogicError> {
    if !formula.is_negation_free() {
        return Err(LogicError::NegationInCollapse);
    }
    let mut tau = BoolAssignment::new();
    for (atom, mode) in sigma.iter() {
        let b = match mode {
            Mode::Actual => true,
            Mode::Potential => false,
            other => {
                return Err(LogicError::CollapseMode {
                    atom: atom.to_string(),
                    mode: other,
                })
            }
        };
        tau.insert(atom.to_string(), b);
    }
    let four = eval_tm(formula, sigma)?;
    Ok((four == Mode::Actual) == eval_classical(formula, &tau)?)
}
