//! Two-valued truth-table entailment, kept as the contrast oracle. Unlike the
//! rule engine it preserves explosion.

use std::collections::BTreeSet;

use super::eval::{eval_classical, BoolAssignment};
use super::formula::{AnnotatedFormula, AnnotationMode, Formula};
use super::verdict::{Countermodel, EntailmentStatus, EntailmentVerdict};
use super::LogicError;

pub const MAX_TRUTH_TABLE_ATOMS: usize = 20;

/// Classical reading of an annotation: actual is true; absent and potential
/// both read as "not true".
pub fn classical_reading(af: &AnnotatedFormula) -> Formula {
    match af.mode {
        AnnotationMode::Actual => af.formula.clone(),
        AnnotationMode::Absent | AnnotationMode::Potential => Formula::not(af.formula.clone()),
    }
}

pub fn entails_classical(premises: &[Formula], goal: &Formula) -> Result<EntailmentVerdict, LogicError> {
    let mut atoms: BTreeSet<&str> = goal.atoms();
    for p in premises {
        atoms.extend(p.atoms());
    }
    if atoms.len() > MAX_TRUTH_TABLE_ATOMS {
        return Err(LogicError::TooManyAtoms {
            count: atoms.len(),
            max: MAX_TRUTH_TABLE_ATOMS,
        });
    }
    let atoms: Vec<&str> = atoms.into_iter().collect();
    let rows = 1u64 << atoms.len();
    let mut checked = 0;
    for code in 0..rows {
        checked += 1;
        let tau: BoolAssignment = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.to_string(), code >> (atoms.len() - 1 - i) & 1 == 1))
            .collect();
        let mut holds = true;
        for p in premises {
            if !eval_classical(p, &tau)? {
                holds = false;
                break;
            }
        }
        if holds && !eval_classical(goal, &tau)? {
            let mut v = EntailmentVerdict::new(EntailmentStatus::NotEntailed);
            v.countermodels.push(Countermodel::Bools(tau));
            v.assignments_checked = checked;
            return Ok(v);
        }
    }
    let mut v = EntailmentVerdict::new(EntailmentStatus::Entailed);
    v.assignments_checked = checked;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn explosion_is_preserved() {
        let v = entails_classical(&[a("A"), Formula::not(a("A"))], &a("B")).unwrap();
        assert_eq!(v.status, EntailmentStatus::Entailed);
        assert_eq!(v.assignments_checked, 4);
    }

    #[test]
    fn disjunctive_syllogism() {
        let v = entails_classical(&[Formula::or(a("A"), a("B")), Formula::not(a("A"))], &a("B")).unwrap();
        assert!(v.is_entailed());
    }

    #[test]
    fn countermodel_for_unrelated_goal() {
        let v = entails_classical(&[a("A")], &a("B")).unwrap();
        assert_eq!(v.status, EntailmentStatus::NotEntailed);
        let expected: BoolAssignment = [("A".to_string(), true), ("B".to_string(), false)].into();
        assert_eq!(v.countermodels, vec![Countermodel::Bools(expected)]);
    }

    #[test]
    fn atom_bound() {
        let big = Formula::or_all((0..21).map(|i| a(&format!("P{i}"))).collect()).unwrap();
        assert!(matches!(
            entails_classical(&[big], &a("P0")),
            Err(LogicError::TooManyAtoms { count: 21, max: 20 })
        ));
    }

    #[test]
    fn readings() {
        assert_eq!(classical_reading(&AnnotatedFormula::absent(a("M"))), Formula::not(a("M")));
        assert_eq!(classical_reading(&AnnotatedFormula::actual(a("M"))), a("M"));
    }
}
