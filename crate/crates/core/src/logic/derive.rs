//! Forward-chaining derivation over annotated formulas.
//!
//! Facts are formulas tagged with the mode they are claimed to have. The
//! engine closes a premise set under five rules, restricted to the
//! subformulas of the premises and the goal so that saturation terminates.
//! Disjunction introduction fires from an actual disjunct, or yields a
//! potential disjunction from a potential disjunct whose partner is potential
//! or absent: an absent `A` never yields an actual `A | B`.
//! A premise set that forces some atom to be both an actual and an absent
//! event licenses nothing at all.

use std::collections::{BTreeMap, BTreeSet};

use super::eval::{eval_tm, neg_preimage, ModeAssignment};
use super::formula::{AnnotatedFormula, AnnotationMode, Formula};
use super::verdict::{Conflict, Countermodel, DerivationStep, EntailmentStatus, EntailmentVerdict, Rule};
use super::LogicError;

/// Upper bound on atoms for the countermodel search (`4^n` assignments).
pub const MAX_SEARCH_ATOMS: usize = 10;

/// Outcome of [`admissible_premises`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Admissibility {
    pub conflicts: Vec<Conflict>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.conflicts.is_empty()
    }
}

/// Atom-level modes a single annotated formula forces.
///
/// `!X@m` forces whatever `X@neg⁻¹(m)` forces; an actual conjunction forces
/// both conjuncts actual; an absent disjunction forces both disjuncts absent.
fn forced_modes(formula: &Formula, mode: AnnotationMode, out: &mut Vec<(String, AnnotationMode)>) {
    match (formula, mode) {
        (Formula::Atom(a), m) => out.push((a.clone(), m)),
        (Formula::Not(x), m) => {
            if let Some(pre) = AnnotationMode::from_mode(neg_preimage(m.as_mode())) {
                forced_modes(x, pre, out);
            }
        }
        (Formula::And(x, y), AnnotationMode::Actual) | (Formula::Or(x, y), AnnotationMode::Absent) => {
            forced_modes(x, mode, out);
            forced_modes(y, mode, out);
        }
        _ => {}
    }
}

/// Whether the premises can hold together at the event level: no atom may
/// be forced to be an actual and an absent event at once. A potential atom
/// alongside its absent event is fine.
pub fn admissible_premises(premises: &[AnnotatedFormula]) -> Admissibility {
    let mut actual: BTreeMap<String, &AnnotatedFormula> = BTreeMap::new();
    let mut absent: BTreeMap<String, &AnnotatedFormula> = BTreeMap::new();
    for p in premises {
        let mut forced = Vec::new();
        forced_modes(&p.formula, p.mode, &mut forced);
        for (atom, mode) in forced {
            match mode {
                AnnotationMode::Actual => {
                    actual.entry(atom).or_insert(p);
                }
                AnnotationMode::Absent => {
                    absent.entry(atom).or_insert(p);
                }
                AnnotationMode::Potential => {}
            }
        }
    }
    let conflicts = actual
        .iter()
        .filter_map(|(atom, from)| {
            absent.get(atom).map(|other| Conflict {
                atom: atom.clone(),
                actual_from: (*from).clone(),
                absent_from: (*other).clone(),
            })
        })
        .collect();
    Admissibility { conflicts }
}

/// The closure of a premise set under the five rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    /// Each fact with the index of the step that produced it (`None` for premises).
    pub facts: BTreeMap<AnnotatedFormula, Option<usize>>,
    pub steps: Vec<DerivationStep>,
}

impl Saturation {
    pub fn contains(&self, fact: &AnnotatedFormula) -> bool {
        self.facts.contains_key(fact)
    }

    /// Facts derived (not given) with the given mode.
    pub fn derived(&self, mode: AnnotationMode) -> impl Iterator<Item = &AnnotatedFormula> {
        self.facts
            .iter()
            .filter(move |(f, origin)| origin.is_some() && f.mode == mode)
            .map(|(f, _)| f)
    }

    /// Steps needed to reach `fact`, in derivation order.
    pub fn proof_of(&self, fact: &AnnotatedFormula) -> Vec<DerivationStep> {
        let mut needed = BTreeSet::new();
        let mut stack = vec![fact];
        while let Some(f) = stack.pop() {
            if let Some(Some(idx)) = self.facts.get(f) {
                if needed.insert(*idx) {
                    stack.extend(self.steps[*idx].inputs.iter());
                }
            }
        }
        needed.into_iter().map(|i| self.steps[i].clone()).collect()
    }

    fn facts_as_premises(&self) -> Vec<AnnotatedFormula> {
        self.facts.keys().cloned().collect()
    }
}

/// Closes `premises` under the rules. `extra` widens the set of formulas
/// the rules may build (typically the goal).
pub fn saturate(premises: &[AnnotatedFormula], extra: &[&Formula]) -> Saturation {
    let mut universe: BTreeSet<Formula> = BTreeSet::new();
    for f in premises.iter().map(|p| &p.formula).chain(extra.iter().copied()) {
        universe.extend(f.subformulas().into_iter().cloned());
    }

    let mut sat = Saturation {
        facts: premises.iter().map(|p| (p.clone(), None)).collect(),
        steps: Vec::new(),
    };

    loop {
        let mut fresh: Vec<DerivationStep> = Vec::new();
        let has = |f: &Formula, m: AnnotationMode| sat.facts.contains_key(&AnnotatedFormula::new(f.clone(), m));

        for f in &universe {
            match f {
                Formula::And(x, y) if has(x, AnnotationMode::Actual) && has(y, AnnotationMode::Actual) => {
                    fresh.push(DerivationStep {
                        rule: Rule::AndI,
                        inputs: vec![AnnotatedFormula::actual((**x).clone()), AnnotatedFormula::actual((**y).clone())],
                        output: AnnotatedFormula::actual(f.clone()),
                    });
                }
                Formula::Or(x, y) => {
                    if let Some(side) = [x, y].into_iter().find(|s| has(s, AnnotationMode::Actual)) {
                        fresh.push(DerivationStep {
                            rule: Rule::OrI,
                            inputs: vec![AnnotatedFormula::actual((**side).clone())],
                            output: AnnotatedFormula::actual(f.clone()),
                        });
                    }
                    // A potential disjunct gives a potential disjunction only
                    // once the other side is known not to outrank it.
                    for (p, other) in [(x, y), (y, x)] {
                        if !has(p, AnnotationMode::Potential) {
                            continue;
                        }
                        let bound = [AnnotationMode::Potential, AnnotationMode::Absent]
                            .into_iter()
                            .find(|m| has(other, *m));
                        if let Some(m) = bound {
                            fresh.push(DerivationStep {
                                rule: Rule::OrI,
                                inputs: vec![
                                    AnnotatedFormula::potential((**p).clone()),
                                    AnnotatedFormula::new((**other).clone(), m),
                                ],
                                output: AnnotatedFormula::potential(f.clone()),
                            });
                            break;
                        }
                    }
                }
                Formula::Not(x) if has(x, AnnotationMode::Absent) => {
                    fresh.push(DerivationStep {
                        rule: Rule::NegE,
                        inputs: vec![AnnotatedFormula::absent((**x).clone())],
                        output: AnnotatedFormula::actual(f.clone()),
                    });
                }
                _ => {}
            }
        }

        for fact in sat.facts.keys() {
            if fact.mode != AnnotationMode::Actual {
                continue;
            }
            match &fact.formula {
                Formula::And(x, y) => {
                    for side in [x, y] {
                        fresh.push(DerivationStep {
                            rule: Rule::AndE,
                            inputs: vec![fact.clone()],
                            output: AnnotatedFormula::actual((**side).clone()),
                        });
                    }
                }
                Formula::Or(x, y) => {
                    for (gone, kept) in [(x, y), (y, x)] {
                        if has(gone, AnnotationMode::Absent) {
                            fresh.push(DerivationStep {
                                rule: Rule::DS,
                                inputs: vec![fact.clone(), AnnotatedFormula::absent((**gone).clone())],
                                output: AnnotatedFormula::actual((**kept).clone()),
                            });
                        }
                    }
                }
                Formula::Not(x) => {
                    fresh.push(DerivationStep {
                        rule: Rule::NegE,
                        inputs: vec![fact.clone()],
                        output: AnnotatedFormula::absent((**x).clone()),
                    });
                }
                Formula::Atom(_) => {}
            }
        }

        let mut changed = false;
        for step in fresh {
            if !sat.facts.contains_key(&step.output) {
                sat.facts.insert(step.output.clone(), Some(sat.steps.len()));
                sat.steps.push(step);
                changed = true;
            }
        }
        if !changed {
            return sat;
        }
    }
}

/// Derives `goal` from `premises` with the atom universe taken from the
/// formulas themselves.
pub fn derive_tm(premises: &[AnnotatedFormula], goal: &AnnotatedFormula) -> Result<EntailmentVerdict, LogicError> {
    let mut universe: BTreeSet<&str> = goal.formula.atoms();
    for p in premises {
        universe.extend(p.formula.atoms());
    }
    let universe: Vec<&str> = universe.into_iter().collect();
    derive_tm_in(&universe, premises, goal)
}

/// Derives `goal` from `premises` over a declared atom universe.
pub fn derive_tm_in(
    universe: &[&str],
    premises: &[AnnotatedFormula],
    goal: &AnnotatedFormula,
) -> Result<EntailmentVerdict, LogicError> {
    if universe.is_empty() {
        return Err(LogicError::EmptyUniverse);
    }
    let declared: BTreeSet<&str> = universe.iter().copied().collect();
    for f in premises.iter().map(|p| &p.formula).chain([&goal.formula]) {
        if let Some(a) = f.atoms().into_iter().find(|a| !declared.contains(a)) {
            return Err(LogicError::UnboundAtom(a.to_string()));
        }
    }

    let adm = admissible_premises(premises);
    if !adm.is_admissible() {
        let mut v = EntailmentVerdict::new(EntailmentStatus::InadmissiblePremises);
        v.conflicts = adm.conflicts;
        return Ok(v);
    }

    let sat = saturate(premises, &[&goal.formula]);
    let closure = admissible_premises(&sat.facts_as_premises());
    if !closure.is_admissible() {
        let mut v = EntailmentVerdict::new(EntailmentStatus::InadmissiblePremises);
        v.conflicts = closure.conflicts;
        v.derivation = sat.steps;
        return Ok(v);
    }

    if sat.contains(goal) {
        let mut v = EntailmentVerdict::new(EntailmentStatus::Entailed);
        v.derivation = sat.proof_of(goal);
        return Ok(v);
    }

    let mut v = EntailmentVerdict::new(EntailmentStatus::NotEntailed);
    let (countermodel, checked) = search_countermodel(&declared.into_iter().collect::<Vec<_>>(), premises, goal)?;
    v.assignments_checked = checked;
    match countermodel {
        Some(cm) => v.countermodels.push(Countermodel::Modes(cm)),
        None => v.derivation = sat.steps,
    }
    Ok(v)
}

/// Whether an assignment gives every annotated formula exactly its claimed mode.
pub fn satisfies(sigma: &ModeAssignment, facts: &[AnnotatedFormula]) -> Result<bool, LogicError> {
    for f in facts {
        if eval_tm(&f.formula, sigma)? != f.mode.as_mode() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn search_countermodel(
    atoms: &[&str],
    premises: &[AnnotatedFormula],
    goal: &AnnotatedFormula,
) -> Result<(Option<ModeAssignment>, u64), LogicError> {
    if atoms.len() > MAX_SEARCH_ATOMS {
        return Err(LogicError::TooManyAtoms {
            count: atoms.len(),
            max: MAX_SEARCH_ATOMS,
        });
    }
    let mut checked = 0;
    for sigma in ModeAssignment::enumerate(atoms) {
        checked += 1;
        if satisfies(&sigma, premises)? && !satisfies(&sigma, std::slice::from_ref(goal))? {
            return Ok((Some(sigma), checked));
        }
    }
    Ok((None, checked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Mode;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn waiter_inference_uses_two_disjunctive_syllogisms() {
        let fvm = Formula::or(a("F"), Formula::or(a("V"), a("M")));
        let premises = vec![
            AnnotatedFormula::actual(fvm),
            AnnotatedFormula::absent(a("M")),
            AnnotatedFormula::absent(a("F")),
        ];
        let v = derive_tm(&premises, &AnnotatedFormula::actual(a("V"))).unwrap();
        assert_eq!(v.status, EntailmentStatus::Entailed);
        let rules: Vec<Rule> = v.derivation.iter().map(|s| s.rule).collect();
        assert_eq!(rules, vec![Rule::DS, Rule::DS]);
        assert_eq!(v.derivation[0].output, AnnotatedFormula::actual(Formula::or(a("V"), a("M"))));
    }

    #[test]
    fn contradictory_events_license_nothing() {
        let premises = vec![AnnotatedFormula::actual(a("A")), AnnotatedFormula::absent(a("A"))];
        let v = derive_tm(&premises, &AnnotatedFormula::actual(a("B"))).unwrap();
        assert_eq!(v.status, EntailmentStatus::InadmissiblePremises);
        assert_eq!(v.conflicts.len(), 1);
        assert_eq!(v.conflicts[0].atom, "A");
        assert!(v.derivation.is_empty());
    }

    #[test]
    fn absent_disjunct_does_not_introduce_disjunction() {
        let v = derive_tm(
            &[AnnotatedFormula::absent(a("A"))],
            &AnnotatedFormula::actual(Formula::or(a("A"), a("B"))),
        )
        .unwrap();
        assert_eq!(v.status, EntailmentStatus::NotEntailed);
        let expected: ModeAssignment = [("A".to_string(), Mode::Absent), ("B".to_string(), Mode::Potential)]
            .into_iter()
            .collect();
        assert_eq!(v.countermodels, vec![Countermodel::Modes(expected)]);
    }

    #[test]
    fn potential_disjunct_introduces_only_potential() {
        let ab = Formula::or(a("A"), a("B"));
        // B could be actual or a hole, either of which decides A | B.
        let sat = saturate(&[AnnotatedFormula::potential(a("A"))], &[&ab]);
        assert!(!sat.contains(&AnnotatedFormula::potential(ab.clone())));
        assert!(!sat.contains(&AnnotatedFormula::actual(ab.clone())));

        let sat = saturate(
            &[AnnotatedFormula::potential(a("A")), AnnotatedFormula::absent(a("B"))],
            &[&ab],
        );
        assert!(sat.contains(&AnnotatedFormula::potential(ab.clone())));
        assert!(!sat.contains(&AnnotatedFormula::actual(ab)));
    }

    #[test]
    fn conjunction_rules_and_negation_elimination() {
        let premises = vec![
            AnnotatedFormula::actual(Formula::and(a("A"), Formula::not(a("B")))),
            AnnotatedFormula::actual(a("C")),
        ];
        let goal = AnnotatedFormula::actual(Formula::and(a("C"), a("A")));
        let v = derive_tm(&premises, &goal).unwrap();
        assert!(v.is_entailed());
        let sat = saturate(&premises, &[]);
        assert!(sat.contains(&AnnotatedFormula::absent(a("B"))));
    }

    #[test]
    fn admissibility_examples() {
        assert!(!admissible_premises(&[AnnotatedFormula::actual(a("A")), AnnotatedFormula::absent(a("A"))]).is_admissible());
        assert!(admissible_premises(&[
            AnnotatedFormula::potential(a("A")),
            AnnotatedFormula::absent(Formula::not(a("A")))
        ])
        .is_admissible());
        assert!(admissible_premises(&[AnnotatedFormula::potential(a("A")), AnnotatedFormula::absent(a("A"))]).is_admissible());
        assert!(admissible_premises(&[]).is_admissible());
        // a negated actual is an absent event
        assert!(!admissible_premises(&[
            AnnotatedFormula::actual(Formula::not(a("A"))),
            AnnotatedFormula::actual(a("A"))
        ])
        .is_admissible());
        assert!(!admissible_premises(&[
            AnnotatedFormula::actual(Formula::and(a("A"), a("B"))),
            AnnotatedFormula::absent(Formula::or(a("C"), a("B")))
        ])
        .is_admissible());
    }

    #[test]
    fn derived_conflicts_are_inadmissible() {
        let premises = vec![
            AnnotatedFormula::actual(Formula::or(a("A"), a("B"))),
            AnnotatedFormula::absent(a("A")),
            AnnotatedFormula::absent(a("B")),
        ];
        let v = derive_tm(&premises, &AnnotatedFormula::actual(a("C"))).unwrap();
        assert_eq!(v.status, EntailmentStatus::InadmissiblePremises);
    }

    #[test]
    fn universe_errors() {
        let goal = AnnotatedFormula::actual(a("A"));
        assert_eq!(derive_tm_in(&[], &[], &goal), Err(LogicError::EmptyUniverse));
        assert_eq!(derive_tm_in(&["B"], &[], &goal), Err(LogicError::UnboundAtom("A".into())));
        let many: Vec<String> = (0..11).map(|i| format!("X{i}")).collect();
        let refs: Vec<&str> = many.iter().map(|s| s.as_str()).collect();
        assert!(matches!(derive_tm_in(&refs, &[], &goal_of(&refs)), Err(LogicError::TooManyAtoms { .. })));
    }

    fn goal_of(atoms: &[&str]) -> AnnotatedFormula {
        AnnotatedFormula::actual(a(atoms[0]))
    }
}
