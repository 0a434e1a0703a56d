use super::chronology::{Chronology, Constraint, ConstraintKind};
use super::trace::{enumerate_traces, Trace};
use super::ChronoError;
use crate::kernel::{EventMode, Mode, TmModel};
use crate::logic::{eval_tm, ModeAssignment};

/// States along a trace. State 0 has every atom potential; state `k` is
/// state `k-1` overridden by the declarations of the `k`-th occurrence. An
/// absent occurrence makes all of its atoms absent.
pub fn state_sequence(trace: &Trace, model: &TmModel) -> Result<Vec<ModeAssignment>, ChronoError> {
    let mut state = ModeAssignment::all_potential(model.atoms.keys().map(|a| a.as_str()));
    let mut out = Vec::with_capacity(trace.len() + 1);
    out.push(state.clone());
    for occ in &trace.steps {
        let event = model
            .events
            .get(&occ.event)
            .ok_or_else(|| ChronoError::UnknownEvent(occ.event.clone()))?;
        for (atom, declared) in &event.constituents {
            if !model.atoms.contains_key(atom) {
                return Err(ChronoError::UndeclaredAtom {
                    event: event.id.clone(),
                    atom: atom.clone(),
                });
            }
            let mode = match occ.mode {
                EventMode::Absent => Mode::Absent,
                EventMode::Actual => (*declared).into(),
            };
            state.set(atom.clone(), mode);
        }
        out.push(state.clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub constraint: String,
    pub trace_index: usize,
    /// State index: 0 is the initial state, `k` follows the `k`-th event.
    pub position: usize,
    /// The event whose occurrence produced the violating state.
    pub event: Option<String>,
    pub state: ModeAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstraintReport {
    pub traces: Vec<Trace>,
    pub violations: Vec<Violation>,
    /// Triggering obligations still open where a trace was cut by the bound.
    pub undecided: usize,
}

impl ConstraintReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the constraints over every maximal trace of at most `bound`
/// events from the chronology's start.
pub fn check_constraints(
    model: &TmModel,
    chronology: &Chronology,
    constraints: &[Constraint],
    bound: usize,
) -> Result<ConstraintReport, ChronoError> {
    let traces = match chronology.start() {
        Some(start) => enumerate_traces(chronology, start, bound, false)?,
        None => Vec::new(),
    };
    check_traces(model, chronology, constraints, traces, bound)
}

/// Checks the constraints over the given traces.
pub fn check_traces(
    model: &TmModel,
    chronology: &Chronology,
    constraints: &[Constraint],
    traces: Vec<Trace>,
    bound: usize,
) -> Result<ConstraintReport, ChronoError> {
    let mut report = ConstraintReport::default();
    for (ti, trace) in traces.iter().enumerate() {
        let states = state_sequence(trace, model)?;
        let cut_by_bound = trace.len() >= bound
            && trace
                .steps
                .last()
                .is_some_and(|o| !chronology.successors(&o.event).is_empty());
        for c in constraints {
            let lhs: Vec<bool> = states
                .iter()
                .map(|s| Ok(eval_tm(&c.lhs, s)? == Mode::Actual))
                .collect::<Result<_, ChronoError>>()?;
            let rhs: Vec<bool> = states
                .iter()
                .map(|s| Ok(eval_tm(&c.rhs, s)? == Mode::Actual))
                .collect::<Result<_, ChronoError>>()?;
            for k in 0..states.len() {
                if !lhs[k] {
                    continue;
                }
                let ok = match c.kind {
                    ConstraintKind::Simultaneous => rhs[k],
                    ConstraintKind::Triggering => rhs[k..].iter().any(|b| *b),
                };
                if ok {
                    continue;
                }
                if c.kind == ConstraintKind::Triggering && cut_by_bound {
                    report.undecided += 1;
                    continue;
                }
                report.violations.push(Violation {
                    constraint: c.name.clone(),
                    trace_index: ti,
                    position: k,
                    event: k.checked_sub(1).map(|i| trace.steps[i].event.clone()),
                    state: states[k].clone(),
                });
            }
        }
    }
    report.traces = traces;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsequenceVerdict {
    /// No violation on any trace up to the bound. Not a proof beyond it.
    ProvenToBound { bound: usize, traces_checked: usize },
    Counterexample { trace: Trace, violation: Violation },
}

/// Bounded check of a candidate consequence: reports the first
/// counterexample in trace order, if any.
pub fn verify_consequence(
    model: &TmModel,
    chronology: &Chronology,
    candidate: &Constraint,
    bound: usize,
) -> Result<ConsequenceVerdict, ChronoError> {
    let report = check_constraints(model, chronology, std::slice::from_ref(candidate), bound)?;
    Ok(match report.violations.into_iter().next() {
        None => ConsequenceVerdict::ProvenToBound {
            bound,
            traces_checked: report.traces.len(),
        },
        Some(v) => ConsequenceVerdict::Counterexample {
            trace: report.traces[v.trace_index].clone(),
            violation: v,
        },
    })
}
