use std::fmt;

use super::chronology::Chronology;
use super::ChronoError;
use crate::kernel::EventMode;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub event: String,
    pub mode: EventMode,
}

/// One bounded walk through a chronology.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Trace {
    pub steps: Vec<Occurrence>,
}

impl Trace {
    /// A trace of actual occurrences.
    pub fn actual<S: AsRef<str>>(events: &[S]) -> Self {
        Trace {
            steps: events
                .iter()
                .map(|e| Occurrence {
                    event: e.as_ref().to_string(),
                    mode: EventMode::Actual,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn events(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|o| o.event.as_str())
    }

    pub fn position_of(&self, event: &str) -> Option<usize> {
        self.steps.iter().position(|o| o.event == event)
    }
}

/// Space separated; absent occurrences carry a leading `!`.
impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if o.mode == EventMode::Absent {
                f.write_str("!")?;
            }
            f.write_str(&o.event)?;
        }
        Ok(())
    }
}

/// All legal walks from `start` of at most `bound` events, sorted.
///
/// Without `complete_only` the walks are maximal: each either reaches
/// `bound` events or stops at an event with no successors. With
/// `complete_only`, a walk is kept when it is the shortest prefix at which
/// every choice group of the chronology holds exactly (or, if the chronology
/// has no groups, when it stops at an event with no successors); walks that
/// overshoot a group are cut.
pub fn enumerate_traces(
    chronology: &Chronology,
    start: &str,
    bound: usize,
    complete_only: bool,
) -> Result<Vec<Trace>, ChronoError> {
    if bound == 0 {
        return Err(ChronoError::ZeroBound);
    }
    if !chronology.nodes.contains(start) {
        return Err(ChronoError::UnknownStart(start.to_string()));
    }
    let walker = Walker {
        chronology,
        bound,
        complete_only,
    };
    let mut counts = vec![0usize; chronology.choices.len()];
    let was_exact = walker.exact(&counts);
    walker.bump(start, &mut counts, 1);
    let mut path = vec![start];
    let mut out = Vec::new();
    if !complete_only || walker.within(&counts) {
        walker.walk(&mut path, &mut counts, was_exact, &mut out);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

struct Walker<'a> {
    chronology: &'a Chronology,
    bound: usize,
    complete_only: bool,
}

impl<'a> Walker<'a> {
    fn exact(&self, counts: &[usize]) -> bool {
        self.chronology.choices.iter().zip(counts).all(|(g, c)| g.count == *c)
    }

    fn within(&self, counts: &[usize]) -> bool {
        self.chronology.choices.iter().zip(counts).all(|(g, c)| *c <= g.count)
    }

    fn bump(&self, event: &str, counts: &mut [usize], delta: isize) {
        for (g, c) in self.chronology.choices.iter().zip(counts.iter_mut()) {
            if g.events.contains(event) {
                *c = c.wrapping_add_signed(delta);
            }
        }
    }

    fn walk(&self, path: &mut Vec<&'a str>, counts: &mut Vec<usize>, was_exact: bool, out: &mut Vec<Trace>) {
        let last = *path.last().expect("walks start nonempty");
        let succs = self.chronology.successors(last);
        if self.complete_only {
            let has_groups = !self.chronology.choices.is_empty();
            let exact = self.exact(counts);
            if (has_groups && exact && !was_exact) || (!has_groups && succs.is_empty()) {
                out.push(Trace::actual(path));
                return;
            }
        } else if path.len() == self.bound || succs.is_empty() {
            out.push(Trace::actual(path));
            return;
        }
        if path.len() == self.bound {
            return;
        }
        let exact_now = self.exact(counts);
        for next in succs.keys() {
            self.bump(next, counts, 1);
            if !self.complete_only || self.within(counts) {
                path.push(next);
                self.walk(path, counts, exact_now, out);
                path.pop();
            }
            self.bump(next, counts, -1);
        }
    }
}

/// Checks that each consecutive pair of the trace is joined by an edge.
pub fn replay(chronology: &Chronology, trace: &Trace) -> Result<(), ChronoError> {
    if let Some(first) = trace.steps.first() {
        if !chronology.nodes.contains(&first.event) {
            return Err(ChronoError::UnknownEvent(first.event.clone()));
        }
    }
    for pair in trace.steps.windows(2) {
        if chronology.link(&pair[0].event, &pair[1].event).is_none() {
            return Err(ChronoError::NoEdge {
                from: pair[0].event.clone(),
                to: pair[1].event.clone(),
            });
        }
    }
    Ok(())
}

/// Flips the first occurrence of `event` to absent, together with the
/// following occurrences reached from it along edges that carry absence.
/// Propagation stops at a plain alternative and when the walk returns to
/// the chronology's start, which begins a fresh round.
pub fn mark_absent(chronology: &Chronology, trace: &Trace, event: &str) -> Result<Trace, ChronoError> {
    let at = trace
        .position_of(event)
        .ok_or_else(|| ChronoError::NotInTrace(event.to_string()))?;
    mark_absent_at(chronology, trace, at)
}

/// Like [`mark_absent`], starting from the occurrence at `index`.
pub fn mark_absent_at(chronology: &Chronology, trace: &Trace, index: usize) -> Result<Trace, ChronoError> {
    replay(chronology, trace)?;
    let mut out = trace.clone();
    let Some(first) = out.steps.get_mut(index) else {
        return Err(ChronoError::NotInTrace(format!("position {index}")));
    };
    first.mode = EventMode::Absent;
    let start = chronology.start();
    for j in index + 1..out.steps.len() {
        if Some(out.steps[j].event.as_str()) == start {
            break;
        }
        let kind = chronology
            .link(&out.steps[j - 1].event, &out.steps[j].event)
            .expect("replayed above");
        if !kind.carries_absence() {
            break;
        }
        out.steps[j].mode = EventMode::Absent;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chrono::ChoiceGroup;

    fn line() -> Chronology {
        let mut c = Chronology::new("line");
        c.sequence("A", "B");
        c.trigger("B", "C");
        c.alternative("C", &["D", "E"], false);
        c
    }

    fn names(traces: &[Trace]) -> Vec<String> {
        traces.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn bound_one_is_the_start_alone() {
        let got = enumerate_traces(&line(), "A", 1, false).unwrap();
        assert_eq!(names(&got), vec!["A"]);
    }

    #[test]
    fn maximal_walks_branch_at_alternatives() {
        let got = enumerate_traces(&line(), "A", 10, false).unwrap();
        assert_eq!(names(&got), vec!["A B C D", "A B C E"]);
        let cut = enumerate_traces(&line(), "A", 2, false).unwrap();
        assert_eq!(names(&cut), vec!["A B"]);
    }

    #[test]
    fn errors() {
        assert_eq!(enumerate_traces(&line(), "Z", 3, false), Err(ChronoError::UnknownStart("Z".into())));
        assert_eq!(enumerate_traces(&line(), "A", 0, false), Err(ChronoError::ZeroBound));
        let t = Trace::actual(&["A", "B"]);
        assert_eq!(mark_absent(&line(), &t, "C"), Err(ChronoError::NotInTrace("C".into())));
        let bad = Trace::actual(&["A", "C"]);
        assert!(matches!(mark_absent(&line(), &bad, "A"), Err(ChronoError::NoEdge { .. })));
    }

    #[test]
    fn complete_only_respects_groups() {
        let mut c = Chronology::new("loop");
        c.alternative("H", &["X", "Y"], false);
        c.sequence("X", "H");
        c.sequence("Y", "H");
        for e in ["X", "Y"] {
            c.add_choice(ChoiceGroup {
                count: 1,
                events: [e.to_string()].into(),
            });
        }
        let got = enumerate_traces(&c, "H", 20, true).unwrap();
        assert_eq!(names(&got), vec!["H X H Y", "H Y H X"]);
    }

    #[test]
    fn absence_propagates_until_a_plain_alternative() {
        let t = Trace::actual(&["A", "B", "C", "D"]);
        let marked = mark_absent(&line(), &t, "A").unwrap();
        assert_eq!(marked.to_string(), "!A !B !C D");
        let last = mark_absent(&line(), &t, "D").unwrap();
        assert_eq!(last.to_string(), "A B C !D");
        assert_eq!(marked.len(), t.len());
    }

    #[test]
    fn absence_stops_at_a_new_round() {
        let mut c = Chronology::new("loop");
        c.sequence("A", "B");
        c.trigger("B", "C");
        c.sequence("C", "A");
        let t = Trace::actual(&["A", "B", "C", "A", "B"]);
        let marked = mark_absent(&c, &t, "B").unwrap();
        assert_eq!(marked.to_string(), "A !B !C A B");
    }
}
