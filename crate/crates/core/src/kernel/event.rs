use std::collections::BTreeMap;

use thiserror::Error;

use super::mode::{EventMode, Mode};
use super::model::{ModelError, Region, StaticModel};
use crate::logic::neg;

/// Abstract time: only the order of ticks matters.
pub type Tick = u64;

/// A region joined with time. The region is carried unchanged; an absent
/// event occupies its tick without realizing the region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub id: String,
    pub region: Region,
    pub time: Tick,
    pub mode: EventMode,
    /// Atom-level declarations this event makes when it occurs.
    pub constituents: BTreeMap<String, EventMode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("`{0}` is a static-level mode; events are either actual or absent")]
    NotAnEventMode(Mode),
    #[error("a negated region can only be realized as an actual occurrence of its absence")]
    NegatedAbsence,
}

/// Joins a region with a tick.
pub fn realize(region: &Region, time: Tick, mode: Mode) -> Result<Event, EventError> {
    let mode = mode.as_event_mode().ok_or(EventError::NotAnEventMode(mode))?;
    Ok(Event {
        id: format!("{}@{}", region.name, time),
        region: region.clone(),
        time,
        mode,
        constituents: BTreeMap::new(),
    })
}

/// Reverts an event to the static region it realized.
pub fn deactualize(event: &Event) -> &Region {
    &event.region
}

/// A potential region under negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegatedRegion(pub Region);

impl NegatedRegion {
    /// Status of the negated region: `neg(Potential)`, i.e. `Absent`.
    pub fn mode(&self) -> Mode {
        neg(Mode::Potential)
    }

    /// Realizing `¬r` as actual is realizing `r` as absent.
    pub fn realize(&self, time: Tick, mode: Mode) -> Result<Event, EventError> {
        match mode.as_event_mode().ok_or(EventError::NotAnEventMode(mode))? {
            EventMode::Actual => realize(&self.0, time, self.mode()),
            EventMode::Absent => Err(EventError::NegatedAbsence),
        }
    }
}

pub fn negate_region(region: &Region) -> NegatedRegion {
    NegatedRegion(region.clone())
}

/// Negating an event yields the status of its region: an actual event's
/// negation is its subsisting (potential) region.
pub fn negate_event(event: &Event) -> Mode {
    neg(event.mode.into())
}

/// A static model together with its atoms and events.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TmModel {
    pub statics: StaticModel,
    /// Atom name to the region it names.
    pub atoms: BTreeMap<String, String>,
    pub events: BTreeMap<String, Event>,
}

impl TmModel {
    pub fn resolve_region(&self, name: &str) -> Result<&Region, ModelError> {
        self.statics.resolve_region(name)
    }

    /// Region bound to an atom.
    pub fn atom_region(&self, atom: &str) -> Option<&Region> {
        self.atoms.get(atom).and_then(|r| self.statics.regions.get(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::model::ActionKind;

    fn sample_region() -> Region {
        let mut m = StaticModel::new();
        let t = m.add_thimac(None, "Waiter").unwrap();
        let c = m.add_action(&t, ActionKind::Create).unwrap();
        let p = m.add_action(&t, ActionKind::Process).unwrap();
        m.add_flow(c.clone(), p.clone()).unwrap();
        m.add_region("Serve", [c, p]).unwrap().clone()
    }

    #[test]
    fn static_modes_are_not_event_modes() {
        let r = sample_region();
        assert_eq!(realize(&r, 0, Mode::Potential), Err(EventError::NotAnEventMode(Mode::Potential)));
        assert_eq!(realize(&r, 0, Mode::Hole), Err(EventError::NotAnEventMode(Mode::Hole)));
    }

    #[test]
    fn deactualize_undoes_realize_in_both_modes() {
        let r = sample_region();
        for mode in [Mode::Actual, Mode::Absent] {
            let e = realize(&r, 5, mode).unwrap();
            assert_eq!(deactualize(&e), &r);
            assert_eq!(e.region.name, "Serve");
        }
    }

    #[test]
    fn negated_region_realizes_as_absence() {
        let r = sample_region();
        let neg_r = negate_region(&r);
        assert_eq!(neg_r.mode(), Mode::Absent);
        assert_eq!(neg_r.realize(3, Mode::Actual).unwrap(), realize(&r, 3, Mode::Absent).unwrap());
        assert!(neg_r.realize(3, Mode::Potential).is_err());
    }

    #[test]
    fn negated_actual_event_is_its_potential_region() {
        let r = sample_region();
        let e = realize(&r, 1, Mode::Actual).unwrap();
        assert_eq!(negate_event(&e), Mode::Potential);
    }
}
