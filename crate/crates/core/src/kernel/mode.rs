use std::fmt;
use std::str::FromStr;

/// Realization status of a region or proposition.
///
/// `Actual`, `Potential` and `Absent` are totally ordered
/// (`Absent < Potential < Actual`); `Hole` sits outside that order and marks
/// something that can be neither realized nor left potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Actual,
    Potential,
    Absent,
    Hole,
}

impl Mode {
    /// Enumeration order used for every brute-force search, so that reported
    /// countermodels are deterministic.
    pub const ALL: [Mode; 4] = [Mode::Actual, Mode::Potential, Mode::Absent, Mode::Hole];

    /// The three ordered modes.
    pub const ORDERED: [Mode; 3] = [Mode::Actual, Mode::Potential, Mode::Absent];

    /// Position in `Absent < Potential < Actual`; `None` for `Hole`.
    pub fn rank(self) -> Option<u8> {
        match self {
            Mode::Absent => Some(0),
            Mode::Potential => Some(1),
            Mode::Actual => Some(2),
            Mode::Hole => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Actual => "actual",
            Mode::Potential => "potential",
            Mode::Absent => "absent",
            Mode::Hole => "hole",
        }
    }

    /// Event-level view of this mode, if it has one.
    pub fn as_event_mode(self) -> Option<EventMode> {
        match self {
            Mode::Actual => Some(EventMode::Actual),
            Mode::Absent => Some(EventMode::Absent),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown mode `{0}` (expected actual, absent, potential or hole)")]
pub struct UnknownMode(pub String);

impl FromStr for Mode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "actual" => Ok(Mode::Actual),
            "potential" => Ok(Mode::Potential),
            "absent" => Ok(Mode::Absent),
            "hole" => Ok(Mode::Hole),
            other => Err(UnknownMode(other.to_string())),
        }
    }
}

/// The only two modes an event can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventMode {
    Actual,
    Absent,
}

impl EventMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EventMode::Actual => "actual",
            EventMode::Absent => "absent",
        }
    }
}

impl From<EventMode> for Mode {
    fn from(m: EventMode) -> Mode {
        match m {
            EventMode::Actual => Mode::Actual,
            EventMode::Absent => Mode::Absent,
        }
    }
}

impl fmt::Display for EventMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
