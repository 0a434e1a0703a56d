//! Thimacs, generic actions, flows and triggers at the static level, and the
//! region/event duality that connects it to the dynamic level.

mod event;
mod mode;
mod model;
mod validate;

pub use event::{deactualize, negate_event, negate_region, realize, Event, EventError, NegatedRegion, Tick, TmModel};
pub use mode::{EventMode, Mode, UnknownMode};
pub use model::{
    ActionId, ActionKind, ActionNode, ArcRef, FlowArc, ModelError, Region, StaticModel, Thimac, ThimacId, TriggerArc,
};
pub use validate::validate_static;
