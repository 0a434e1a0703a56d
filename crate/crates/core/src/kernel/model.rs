use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// The five generic actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActionKind {
    Create,
    Process,
    Release,
    Transfer,
    Receive,
}

impl ActionKind {
    pub const ALL: [ActionKind; 5] = [
        ActionKind::Create,
        ActionKind::Process,
        ActionKind::Release,
        ActionKind::Transfer,
        ActionKind::Receive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ActionKind::Create => "create",
            ActionKind::Process => "process",
            ActionKind::Release => "release",
            ActionKind::Transfer => "transfer",
            ActionKind::Receive => "receive",
        }
    }

    pub fn from_keyword(word: &str) -> Option<ActionKind> {
        ActionKind::ALL.into_iter().find(|k| k.as_str() == word)
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! string_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_string())
            }
        }
    };
}

string_id!(
    /// Dotted path of a thimac, e.g. `Waiter.Fish.Dish`.
    ThimacId
);
string_id!(
    /// Dotted path of an action node, e.g. `Waiter.Fish.Dish.release`.
    ActionId
);

impl ThimacId {
    pub fn child(&self, name: &str) -> ThimacId {
        ThimacId(format!("{}.{}", self.0, name))
    }

    pub fn action(&self, kind: ActionKind) -> ActionId {
        ActionId(format!("{}.{}", self.0, kind))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionNode {
    pub id: ActionId,
    pub owner: ThimacId,
    pub kind: ActionKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thimac {
    pub id: ThimacId,
    pub name: String,
    pub parent: Option<ThimacId>,
    pub actions: BTreeSet<ActionId>,
    pub children: BTreeSet<ThimacId>,
}

/// A solid flow arrow between two action nodes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlowArc {
    pub from: ActionId,
    pub to: ActionId,
}

/// A dashed triggering arrow between two action nodes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriggerArc {
    pub from: ActionId,
    pub to: ActionId,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcRef {
    Flow(FlowArc),
    Trigger(TriggerArc),
}

impl ArcRef {
    pub fn endpoints(&self) -> (&ActionId, &ActionId) {
        match self {
            ArcRef::Flow(a) => (&a.from, &a.to),
            ArcRef::Trigger(a) => (&a.from, &a.to),
        }
    }
}

/// A named static subdiagram: the potential form of a proposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub name: String,
    pub nodes: BTreeSet<ActionId>,
    pub arcs: BTreeSet<ArcRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate thimac `{0}`")]
    DuplicateThimac(ThimacId),
    #[error("duplicate action `{0}`")]
    DuplicateAction(ActionId),
    #[error("duplicate region `{0}`")]
    DuplicateRegion(String),
    #[error("unknown thimac `{0}`")]
    UnknownThimac(ThimacId),
    #[error("unknown action `{0}`")]
    UnknownAction(ActionId),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("region `{0}` has no nodes")]
    EmptyRegion(String),
    #[error("region `{region}` names `{node}`, which is not in the model")]
    RegionOutsideModel { region: String, node: ActionId },
}

/// The static level: thimac forest, action nodes and the arcs between them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StaticModel {
    pub thimacs: BTreeMap<ThimacId, Thimac>,
    pub actions: BTreeMap<ActionId, ActionNode>,
    pub flows: BTreeSet<FlowArc>,
    pub triggers: BTreeSet<TriggerArc>,
    pub regions: BTreeMap<String, Region>,
}

impl StaticModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.thimacs.is_empty() && self.actions.is_empty() && self.regions.is_empty()
    }

    pub fn add_thimac(
        &mut self,
        parent: Option<&ThimacId>,
        name: &str,
    ) -> Result<ThimacId, ModelError> {
        let id = match parent {
            Some(p) => {
                if !self.thimacs.contains_key(p) {
                    return Err(ModelError::UnknownThimac(p.clone()));
                }
                p.child(name)
            }
            None => ThimacId(name.to_string()),
        };
        if self.thimacs.contains_key(&id) {
            return Err(ModelError::DuplicateThimac(id));
        }
        if let Some(p) = parent {
            self.thimacs
                .get_mut(p)
                .expect("checked above")
                .children
                .insert(id.clone());
        }
        self.thimacs.insert(
            id.clone(),
            Thimac {
                id: id.clone(),
                name: name.to_string(),
                parent: parent.cloned(),
                actions: BTreeSet::new(),
                children: BTreeSet::new(),
            },
        );
        Ok(id)
    }

    pub fn add_action(&mut self, owner: &ThimacId, kind: ActionKind) -> Result<ActionId, ModelError> {
        let thimac = self
            .thimacs
            .get_mut(owner)
            .ok_or_else(|| ModelError::UnknownThimac(owner.clone()))?;
        let id = owner.action(kind);
        if !thimac.actions.insert(id.clone()) {
            return Err(ModelError::DuplicateAction(id));
        }
        self.actions.insert(
            id.clone(),
            ActionNode {
                id: id.clone(),
                owner: owner.clone(),
                kind,
            },
        );
        Ok(id)
    }

    fn require_action(&self, id: &ActionId) -> Result<(), ModelError> {
        if self.actions.contains_key(id) {
            Ok(())
        } else {
            Err(ModelError::UnknownAction(id.clone()))
        }
    }

    /// Adds a flow; returns `false` if the same flow already existed.
    pub fn add_flow(&mut self, from: ActionId, to: ActionId) -> Result<bool, ModelError> {
        self.require_action(&from)?;
        self.require_action(&to)?;
        Ok(self.flows.insert(FlowArc { from, to }))
    }

    /// Adds a trigger; returns `false` if the same trigger already existed.
    pub fn add_trigger(&mut self, from: ActionId, to: ActionId) -> Result<bool, ModelError> {
        self.require_action(&from)?;
        self.require_action(&to)?;
        Ok(self.triggers.insert(TriggerArc { from, to }))
    }

    /// Declares a region over existing nodes. Its internal arcs are collected
    /// from the flows and triggers present at the time of the call.
    pub fn add_region(
        &mut self,
        name: &str,
        nodes: impl IntoIterator<Item = ActionId>,
    ) -> Result<&Region, ModelError> {
        if self.regions.contains_key(name) {
            return Err(ModelError::DuplicateRegion(name.to_string()));
        }
        let nodes: BTreeSet<ActionId> = nodes.into_iter().collect();
        if nodes.is_empty() {
            return Err(ModelError::EmptyRegion(name.to_string()));
        }
        for n in &nodes {
            self.require_action(n)?;
        }
        let arcs = self.internal_arcs(&nodes);
        let region = Region {
            name: name.to_string(),
            nodes,
            arcs,
        };
        Ok(self.regions.entry(name.to_string()).or_insert(region))
    }

    fn internal_arcs(&self, nodes: &BTreeSet<ActionId>) -> BTreeSet<ArcRef> {
        let flows = self
            .flows
            .iter()
            .filter(|a| nodes.contains(&a.from) && nodes.contains(&a.to))
            .cloned()
            .map(ArcRef::Flow);
        let triggers = self
            .triggers
            .iter()
            .filter(|a| nodes.contains(&a.from) && nodes.contains(&a.to))
            .cloned()
            .map(ArcRef::Trigger);
        flows.chain(triggers).collect()
    }

    /// Looks up a region and checks that it still lies inside the model.
    pub fn resolve_region(&self, name: &str) -> Result<&Region, ModelError> {
        let region = self
            .regions
            .get(name)
            .ok_or_else(|| ModelError::UnknownRegion(name.to_string()))?;
        if let Some(node) = region.nodes.iter().find(|n| !self.actions.contains_key(*n)) {
            return Err(ModelError::RegionOutsideModel {
                region: name.to_string(),
                node: node.clone(),
            });
        }
        Ok(region)
    }

    /// Whether `ancestor` is `descendant` or encloses it. Stops on cycles.
    pub fn encloses(&self, ancestor: &ThimacId, descendant: &ThimacId) -> bool {
        let mut cur = Some(descendant);
        let mut steps = 0;
        while let Some(id) = cur {
            if id == ancestor {
                return true;
            }
            steps += 1;
            if steps > self.thimacs.len() {
                return false;
            }
            cur = self.thimacs.get(id).and_then(|t| t.parent.as_ref());
        }
        false
    }

    /// Root thimacs in identifier order.
    pub fn roots(&self) -> impl Iterator<Item = &Thimac> {
        self.thimacs.values().filter(|t| t.parent.is_none())
    }
}
