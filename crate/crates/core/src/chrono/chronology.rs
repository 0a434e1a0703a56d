use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::logic::Formula;

/// How one event leads to the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// Solid arrow: the target follows the source.
    Sequence,
    /// Dashed arrow: the source initiates the target.
    Trigger,
    /// Branching into exactly one of several targets. A triggered
    /// alternative branches along dashed arrows.
    Alternative { triggered: bool },
}

impl EdgeKind {
    /// Whether absence of the source carries over to a target reached
    /// through this edge. Only plain alternatives stop it.
    pub fn carries_absence(self) -> bool {
        !matches!(self, EdgeKind::Alternative { triggered: false })
    }

    pub fn is_dashed(self) -> bool {
        matches!(self, EdgeKind::Trigger | EdgeKind::Alternative { triggered: true })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChronoEdge {
    pub kind: EdgeKind,
    pub source: String,
    pub targets: Vec<String>,
}

/// Exactly `count` occurrences, in total, of the listed events in a
/// complete trace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChoiceGroup {
    pub count: usize,
    pub events: BTreeSet<String>,
}

/// A graph of events joined by sequence, trigger and alternative edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Chronology {
    pub name: String,
    pub nodes: BTreeSet<String>,
    edges: Vec<ChronoEdge>,
    pub choices: Vec<ChoiceGroup>,
}

impl Chronology {
    pub fn new(name: impl Into<String>) -> Self {
        Chronology {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_node(&mut self, id: impl Into<String>) {
        self.nodes.insert(id.into());
    }

    /// Adds an edge and its endpoints. Edges are kept sorted and unique.
    pub fn add_edge(&mut self, edge: ChronoEdge) {
        self.nodes.insert(edge.source.clone());
        self.nodes.extend(edge.targets.iter().cloned());
        if let Err(at) = self.edges.binary_search(&edge) {
            self.edges.insert(at, edge);
        }
    }

    pub fn sequence(&mut self, from: &str, to: &str) {
        self.add_edge(ChronoEdge {
            kind: EdgeKind::Sequence,
            source: from.into(),
            targets: vec![to.into()],
        });
    }

    pub fn trigger(&mut self, from: &str, to: &str) {
        self.add_edge(ChronoEdge {
            kind: EdgeKind::Trigger,
            source: from.into(),
            targets: vec![to.into()],
        });
    }

    pub fn alternative(&mut self, from: &str, to: &[&str], triggered: bool) {
        self.add_edge(ChronoEdge {
            kind: EdgeKind::Alternative { triggered },
            source: from.into(),
            targets: to.iter().map(|s| s.to_string()).collect(),
        });
    }

    pub fn add_choice(&mut self, group: ChoiceGroup) {
        if let Err(at) = self.choices.binary_search(&group) {
            self.choices.insert(at, group);
        }
    }

    pub fn edges(&self) -> &[ChronoEdge] {
        &self.edges
    }

    /// Successors of `node`, each with the edge kind leading there. When
    /// several edges reach the same target, the one that carries absence
    /// wins.
    pub fn successors(&self, node: &str) -> BTreeMap<&str, EdgeKind> {
        let mut out: BTreeMap<&str, EdgeKind> = BTreeMap::new();
        for e in self.edges.iter().filter(|e| e.source == node) {
            for t in &e.targets {
                out.entry(t.as_str())
                    .and_modify(|k| {
                        if !k.carries_absence() {
                            *k = e.kind;
                        }
                    })
                    .or_insert(e.kind);
            }
        }
        out
    }

    /// Edge kind from `a` straight to `b`, if any.
    pub fn link(&self, a: &str, b: &str) -> Option<EdgeKind> {
        self.successors(a).get(b).copied()
    }

    /// Default starting event: the least node without incoming edges, or the
    /// least node overall when every node has a predecessor.
    pub fn start(&self) -> Option<&str> {
        let targets: BTreeSet<&str> = self
            .edges
            .iter()
            .flat_map(|e| e.targets.iter().map(|t| t.as_str()))
            .collect();
        self.nodes
            .iter()
            .map(|n| n.as_str())
            .find(|n| !targets.contains(n))
            .or_else(|| self.nodes.iter().next().map(|n| n.as_str()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintKind {
    /// `=>`: whenever the left side is actual, the right side is actual in
    /// the same state.
    Simultaneous,
    /// `~>`: whenever the left side is actual, the right side becomes actual
    /// in that state or a later one.
    Triggering,
}

impl ConstraintKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ConstraintKind::Simultaneous => "=>",
            ConstraintKind::Triggering => "~>",
        }
    }
}

/// A top-level implication checked over traces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub name: String,
    pub lhs: Formula,
    pub kind: ConstraintKind,
    pub rhs: Formula,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.kind.symbol(), self.rhs)
    }
}
