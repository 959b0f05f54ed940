//! The closed inventory of 50 adposition supersenses and tree queries over it.
//!
//! The inventory is a forest of three subhierarchies (`Circumstance`,
//! `Participant`, `Configuration`). For similarity math the three roots hang
//! under a synthetic virtual root of depth 0, so every subhierarchy root has
//! depth 1 and the deepest labels (e.g. `StartTime`, `Stuff`) have depth 4.

mod migration;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::LabelError;

pub use migration::{migrate_v1, MigrationResult, V1_LEDGER};

/// Depth assigned to the synthetic root above the three subhierarchies.
pub const VIRTUAL_ROOT_DEPTH: usize = 0;

/// One of the 50 supersense labels.
///
/// Variant order is the pre-order traversal of the hierarchy
/// (Circumstance, then Participant, then Configuration), which is also the
/// derived `Ord`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Supersense {
    Circumstance,
    Temporal,
    Time,
    StartTime,
    EndTime,
    Frequency,
    Duration,
    Interval,
    Locus,
    Source,
    Goal,
    Path,
    Direction,
    Extent,
    Means,
    Manner,
    Explanation,
    Purpose,
    Participant,
    Causer,
    Agent,
    CoAgent,
    Theme,
    CoTheme,
    Topic,
    Stimulus,
    Experiencer,
    Originator,
    Recipient,
    Cost,
    Beneficiary,
    Instrument,
    Configuration,
    Identity,
    Species,
    Gestalt,
    Possessor,
    Whole,
    Characteristic,
    Possession,
    PartPortion,
    Stuff,
    Accompanier,
    InsteadOf,
    ComparisonRef,
    RateUnit,
    Quantity,
    Approximator,
    SocialRel,
    OrgRole,
}

/// The three top-level subhierarchies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subhierarchy {
    Circumstance,
    Participant,
    Configuration,
}

impl Subhierarchy {
    pub const ALL: [Subhierarchy; 3] = [
        Subhierarchy::Circumstance,
        Subhierarchy::Participant,
        Subhierarchy::Configuration,
    ];

    pub fn root(self) -> Supersense {
        match self {
            Subhierarchy::Circumstance => Supersense::Circumstance,
            Subhierarchy::Participant => Supersense::Participant,
            Subhierarchy::Configuration => Supersense::Configuration,
        }
    }

    pub fn name(self) -> &'static str {
        self.root().name()
    }
}

impl fmt::Display for Subhierarchy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

use Supersense::*;

// (label, canonical name, parent) in pre-order.
const TABLE: [(Supersense, &str, Option<Supersense>); 50] = [
    (Circumstance, "Circumstance", None),
    (Temporal, "Temporal", Some(Circumstance)),
    (Time, "Time", Some(Temporal)),
    (StartTime, "StartTime", Some(Time)),
    (EndTime, "EndTime", Some(Time)),
    (Frequency, "Frequency", Some(Temporal)),
    (Duration, "Duration", Some(Temporal)),
    (Interval, "Interval", Some(Temporal)),
    (Locus, "Locus", Some(Circumstance)),
    (Source, "Source", Some(Locus)),
    (Goal, "Goal", Some(Locus)),
    (Path, "Path", Some(Circumstance)),
    (Direction, "Direction", Some(Path)),
    (Extent, "Extent", Some(Path)),
    (Means, "Means", Some(Circumstance)),
    (Manner, "Manner", Some(Circumstance)),
    (Explanation, "Explanation", Some(Circumstance)),
    (Purpose, "Purpose", Some(Explanation)),
    (Participant, "Participant", None),
    (Causer, "Causer", Some(Participant)),
    (Agent, "Agent", Some(Causer)),
    (CoAgent, "Co-Agent", Some(Agent)),
    (Theme, "Theme", Some(Participant)),
    (CoTheme, "Co-Theme", Some(Theme)),
    (Topic, "Topic", Some(Theme)),
    (Stimulus, "Stimulus", Some(Participant)),
    (Experiencer, "Experiencer", Some(Participant)),
    (Originator, "Originator", Some(Participant)),
    (Recipient, "Recipient", Some(Participant)),
    (Cost, "Cost", Some(Participant)),
    (Beneficiary, "Beneficiary", Some(Participant)),
    (Instrument, "Instrument", Some(Participant)),
    (Configuration, "Configuration", None),
    (Identity, "Identity", Some(Configuration)),
    (Species, "Species", Some(Configuration)),
    (Gestalt, "Gestalt", Some(Configuration)),
    (Possessor, "Possessor", Some(Gestalt)),
    (Whole, "Whole", Some(Gestalt)),
    (Characteristic, "Characteristic", Some(Configuration)),
    (Possession, "Possession", Some(Characteristic)),
    (PartPortion, "PartPortion", Some(Characteristic)),
    (Stuff, "Stuff", Some(PartPortion)),
    (Accompanier, "Accompanier", Some(Configuration)),
    (InsteadOf, "InsteadOf", Some(Configuration)),
    (ComparisonRef, "ComparisonRef", Some(Configuration)),
    (RateUnit, "RateUnit", Some(Configuration)),
    (Quantity, "Quantity", Some(Configuration)),
    (Approximator, "Approximator", Some(Quantity)),
    (SocialRel, "SocialRel", Some(Configuration)),
    (OrgRole, "OrgRole", Some(SocialRel)),
];

impl Supersense {
    /// All 50 labels in pre-order.
    pub const ALL: [Supersense; 50] = {
        let mut all = [Circumstance; 50];
        let mut i = 0;
        while i < 50 {
            all[i] = TABLE[i].0;
            i += 1;
        }
        all
    };

    /// Labels that only organize subtrees and may never annotate a token.
    pub const ABSTRACT: [Supersense; 3] = [Participant, Configuration, Temporal];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        TABLE[self.index()].1
    }

    pub fn parent(self) -> Option<Supersense> {
        TABLE[self.index()].2
    }

    pub fn is_abstract(self) -> bool {
        Self::ABSTRACT.contains(&self)
    }

    pub fn depth(self) -> usize {
        Hierarchy::get().nodes[self.index()].depth
    }

    pub fn subhierarchy(self) -> Subhierarchy {
        Hierarchy::get().nodes[self.index()].subhierarchy
    }

    pub fn children(self) -> &'static [Supersense] {
        &Hierarchy::get().nodes[self.index()].children
    }

    /// Parent chain up to the subhierarchy root, excluding `self`.
    pub fn ancestors(self) -> Vec<Supersense> {
        let mut out = Vec::with_capacity(3);
        let mut cur = self.parent();
        while let Some(s) = cur {
            out.push(s);
            cur = s.parent();
        }
        out
    }

    /// True when `self` is a proper ancestor of `other`.
    pub fn is_ancestor_of(self, other: Supersense) -> bool {
        other.ancestors().contains(&self)
    }

    /// `self` plus all of its descendants, in pre-order.
    pub fn subtree(self) -> Vec<Supersense> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let kids = out[i].children();
            out.extend_from_slice(kids);
            i += 1;
        }
        out.sort();
        out
    }
}

impl fmt::Display for Supersense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Supersense {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_supersense(s)
    }
}

/// Exact, case-sensitive lookup of a canonical supersense name.
pub fn parse_supersense(text: &str) -> Result<Supersense, LabelError> {
    TABLE
        .iter()
        .find(|(_, name, _)| *name == text)
        .map(|(s, _, _)| *s)
        .ok_or_else(|| LabelError::Unknown(text.to_string()))
}

/// A node of the built hierarchy.
#[derive(Debug, Clone)]
pub struct Node {
    pub supersense: Supersense,
    pub depth: usize,
    pub subhierarchy: Subhierarchy,
    pub children: Vec<Supersense>,
}

/// The immutable label forest, built once on first use.
#[derive(Debug)]
pub struct Hierarchy {
    nodes: Vec<Node>,
}

impl Hierarchy {
    pub fn get() -> &'static Hierarchy {
        static HIERARCHY: OnceLock<Hierarchy> = OnceLock::new();
        HIERARCHY.get_or_init(Hierarchy::build)
    }

    fn build() -> Hierarchy {
        let mut nodes: Vec<Node> = Vec::with_capacity(TABLE.len());
        for (s, _, parent) in TABLE {
            let (depth, subhierarchy) = match parent {
                // parents always precede children in TABLE
                Some(p) => {
                    let pn = &nodes[p.index()];
                    (pn.depth + 1, pn.subhierarchy)
                }
                None => {
                    let sub = Subhierarchy::ALL
                        .into_iter()
                        .find(|h| h.root() == s)
                        .expect("every root is a subhierarchy root");
                    (VIRTUAL_ROOT_DEPTH + 1, sub)
                }
            };
            nodes.push(Node {
                supersense: s,
                depth,
                subhierarchy,
                children: Vec::new(),
            });
            if let Some(p) = parent {
                nodes[p.index()].children.push(s);
            }
        }
        Hierarchy { nodes }
    }

    /// Nodes in pre-order (Circumstance, Participant, Configuration).
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn roots(&self) -> impl Iterator<Item = Supersense> + '_ {
        self.nodes
            .iter()
            .filter(|n| n.supersense.parent().is_none())
            .map(|n| n.supersense)
    }

    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// One tab-separated record per label in pre-order, with a header line.
    ///
    /// Columns: NAME, PARENT (`-` for roots), SUBHIERARCHY, ABSTRACT, DEPTH.
    pub fn export(&self) -> String {
        let mut out = String::from("NAME\tPARENT\tSUBHIERARCHY\tABSTRACT\tDEPTH\n");
        for n in &self.nodes {
            let s = n.supersense;
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                s.name(),
                s.parent().map_or("-", Supersense::name),
                n.subhierarchy,
                s.is_abstract(),
                n.depth
            ));
        }
        out
    }
}

/// Deepest label shared by `{a} ∪ ancestors(a)` and `{b} ∪ ancestors(b)`.
///
/// `None` when the labels sit in different subhierarchies.
pub fn lca(a: Supersense, b: Supersense) -> Option<Supersense> {
    let (mut x, mut y) = (a, b);
    while x.depth() > y.depth() {
        x = x.parent()?;
    }
    while y.depth() > x.depth() {
        y = y.parent()?;
    }
    while x != y {
        x = x.parent()?;
        y = y.parent()?;
    }
    Some(x)
}

/// Wu-Palmer similarity `2·depth(lca) / (depth(a) + depth(b))`.
///
/// Labels in different subhierarchies only share the virtual root (depth 0)
/// and score 0.
pub fn wu_palmer(a: Supersense, b: Supersense) -> f64 {
    let shared = lca(a, b).map_or(VIRTUAL_ROOT_DEPTH, Supersense::depth);
    2.0 * shared as f64 / (a.depth() + b.depth()) as f64
}
