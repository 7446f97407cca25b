//! Singular link diagrams: circles, Hopf pairs and the arc bands joining them.
//!
//! A diagram is plain data; [`SingularLinkDiagram::validate`] reports every
//! structural problem and [`SingularLinkDiagram::resolve`] turns a well-formed
//! diagram into the index-based form the algorithms run on.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Member {
    A,
    B,
}

impl Member {
    pub fn other(self) -> Self {
        match self {
            Member::A => Member::B,
            Member::B => Member::A,
        }
    }
}

/// A circle of the diagram: a simple circle by node id, or one member of a
/// Hopf pair (`TL.a`, `TL.b`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleRef {
    pub node: String,
    pub member: Option<Member>,
}

impl CircleRef {
    pub fn simple(node: impl Into<String>) -> Self {
        Self { node: node.into(), member: None }
    }

    pub fn hopf(node: impl Into<String>, member: Member) -> Self {
        Self { node: node.into(), member: Some(member) }
    }
}

impl fmt::Display for CircleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.member {
            None => write!(f, "{}", self.node),
            Some(Member::A) => write!(f, "{}.a", self.node),
            Some(Member::B) => write!(f, "{}.b", self.node),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid circle reference {0:?}")]
pub struct CircleRefParseError(pub String);

impl FromStr for CircleRef {
    type Err = CircleRefParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CircleRefParseError(s.to_string());
        let (node, member) = match s.rsplit_once('.') {
            Some((node, "a")) => (node, Some(Member::A)),
            Some((node, "b")) => (node, Some(Member::B)),
            Some(_) => return Err(err()),
            None => (s, None),
        };
        if !is_identifier(node) {
            return Err(err());
        }
        Ok(Self { node: node.to_string(), member })
    }
}

/// Identifiers start with a letter or underscore and continue with
/// alphanumerics, `_` or `-`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NodeKind {
    Circle,
    Hopf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn exponent(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcEnd {
    pub circle: CircleRef,
    pub slot: i64,
}

/// One crossing of an arc through the disc bounded by `circle`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub circle: CircleRef,
    pub sign: Sign,
}

/// The core of a 1-handle, oriented from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcBand {
    pub id: String,
    pub start: ArcEnd,
    pub end: ArcEnd,
    pub word: Vec<Crossing>,
    /// Framing data; only the parity is used.
    pub twist: i64,
}

impl ArcBand {
    pub fn new(id: impl Into<String>, start: (CircleRef, i64), end: (CircleRef, i64)) -> Self {
        Self {
            id: id.into(),
            start: ArcEnd { circle: start.0, slot: start.1 },
            end: ArcEnd { circle: end.0, slot: end.1 },
            word: Vec::new(),
            twist: 0,
        }
    }

    pub fn with_word(mut self, word: impl IntoIterator<Item = (CircleRef, Sign)>) -> Self {
        self.word = word.into_iter().map(|(circle, sign)| Crossing { circle, sign }).collect();
        self
    }

    pub fn with_twist(mut self, twist: i64) -> Self {
        self.twist = twist;
        self
    }

    /// The same band traversed from `end` to `start`: endpoints swapped, word
    /// reversed with signs flipped.
    pub fn reversed(&self) -> Self {
        Self {
            id: self.id.clone(),
            start: self.end.clone(),
            end: self.start.clone(),
            word: self
                .word
                .iter()
                .rev()
                .map(|c| Crossing { circle: c.circle.clone(), sign: c.sign.flip() })
                .collect(),
            twist: self.twist,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SingularLinkDiagram {
    nodes: Vec<Node>,
    arcs: Vec<ArcBand>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    DuplicateId,
    UnresolvedReference,
    SlotCollision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ViolationKind::DuplicateId => "duplicate id",
            ViolationKind::UnresolvedReference => "unresolved reference",
            ViolationKind::SlotCollision => "slot collision",
        };
        write!(f, "{kind}: {}", self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_wellformed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, message: String) {
        self.violations.push(Violation { kind, message });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("diagram is not well-formed ({} violations)", .0.violations.len())]
    Invalid(ValidationReport),
    #[error("component count ill-defined for immersed link: Hopf pair {0} spans two components")]
    SelfIntersectionViolated(String),
    #[error("non-orientable band: arc {0} has odd twist")]
    NonOrientableBand(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

impl SingularLinkDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_circle(&mut self, id: impl Into<String>) -> &mut Self {
        self.nodes.push(Node { id: id.into(), kind: NodeKind::Circle });
        self
    }

    pub fn add_hopf(&mut self, id: impl Into<String>) -> &mut Self {
        self.nodes.push(Node { id: id.into(), kind: NodeKind::Hopf });
        self
    }

    pub fn add_arc(&mut self, arc: ArcBand) -> &mut Self {
        self.arcs.push(arc);
        self
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[ArcBand] {
        &self.arcs
    }

    pub fn arcs_mut(&mut self) -> &mut Vec<ArcBand> {
        &mut self.arcs
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    /// Number of Hopf nodes (`n`, the second Betti number).
    pub fn hopf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Hopf).count()
    }

    /// Number of simple circles (`l`).
    pub fn simple_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Circle).count()
    }

    pub fn hopf_ids(&self) -> Vec<&str> {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Hopf).map(|n| n.id.as_str()).collect()
    }

    /// All circles in node order; a Hopf node contributes `.a` then `.b`.
    pub fn circles(&self) -> Vec<CircleRef> {
        self.nodes
            .iter()
            .flat_map(|n| match n.kind {
                NodeKind::Circle => vec![CircleRef::simple(&n.id)],
                NodeKind::Hopf => vec![CircleRef::hopf(&n.id, Member::A), CircleRef::hopf(&n.id, Member::B)],
            })
            .collect()
    }

    pub fn resolves(&self, r: &CircleRef) -> bool {
        match (self.node(&r.node), r.member) {
            (Some(n), None) => n.kind == NodeKind::Circle,
            (Some(n), Some(_)) => n.kind == NodeKind::Hopf,
            (None, _) => false,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut node_ids = HashSet::new();
        for n in &self.nodes {
            if !node_ids.insert(n.id.as_str()) {
                report.push(ViolationKind::DuplicateId, format!("node {}", n.id));
            }
        }
        let mut arc_ids = HashSet::new();
        let mut slots: HashMap<(&CircleRef, i64), &str> = HashMap::new();
        for arc in &self.arcs {
            if !arc_ids.insert(arc.id.as_str()) {
                report.push(ViolationKind::DuplicateId, format!("arc {}", arc.id));
            }
            for end in [&arc.start, &arc.end] {
                if !self.resolves(&end.circle) {
                    report.push(
                        ViolationKind::UnresolvedReference,
                        format!("arc {} endpoint {}", arc.id, end.circle),
                    );
                    continue;
                }
                if let Some(other) = slots.insert((&end.circle, end.slot), &arc.id) {
                    report.push(
                        ViolationKind::SlotCollision,
                        format!("arcs {other} and {} both use slot {} on {}", arc.id, end.slot, end.circle),
                    );
                }
            }
            for c in &arc.word {
                if !self.resolves(&c.circle) {
                    report.push(
                        ViolationKind::UnresolvedReference,
                        format!("arc {} crosses unknown disc {}", arc.id, c.circle),
                    );
                }
            }
        }
        report
    }

    pub fn resolve(&self) -> Result<Resolved, DiagramError> {
        let report = self.validate();
        if !report.is_wellformed() {
            return Err(DiagramError::Invalid(report));
        }
        let circles = self.circles();
        let circle_index: HashMap<&CircleRef, usize> =
            circles.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let node_index: HashMap<&str, usize> =
            self.nodes.iter().enumerate().map(|(i, n)| (n.id.as_str(), i)).collect();
        let node_of_circle = circles.iter().map(|c| node_index[c.node.as_str()]).collect();
        let arcs = self
            .arcs
            .iter()
            .map(|a| ResolvedArc {
                start: circle_index[&a.start.circle],
                start_slot: a.start.slot,
                end: circle_index[&a.end.circle],
                end_slot: a.end.slot,
                word: a
                    .word
                    .iter()
                    .map(|c| (node_index[c.circle.node.as_str()], c.sign.exponent()))
                    .collect(),
                twist: a.twist,
            })
            .collect();
        let hopf_members = self
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.kind == NodeKind::Hopf)
            .map(|(i, n)| {
                let a = circle_index[&CircleRef::hopf(&n.id, Member::A)];
                let b = circle_index[&CircleRef::hopf(&n.id, Member::B)];
                (i, a, b)
            })
            .collect();
        Ok(Resolved { circles, node_of_circle, node_count: self.nodes.len(), arcs, hopf_members })
    }

    pub fn components(&self) -> Result<ComponentPartition, DiagramError> {
        Ok(self.resolve()?.components())
    }
}

/// Index form of a well-formed diagram. Circle indices follow
/// [`SingularLinkDiagram::circles`], node indices follow node order and arc
/// indices follow arc order.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub circles: Vec<CircleRef>,
    pub node_of_circle: Vec<usize>,
    pub node_count: usize,
    pub arcs: Vec<ResolvedArc>,
    /// `(node, circle of .a, circle of .b)` for each Hopf node.
    pub hopf_members: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ResolvedArc {
    pub start: usize,
    pub start_slot: i64,
    pub end: usize,
    pub end_slot: i64,
    /// `(node, ±1)` in word order.
    pub word: Vec<(usize, i8)>,
    pub twist: i64,
}

impl Resolved {
    pub fn components(&self) -> ComponentPartition {
        let mut uf = UnionFind::new(self.circles.len());
        for a in &self.arcs {
            uf.union(a.start, a.end);
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for c in 0..self.circles.len() {
            blocks.entry(uf.find(c)).or_default().push(c);
        }
        let mut blocks: Vec<Vec<usize>> = blocks.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![0; self.circles.len()];
        for (i, b) in blocks.iter().enumerate() {
            for &c in b {
                block_of[c] = i;
            }
        }
        ComponentPartition {
            blocks: blocks
                .into_iter()
                .map(|b| b.into_iter().map(|c| self.circles[c].clone()).collect())
                .collect(),
            block_of,
        }
    }

    /// Hopf nodes whose two members lie in different components.
    pub fn split_hopf_nodes(&self, partition: &ComponentPartition) -> Vec<usize> {
        self.hopf_members
            .iter()
            .filter(|&&(_, a, b)| partition.block_of[a] != partition.block_of[b])
            .map(|&(node, _, _)| node)
            .collect()
    }
}

/// Connected components of the circle graph (vertices circles, edges arcs).
/// Blocks are ordered by their first circle; circles within a block follow
/// circle order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<CircleRef>>,
    block_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index of a circle, by circle index.
    pub fn block_of(&self, circle: usize) -> usize {
        self.block_of[circle]
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CircleRef {
        s.parse().unwrap()
    }

    #[test]
    fn circle_ref_text() {
        assert_eq!(c("TL.a"), CircleRef::hopf("TL", Member::A));
        assert_eq!(c("Y"), CircleRef::simple("Y"));
        assert_eq!(c("TL.b").to_string(), "TL.b");
        assert!("TL.c".parse::<CircleRef>().is_err());
        assert!("1x".parse::<CircleRef>().is_err());
        assert!(".a".parse::<CircleRef>().is_err());
    }

    #[test]
    fn empty_diagram_is_wellformed() {
        let d = SingularLinkDiagram::new();
        assert!(d.validate().is_wellformed());
        assert_eq!((d.hopf_count(), d.simple_count()), (0, 0));
        assert!(d.components().unwrap().is_empty());
    }

    #[test]
    fn unresolved_reference() {
        let mut d = SingularLinkDiagram::new();
        d.add_circle("c1");
        d.add_arc(ArcBand::new("a1", (c("c1"), 0), (c("c2"), 0)));
        let r = d.validate();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::UnresolvedReference);
        // Hopf member syntax on a simple circle does not resolve either
        let mut d = SingularLinkDiagram::new();
        d.add_circle("c1").add_hopf("h");
        d.add_arc(ArcBand::new("a1", (c("c1.a"), 0), (c("h"), 0)).with_word([(c("zz"), Sign::Plus)]));
        assert_eq!(d.validate().violations.len(), 3);
    }

    #[test]
    fn slot_collision() {
        let mut d = SingularLinkDiagram::new();
        d.add_circle("c1");
        d.add_arc(ArcBand::new("a1", (c("c1"), 0), (c("c1"), 0)));
        let r = d.validate();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::SlotCollision);
        assert!(r.violations[0].to_string().starts_with("slot collision"));
    }

    #[test]
    fn duplicate_ids() {
        let mut d = SingularLinkDiagram::new();
        d.add_circle("x").add_hopf("x");
        d.add_arc(ArcBand::new("a", (c("x"), 0), (c("x"), 1)));
        d.add_arc(ArcBand::new("a", (c("x"), 2), (c("x"), 3)));
        let kinds: Vec<_> = d.validate().violations.iter().map(|v| v.kind).collect();
        assert_eq!(kinds, vec![ViolationKind::DuplicateId, ViolationKind::DuplicateId]);
    }

    #[test]
    fn components_examples() {
        let mut d = SingularLinkDiagram::new();
        d.add_circle("c1").add_circle("c2");
        assert_eq!(d.components().unwrap().len(), 2);
        d.add_arc(ArcBand::new("a", (c("c1"), 0), (c("c2"), 0)));
        let p = d.components().unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.blocks[0], vec![c("c1"), c("c2")]);
    }

    #[test]
    fn reversed_arc() {
        let a = ArcBand::new("a", (c("x"), 0), (c("y"), 1))
            .with_word([(c("p"), Sign::Plus), (c("q"), Sign::Minus)]);
        let r = a.reversed();
        assert_eq!(r.start.circle, c("y"));
        assert_eq!(r.word[0], Crossing { circle: c("q"), sign: Sign::Plus });
        assert_eq!(r.reversed(), a);
    }
}
