//! The four certificate checks on a decorated diagram: genus zero,
//! self-intersection, relators and the Stiefel–Whitney condition.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{ArcBand, DiagramError, Resolved, SingularLinkDiagram};
use crate::ribbon::{cyclic_order_crosscheck, ribbon_genus};
use crate::rotation::RotationElement;
use crate::scalar::ExactField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("node {0} has no decoration")]
    Undecorated(String),
    #[error("no arc path joins {0}.a to {0}.b")]
    NoPath(String),
}

/// Node id to rotation. A Hopf node's element labels both member circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decoration<F> {
    map: BTreeMap<String, RotationElement<F>>,
}

impl<F> Default for Decoration<F> {
    fn default() -> Self {
        Self { map: BTreeMap::new() }
    }
}

impl<F: ExactField> Decoration<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, node: impl Into<String>, g: RotationElement<F>) -> Option<RotationElement<F>> {
        self.map.insert(node.into(), g)
    }

    pub fn get(&self, node: &str) -> Option<&RotationElement<F>> {
        self.map.get(node)
    }

    pub fn require(&self, node: &str) -> Result<&RotationElement<F>, ConditionError> {
        self.get(node).ok_or_else(|| ConditionError::Undecorated(node.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &RotationElement<F>)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Decorated on every node of `d`.
    pub fn is_total(&self, d: &SingularLinkDiagram) -> bool {
        d.nodes().iter().all(|n| self.map.contains_key(&n.id))
    }

    /// Every element replaced by `c · g · c⁻¹`.
    pub fn conjugated_by(&self, c: &RotationElement<F>) -> Self {
        Self { map: self.map.iter().map(|(k, g)| (k.clone(), c.conjugate(g))).collect() }
    }
}

impl<F: ExactField, S: Into<String>> FromIterator<(S, RotationElement<F>)> for Decoration<F> {
    fn from_iter<T: IntoIterator<Item = (S, RotationElement<F>)>>(iter: T) -> Self {
        Self { map: iter.into_iter().map(|(k, v)| (k.into(), v)).collect() }
    }
}

/// `C(A)`: the decorations of the crossed discs raised to the crossing signs,
/// multiplied in word order.
pub fn holonomy_word<F: ExactField>(
    arc: &ArcBand,
    dec: &Decoration<F>,
) -> Result<RotationElement<F>, ConditionError> {
    arc.word.iter().try_fold(RotationElement::identity(), |acc, c| {
        let g = dec.require(&c.circle.node)?;
        Ok(acc.compose(&g.pow(c.sign.exponent() as i64)))
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckVerdict {
    pub passed: bool,
    /// One entry per failing arc or Hopf node.
    pub diagnostics: Vec<String>,
    /// Measurements that do not affect the verdict.
    pub info: Vec<String>,
}

impl CheckVerdict {
    fn from_diagnostics(diagnostics: Vec<String>, info: Vec<String>) -> Self {
        Self { passed: diagnostics.is_empty(), diagnostics, info }
    }

    fn failed(reason: String) -> Self {
        Self { passed: false, diagnostics: vec![reason], info: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub genus0: CheckVerdict,
    pub selfint: CheckVerdict,
    pub relators: CheckVerdict,
    pub sw: CheckVerdict,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.genus0.passed && self.selfint.passed && self.relators.passed && self.sw.passed
    }
}

pub fn check_relators<F: ExactField>(
    d: &SingularLinkDiagram,
    dec: &Decoration<F>,
) -> Result<CheckVerdict, ConditionError> {
    d.resolve()?;
    let mut diagnostics = Vec::new();
    for arc in d.arcs() {
        let g = dec.require(&arc.start.circle.node)?;
        let h = dec.require(&arc.end.circle.node)?;
        let c = holonomy_word(arc, dec)?;
        let expected = c.conjugate(g);
        if &expected != h {
            diagnostics.push(format!(
                "arc {}: end {} is decorated {h} but C(A)·g·C(A)⁻¹ = {expected}",
                arc.id, arc.end.circle
            ));
        }
    }
    Ok(CheckVerdict::from_diagnostics(diagnostics, Vec::new()))
}

pub fn check_selfint(d: &SingularLinkDiagram) -> Result<CheckVerdict, ConditionError> {
    let r = d.resolve()?;
    let partition = r.components();
    let diagnostics = r
        .split_hopf_nodes(&partition)
        .into_iter()
        .map(|node| {
            let id = &d.nodes()[node].id;
            format!("Hopf node {id}: members {id}.a and {id}.b lie in different components")
        })
        .collect();
    Ok(CheckVerdict::from_diagnostics(diagnostics, Vec::new()))
}

pub fn check_genus0(d: &SingularLinkDiagram) -> Result<CheckVerdict, ConditionError> {
    let genera = ribbon_genus(d)?;
    let partition = d.components()?;
    let mut diagnostics = Vec::new();
    for g in genera.iter().filter(|g| g.genus > 0) {
        let circles: Vec<String> = partition.blocks[g.component].iter().map(|c| c.to_string()).collect();
        diagnostics.push(format!(
            "component {{{}}} has genus {} (V={}, E={}, F={})",
            circles.join(", "),
            g.genus,
            g.vertices,
            g.edges,
            g.faces
        ));
    }
    let genus0 = diagnostics.is_empty();
    let cross = cyclic_order_crosscheck(d)?;
    let mut info = Vec::new();
    for (name, reading) in [("single-arc", &cross.single_arc), ("composite-path", &cross.composite_path)] {
        let verdict = if reading.passes() { "pass" } else { "fail" };
        let truncated = if reading.truncated { ", truncated" } else { "" };
        info.push(format!(
            "cyclic-order cross-check ({name} reading): {verdict} on {} triples{truncated}",
            reading.triples_checked
        ));
        if reading.passes() != genus0 {
            info.push(format!("cyclic-order cross-check ({name} reading) disagrees with ribbon genus"));
        }
        info.extend(reading.violations.iter().map(|v| format!("{name}: {v}")));
    }
    Ok(CheckVerdict::from_diagnostics(diagnostics, info))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SwPathMode {
    /// Breadth-first shortest path, ties broken by arc declaration order.
    #[default]
    Shortest,
    /// Every simple path, up to [`MAX_SW_PATHS`].
    AllSimple,
}

pub const MAX_SW_PATHS: usize = 256;

/// A path of arcs between two circles; `true` marks traversal from start to
/// end.
pub type ArcPath = Vec<(usize, bool)>;

fn circle_adjacency(r: &Resolved) -> Vec<Vec<(usize, bool, usize)>> {
    let mut adjacency = vec![Vec::new(); r.circles.len()];
    for (k, a) in r.arcs.iter().enumerate() {
        if a.start != a.end {
            adjacency[a.start].push((k, true, a.end));
            adjacency[a.end].push((k, false, a.start));
        }
    }
    adjacency
}

pub fn shortest_arc_path(r: &Resolved, from: usize, to: usize) -> Option<ArcPath> {
    let adjacency = circle_adjacency(r);
    let mut parent: Vec<Option<(usize, bool, usize)>> = vec![None; r.circles.len()];
    let mut seen = vec![false; r.circles.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        if c == to {
            let mut path = Vec::new();
            let mut at = to;
            while let Some((k, forward, prev)) = parent[at] {
                path.push((k, forward));
                at = prev;
            }
            path.reverse();
            return Some(path);
        }
        for &(k, forward, next) in &adjacency[c] {
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((k, forward, c));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Simple paths in depth-first order; the flag reports truncation at `limit`.
pub fn simple_arc_paths(r: &Resolved, from: usize, to: usize, limit: usize) -> (Vec<ArcPath>, bool) {
    fn extend(
        adjacency: &[Vec<(usize, bool, usize)>],
        at: usize,
        to: usize,
        on_path: &mut [bool],
        path: &mut ArcPath,
        out: &mut Vec<ArcPath>,
        limit: usize,
    ) -> bool {
        for &(k, forward, next) in &adjacency[at] {
            if on_path[next] {
                continue;
            }
            path.push((k, forward));
            if next == to {
                if out.len() == limit {
                    return true;
                }
                out.push(path.clone());
            } else {
                on_path[next] = true;
                let truncated = extend(adjacency, next, to, on_path, path, out, limit);
                on_path[next] = false;
                if truncated {
                    return true;
                }
            }
            path.pop();
        }
        false
    }
    let adjacency = circle_adjacency(r);
    let mut on_path = vec![false; r.circles.len()];
    on_path[from] = true;
    let mut out = Vec::new();
    let truncated = extend(&adjacency, from, to, &mut on_path, &mut Vec::new(), &mut out, limit);
    (out, truncated)
}

/// `P = H_m ··· H_1` with `H_i = C(A_i)` or its inverse for arcs traversed
/// backwards, so that the decoration at the far end is `P · x · P⁻¹`.
pub fn path_product<F: ExactField>(
    d: &SingularLinkDiagram,
    path: &[(usize, bool)],
    dec: &Decoration<F>,
) -> Result<RotationElement<F>, ConditionError> {
    path.iter().try_fold(RotationElement::identity(), |p, &(k, forward)| {
        let c = holonomy_word(&d.arcs()[k], dec)?;
        let h = if forward { c } else { c.inverse() };
        Ok(h.compose(&p))
    })
}

fn describe_path(d: &SingularLinkDiagram, path: &[(usize, bool)]) -> String {
    path.iter()
        .map(|&(k, forward)| {
            let id = &d.arcs()[k].id;
            if forward {
                id.clone()
            } else {
                format!("{id}⁻¹")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

struct PathOutcome<F> {
    product: RotationElement<F>,
    passes: bool,
}

fn evaluate_sw_path<F: ExactField>(
    d: &SingularLinkDiagram,
    id: &str,
    g: &RotationElement<F>,
    path: &[(usize, bool)],
    dec: &Decoration<F>,
    diagnostics: &mut Vec<String>,
    info: &mut Vec<String>,
) -> Result<PathOutcome<F>, ConditionError> {
    let p = path_product(d, path, dec)?;
    let route = describe_path(d, path);
    let passes = !p.is_identity() && &p != g;
    if !passes {
        let what = if p.is_identity() { "the identity" } else { "equal to g" };
        diagnostics.push(format!("Hopf node {id}: path product along [{route}] is {what}"));
    }
    if p.compose(g) != g.compose(&p) {
        info.push(format!(
            "Hopf node {id}: internal inconsistency, path product {p} along [{route}] does not commute with g"
        ));
    } else if passes {
        let perpendicular = p.is_involution()
            && p.axis_of_involution()
                .ok()
                .zip(g.axis_of_involution().ok())
                .is_some_and(|(u, v)| u.is_perpendicular(&v));
        if !perpendicular {
            info.push(format!(
                "Hopf node {id}: path product {p} along [{route}] is not a half turn about an axis perpendicular to g's"
            ));
        }
    }
    Ok(PathOutcome { product: p, passes })
}

pub fn check_sw<F: ExactField>(
    d: &SingularLinkDiagram,
    dec: &Decoration<F>,
    mode: SwPathMode,
) -> Result<CheckVerdict, ConditionError> {
    let r = d.resolve()?;
    let mut diagnostics = Vec::new();
    let mut info = Vec::new();
    for &(node, a, b) in &r.hopf_members {
        let id = &d.nodes()[node].id;
        let g = dec.require(id)?;
        if !g.is_involution() {
            diagnostics.push(format!("Hopf node {id}: decoration {g} is not a rotation by pi"));
            continue;
        }
        match mode {
            SwPathMode::Shortest => {
                let path = shortest_arc_path(&r, a, b).ok_or_else(|| ConditionError::NoPath(id.clone()))?;
                evaluate_sw_path(d, id, g, &path, dec, &mut diagnostics, &mut info)?;
            }
            SwPathMode::AllSimple => {
                let (paths, truncated) = simple_arc_paths(&r, a, b, MAX_SW_PATHS);
                if paths.is_empty() {
                    return Err(ConditionError::NoPath(id.clone()));
                }
                if truncated {
                    info.push(format!(
                        "Hopf node {id}: only the first {MAX_SW_PATHS} simple paths were checked"
                    ));
                }
                let mut outcomes = Vec::new();
                for path in &paths {
                    outcomes.push(evaluate_sw_path(d, id, g, path, dec, &mut diagnostics, &mut info)?);
                }
                let passing = outcomes.iter().filter(|o| o.passes).count();
                if passing != 0 && passing != outcomes.len() {
                    diagnostics.push(format!(
                        "Hopf node {id}: path-dependent verdict, {passing} of {} simple paths pass",
                        outcomes.len()
                    ));
                }
                let distinct: std::collections::HashSet<_> = outcomes.iter().map(|o| &o.product).collect();
                info.push(format!(
                    "Hopf node {id}: {} simple paths, {} distinct path products",
                    outcomes.len(),
                    distinct.len()
                ));
            }
        }
    }
    Ok(CheckVerdict::from_diagnostics(diagnostics, info))
}

/// All four checks. Structural failures (odd twists, split Hopf pairs) fail
/// the affected verdicts instead of aborting; undecorated nodes and
/// malformed diagrams are errors.
pub fn check_all<F: ExactField>(
    d: &SingularLinkDiagram,
    dec: &Decoration<F>,
    mode: SwPathMode,
) -> Result<ConditionReport, ConditionError> {
    d.resolve()?;
    let genus0 = match check_genus0(d) {
        Ok(v) => v,
        Err(ConditionError::Diagram(e @ DiagramError::NonOrientableBand(_))) => {
            CheckVerdict::failed(e.to_string())
        }
        Err(e) => return Err(e),
    };
    let selfint = check_selfint(d)?;
    let relators = check_relators(d, dec)?;
    let sw = if selfint.passed {
        check_sw(d, dec, mode)?
    } else {
        CheckVerdict::failed("not evaluated: a Hopf pair spans two components".into())
    };
    Ok(ConditionReport { genus0, selfint, relators, sw })
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.passed { "pass" } else { "fail" })?;
        for d in &self.diagnostics {
            write!(f, "; {d}")?;
        }
        Ok(())
    }
}
