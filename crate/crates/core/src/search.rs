//! Backtracking enumeration of valid decorations over a finite rotation group
//! and counting of solutions up to conjugacy.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axis::{is_coplanar, AxisLine};
use crate::conditions::{
    check_genus0, check_selfint, shortest_arc_path, simple_arc_paths, ArcPath, ConditionError, Decoration,
    SwPathMode, MAX_SW_PATHS,
};
use crate::diagram::{DiagramError, SingularLinkDiagram};
use crate::group::{CayleyTable, FiniteRotationGroup};
use crate::linalg::Matrix3;
use crate::rotation::RotationElement;
use crate::scalar::ExactField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search precondition failed: {check}: {reason}")]
    Precondition { check: &'static str, reason: String },
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error("element {0} of the tuple is not a rotation by pi")]
    NotInvolution(usize),
    #[error("decoration of {0} lies outside the search group")]
    OutsideGroup(String),
    #[error("unknown dedup mode {0:?}")]
    UnknownDedup(String),
}

impl From<DiagramError> for SearchError {
    fn from(e: DiagramError) -> Self {
        SearchError::Condition(e.into())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dedup {
    None,
    GroupConjugacy,
    #[default]
    So3Canonical,
}

impl fmt::Display for Dedup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dedup::None => "none",
            Dedup::GroupConjugacy => "group_conjugacy",
            Dedup::So3Canonical => "so3_canonical",
        })
    }
}

impl FromStr for Dedup {
    type Err = SearchError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "none" => Ok(Dedup::None),
            "group_conjugacy" => Ok(Dedup::GroupConjugacy),
            "so3_canonical" => Ok(Dedup::So3Canonical),
            _ => Err(SearchError::UnknownDedup(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions<F> {
    pub group: FiniteRotationGroup<F>,
    pub involutions_only_on_hopfs: bool,
    pub sw_paths: SwPathMode,
    pub dedup: Dedup,
}

impl<F: ExactField> SearchOptions<F> {
    pub fn new(group: FiniteRotationGroup<F>) -> Self {
        Self {
            group,
            involutions_only_on_hopfs: true,
            sw_paths: SwPathMode::Shortest,
            dedup: Dedup::default(),
        }
    }
}

/// Solutions as element indices into the search group, one per node in
/// node order, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedSolutions {
    pub nodes: Vec<String>,
    pub assignments: Vec<Vec<usize>>,
}

impl IndexedSolutions {
    pub fn decorations<F: ExactField>(&self, group: &FiniteRotationGroup<F>) -> Vec<Decoration<F>> {
        self.assignments
            .iter()
            .map(|a| {
                self.nodes.iter().zip(a).map(|(n, &i)| (n.clone(), group.elements()[i].clone())).collect()
            })
            .collect()
    }
}

const UNASSIGNED: usize = usize::MAX;

struct ArcConstraint {
    start: usize,
    end: usize,
    word: Vec<(usize, i8)>,
    nodes: Vec<usize>,
}

struct Problem<'a> {
    table: &'a CayleyTable,
    domains: Vec<Vec<usize>>,
    allowed: Vec<Vec<bool>>,
    arcs: Vec<ArcConstraint>,
    arcs_of_node: Vec<Vec<usize>>,
    sw: Vec<(usize, Vec<ArcPath>)>,
}

impl Problem<'_> {
    fn holonomy(&self, arc: &ArcConstraint, assign: &[usize]) -> Option<usize> {
        arc.word.iter().try_fold(CayleyTable::IDENTITY, |acc, &(n, e)| {
            let x = assign[n];
            (x != UNASSIGNED).then(|| self.table.mul(acc, self.table.pow_sign(x, e)))
        })
    }

    /// Assigns every value forced by an arc whose word is known, and fails on
    /// any violated relator or out-of-domain forced value.
    fn propagate(&self, assign: &mut [usize]) -> bool {
        loop {
            let mut changed = false;
            for arc in &self.arcs {
                let Some(c) = self.holonomy(arc, assign) else {
                    continue;
                };
                let (s, e) = (assign[arc.start], assign[arc.end]);
                match (s != UNASSIGNED, e != UNASSIGNED) {
                    (true, true) => {
                        if self.table.conjugate(c, s) != e {
                            return false;
                        }
                    }
                    (true, false) => {
                        let v = self.table.conjugate(c, s);
                        if !self.allowed[arc.end][v] {
                            return false;
                        }
                        assign[arc.end] = v;
                        changed = true;
                    }
                    (false, true) => {
                        let v = self.table.conjugate(self.table.inv(c), e);
                        if !self.allowed[arc.start][v] {
                            return false;
                        }
                        assign[arc.start] = v;
                        changed = true;
                    }
                    (false, false) => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// The unassigned node whose assignment completes the most arcs up to
    /// a single unknown endpoint.
    fn next_variable(&self, assign: &[usize]) -> Option<usize> {
        (0..assign.len())
            .filter(|&n| assign[n] == UNASSIGNED)
            .map(|n| {
                let score = self.arcs_of_node[n]
                    .iter()
                    .filter(|&&k| {
                        let open = self.arcs[k].nodes.iter().filter(|&&m| assign[m] == UNASSIGNED).count();
                        open <= 2
                    })
                    .count();
                (score, std::cmp::Reverse(n))
            })
            .max()
            .map(|(_, std::cmp::Reverse(n))| n)
    }

    fn sw_holds(&self, assign: &[usize]) -> bool {
        self.sw.iter().all(|(node, paths)| {
            let g = assign[*node];
            self.table.is_involution(g)
                && paths.iter().all(|path| {
                    let p = path.iter().fold(CayleyTable::IDENTITY, |p, &(k, forward)| {
                        let c = self.holonomy(&self.arcs[k], assign).expect("total assignment");
                        let h = if forward { c } else { self.table.inv(c) };
                        self.table.mul(h, p)
                    });
                    p != CayleyTable::IDENTITY && p != g
                })
        })
    }

    fn solve(&self, assign: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(var) = self.next_variable(&assign) else {
            if self.sw_holds(&assign) {
                out.push(assign);
            }
            return;
        };
        for &v in &self.domains[var] {
            let mut next = assign.clone();
            next[var] = v;
            if self.propagate(&mut next) {
                self.solve(next, out);
            }
        }
    }
}

fn require_structure(d: &SingularLinkDiagram) -> Result<(), SearchError> {
    let selfint = check_selfint(d)?;
    if !selfint.passed {
        return Err(SearchError::Precondition { check: "selfint", reason: selfint.diagnostics.join("; ") });
    }
    match check_genus0(d) {
        Ok(v) if v.passed => Ok(()),
        Ok(v) => Err(SearchError::Precondition { check: "genus0", reason: v.diagnostics.join("; ") }),
        Err(ConditionError::Diagram(e @ DiagramError::NonOrientableBand(_))) => {
            Err(SearchError::Precondition { check: "genus0", reason: e.to_string() })
        }
        Err(e) => Err(e.into()),
    }
}

/// Every total decoration with values in `opts.group` that passes the
/// relator and Stiefel–Whitney checks, as group indices.
pub fn enumerate_indexed<F: ExactField>(
    d: &SingularLinkDiagram,
    opts: &SearchOptions<F>,
) -> Result<IndexedSolutions, SearchError> {
    let r = d.resolve()?;
    require_structure(d)?;
    let table = opts.group.cayley_table();
    let n = r.node_count;
    let hopf: HashSet<usize> = r.hopf_members.iter().map(|&(node, _, _)| node).collect();
    let domains: Vec<Vec<usize>> = (0..n)
        .map(|node| {
            (0..table.len())
                .filter(|&g| {
                    !(opts.involutions_only_on_hopfs && hopf.contains(&node)) || table.is_involution(g)
                })
                .collect()
        })
        .collect();
    let allowed = domains
        .iter()
        .map(|dom| {
            let mut mask = vec![false; table.len()];
            dom.iter().for_each(|&g| mask[g] = true);
            mask
        })
        .collect();
    let arcs: Vec<ArcConstraint> = r
        .arcs
        .iter()
        .map(|a| {
            let start = r.node_of_circle[a.start];
            let end = r.node_of_circle[a.end];
            let nodes: BTreeSet<usize> =
                [start, end].into_iter().chain(a.word.iter().map(|&(m, _)| m)).collect();
            ArcConstraint { start, end, word: a.word.clone(), nodes: nodes.into_iter().collect() }
        })
        .collect();
    let mut arcs_of_node = vec![Vec::new(); n];
    for (k, a) in arcs.iter().enumerate() {
        for &m in &a.nodes {
            arcs_of_node[m].push(k);
        }
    }
    let mut sw = Vec::new();
    for &(node, a, b) in &r.hopf_members {
        let id = &d.nodes()[node].id;
        let paths = match opts.sw_paths {
            SwPathMode::Shortest => shortest_arc_path(&r, a, b).into_iter().collect(),
            SwPathMode::AllSimple => simple_arc_paths(&r, a, b, MAX_SW_PATHS).0,
        };
        if paths.is_empty() {
            return Err(ConditionError::NoPath(id.clone()).into());
        }
        sw.push((node, paths));
    }
    let problem = Problem { table: &table, domains, allowed, arcs, arcs_of_node, sw };

    let empty = vec![UNASSIGNED; n];
    let mut assignments: Vec<Vec<usize>> = match problem.next_variable(&empty) {
        None => {
            if problem.sw_holds(&empty) {
                vec![empty]
            } else {
                Vec::new()
            }
        }
        Some(first) => problem.domains[first]
            .par_iter()
            .map(|&v| {
                let mut assign = empty.clone();
                assign[first] = v;
                let mut out = Vec::new();
                if problem.propagate(&mut assign) {
                    problem.solve(assign, &mut out);
                }
                out
            })
            .flatten()
            .collect(),
    };
    assignments.sort();
    Ok(IndexedSolutions { nodes: d.nodes().iter().map(|n| n.id.clone()).collect(), assignments })
}

pub fn enumerate_valid_decorations<F: ExactField>(
    d: &SingularLinkDiagram,
    opts: &SearchOptions<F>,
) -> Result<Vec<Decoration<F>>, SearchError> {
    Ok(enumerate_indexed(d, opts)?.decorations(&opts.group))
}

/// A complete invariant of an ordered tuple of unsigned lines under
/// rotation: signed squared cosines of all pairs and orientations of all
/// triples, minimised over independent sign choices of the axes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjugacyClassKey<F> {
    /// `(sign of uᵢ·uⱼ, (uᵢ·uⱼ)² / (|uᵢ|²|uⱼ|²))` for `i < j`.
    pub cosines: Vec<(i8, F)>,
    /// Sign of `det(uᵢ, uⱼ, uₖ)` for `i < j < k`.
    pub orientations: Vec<i8>,
}

impl<F: ExactField> fmt::Display for ConjugacyClassKey<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: i8| match s {
            1 => "+",
            -1 => "-",
            _ => "0",
        };
        let cos: Vec<String> = self
            .cosines
            .iter()
            .map(|(s, c)| match s {
                0 => "0".to_string(),
                _ => format!("{}{c}", sign(*s)),
            })
            .collect();
        let det: Vec<&str> = self.orientations.iter().map(|&s| sign(s)).collect();
        write!(f, "cos2[{}] det[{}]", cos.join(" "), det.join(""))
    }
}

pub fn canonical_class<F: ExactField>(
    tuple: &[RotationElement<F>],
) -> Result<ConjugacyClassKey<F>, SearchError> {
    let axes: Vec<AxisLine<F>> = tuple
        .iter()
        .enumerate()
        .map(|(i, g)| g.axis_of_involution().map_err(|_| SearchError::NotInvolution(i)))
        .collect::<Result<_, _>>()?;
    Ok(class_of_axes(&axes))
}

fn class_of_axes<F: ExactField>(axes: &[AxisLine<F>]) -> ConjugacyClassKey<F> {
    let k = axes.len();
    let norms: Vec<F> = axes.iter().map(|a| a.direction().norm_squared()).collect();
    let dots: Vec<Vec<F>> = axes.iter().map(|a| axes.iter().map(|b| a.dot(b)).collect()).collect();
    let cos2: Vec<Vec<F>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let d = dots[i][j].clone();
                    (d.clone() * d)
                        .checked_div(&(norms[i].clone() * norms[j].clone()))
                        .expect("axes are nonzero")
                })
                .collect()
        })
        .collect();
    let mut triples = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let m = Matrix3::from_rows([
                    axes[i].direction().to_array(),
                    axes[j].direction().to_array(),
                    axes[l].direction().to_array(),
                ]);
                triples.push(((i, j, l), m.det().signum_i8()));
            }
        }
    }
    (0u32..1 << k)
        .map(|flips| {
            let s = |i: usize| if flips >> i & 1 == 1 { -1i8 } else { 1 };
            let mut cosines = Vec::with_capacity(k * k.saturating_sub(1) / 2);
            for i in 0..k {
                for j in i + 1..k {
                    cosines.push((dots[i][j].signum_i8() * s(i) * s(j), cos2[i][j].clone()));
                }
            }
            let orientations = triples.iter().map(|&((i, j, l), sign)| sign * s(i) * s(j) * s(l)).collect();
            ConjugacyClassKey { cosines, orientations }
        })
        .min()
        .expect("at least one sign choice")
}

fn hopf_tuple<F: ExactField>(
    dec: &Decoration<F>,
    order: &[&str],
) -> Result<Vec<RotationElement<F>>, SearchError> {
    order.iter().map(|id| Ok(dec.require(id)?.clone())).collect()
}

/// Number of solution classes under `opts.dedup`: distinct decorations,
/// orbits under simultaneous conjugation by `opts.group`, or rotation
/// classes of the ordered Hopf tuple.
pub fn count_classes<F: ExactField>(
    solutions: &[Decoration<F>],
    hopf_order: &[&str],
    opts: &SearchOptions<F>,
) -> Result<usize, SearchError> {
    match opts.dedup {
        Dedup::None => Ok(solutions.iter().collect::<HashSet<_>>().len()),
        Dedup::GroupConjugacy => {
            let table = opts.group.cayley_table();
            let mut keys = HashSet::new();
            for dec in solutions {
                let indices: Vec<usize> = dec
                    .iter()
                    .map(|(id, g)| {
                        opts.group.index_of(g).ok_or_else(|| SearchError::OutsideGroup(id.to_string()))
                    })
                    .collect::<Result<_, _>>()?;
                let key = (0..table.len())
                    .map(|c| indices.iter().map(|&x| table.conjugate(c, x)).collect::<Vec<_>>())
                    .min()
                    .expect("group is nonempty");
                keys.insert(key);
            }
            Ok(keys.len())
        }
        Dedup::So3Canonical => {
            let mut keys = HashSet::new();
            for dec in solutions {
                keys.insert(canonical_class(&hopf_tuple(dec, hopf_order)?)?);
            }
            Ok(keys.len())
        }
    }
}

/// Hopf node names of the reference fixture in tuple order.
pub const ONEPOINT_ORDER: [&str; 4] = ["TL", "TR", "BL", "BR"];

/// The axis configuration forced on the four Hopf labels of the reference
/// fixture: `TL ⟂ BL`, `TR ⟂ BR`, and the common perpendicular of each
/// pair lies in the plane of the other pair at angle π/4 to both of its axes.
pub fn verify_onepoint_geometry<F: ExactField>(dec: &Decoration<F>) -> Result<bool, SearchError> {
    let tuple = hopf_tuple(dec, &ONEPOINT_ORDER)?;
    let axes: Vec<AxisLine<F>> = tuple
        .iter()
        .enumerate()
        .map(|(i, g)| g.axis_of_involution().map_err(|_| SearchError::NotInvolution(i)))
        .collect::<Result<_, _>>()?;
    let [tl, tr, bl, br] = [&axes[0], &axes[1], &axes[2], &axes[3]];
    if !tl.is_perpendicular(bl) || !tr.is_perpendicular(br) {
        return Ok(false);
    }
    let fits = |p: &AxisLine<F>, q: &AxisLine<F>, u: &AxisLine<F>, v: &AxisLine<F>| {
        let n = p.common_perpendicular(q).expect("perpendicular lines are distinct");
        is_coplanar(&n, u, v) && n.is_angle_pi_over_4(u) && n.is_angle_pi_over_4(v)
    };
    Ok(fits(tr, br, tl, bl) && fits(tl, bl, tr, br))
}
