#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use flatrep::conditions::holonomy_word;
use flatrep::diagram::{ArcBand, CircleRef, Sign, SingularLinkDiagram};
use flatrep::{Decoration, Group, Rotation};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .expect("fixture directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "sld"))
        .collect();
    files.sort();
    files
}

pub struct DiagramShape {
    pub max_circles: usize,
    pub max_hopfs: usize,
    pub max_arcs: usize,
    pub max_word: usize,
}

impl Default for DiagramShape {
    fn default() -> Self {
        Self { max_circles: 4, max_hopfs: 2, max_arcs: 6, max_word: 3 }
    }
}

/// A well-formed diagram with random nodes, arcs, words and distinct slots.
pub fn random_diagram(rng: &mut StdRng, shape: &DiagramShape) -> SingularLinkDiagram {
    let mut d = SingularLinkDiagram::new();
    let circles = rng.gen_range(1..=shape.max_circles);
    let hopfs = rng.gen_range(0..=shape.max_hopfs);
    for i in 0..circles {
        d.add_circle(format!("c{i}"));
    }
    for i in 0..hopfs {
        d.add_hopf(format!("h{i}"));
    }
    let refs = d.circles();
    let mut next_slot: BTreeMap<CircleRef, i64> = BTreeMap::new();
    let mut slot = |rng: &mut StdRng, c: &CircleRef| {
        let s = next_slot.entry(c.clone()).or_insert(0);
        *s += rng.gen_range(1..4);
        *s
    };
    for k in 0..rng.gen_range(0..=shape.max_arcs) {
        let a = refs.choose(rng).unwrap().clone();
        let b = refs.choose(rng).unwrap().clone();
        let (sa, sb) = (slot(rng, &a), slot(rng, &b));
        let word: Vec<(CircleRef, Sign)> = (0..rng.gen_range(0..=shape.max_word))
            .map(|_| {
                let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                (refs.choose(rng).unwrap().clone(), sign)
            })
            .collect();
        d.add_arc(
            ArcBand::new(format!("a{k}"), (a, sa), (b, sb))
                .with_word(word)
                .with_twist(2 * rng.gen_range(-1..=1)),
        );
    }
    shuffle_slots(rng, &mut d);
    d
}

/// Replaces slot numbers by a random order-preserving relabelling per circle.
fn shuffle_slots(rng: &mut StdRng, d: &mut SingularLinkDiagram) {
    for arc in d.arcs_mut() {
        arc.start.slot = arc.start.slot * 5 + rng.gen_range(0..5);
        arc.end.slot = arc.end.slot * 5 + rng.gen_range(0..5);
    }
}

/// Uniform random elements; Hopf nodes get involutions.
pub fn random_decoration(rng: &mut StdRng, d: &SingularLinkDiagram, group: &Group) -> Decoration {
    let involutions: Vec<&Rotation> = group.involutions().collect();
    d.nodes()
        .iter()
        .map(|n| {
            let g = if d.hopf_ids().contains(&n.id.as_str()) {
                (*involutions.choose(rng).unwrap()).clone()
            } else {
                group.elements().choose(rng).unwrap().clone()
            };
            (n.id.clone(), g)
        })
        .collect()
}

/// Overwrites end decorations along arcs so that many relators hold.
pub fn repaired_decoration(d: &SingularLinkDiagram, mut dec: Decoration) -> Decoration {
    let mut fixed = std::collections::HashSet::new();
    for arc in d.arcs() {
        let end = &arc.end.circle.node;
        let start = &arc.start.circle.node;
        if end == start || fixed.contains(end) || arc.word.iter().any(|c| &c.circle.node == end) {
            continue;
        }
        let c = holonomy_word(arc, &dec).unwrap();
        let g = c.conjugate(dec.get(start).unwrap());
        dec.insert(end.clone(), g);
        fixed.insert(end.clone());
        fixed.insert(start.clone());
    }
    dec
}

/// Relabels the slots of every circle cyclically: the `shift`-th smallest
/// slot becomes the smallest.
pub fn rotate_slots(d: &SingularLinkDiagram, shift: usize) -> SingularLinkDiagram {
    let mut per_circle: BTreeMap<CircleRef, Vec<i64>> = BTreeMap::new();
    for a in d.arcs() {
        per_circle.entry(a.start.circle.clone()).or_default().push(a.start.slot);
        per_circle.entry(a.end.circle.clone()).or_default().push(a.end.slot);
    }
    let mut relabel: BTreeMap<(CircleRef, i64), i64> = BTreeMap::new();
    for (c, mut slots) in per_circle {
        slots.sort();
        let n = slots.len();
        for (i, s) in slots.iter().enumerate() {
            relabel.insert((c.clone(), *s), ((i + n - shift % n) % n) as i64 * 10);
        }
    }
    let mut out = d.clone();
    for a in out.arcs_mut() {
        a.start.slot = relabel[&(a.start.circle.clone(), a.start.slot)];
        a.end.slot = relabel[&(a.end.circle.clone(), a.end.slot)];
    }
    out
}
