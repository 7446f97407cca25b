mod common;

use common::{random_decoration, random_diagram, repaired_decoration, rotate_slots, DiagramShape};
use flatrep::conditions::{check_relators, check_selfint, check_sw, holonomy_word, SwPathMode};
use flatrep::diagram::{ArcBand, SingularLinkDiagram};
use flatrep::group::GroupName;
use flatrep::perm::{perm_to_rotation, CubePermutation};
use flatrep::presentation::{evaluate_representation, extract_presentation};
use flatrep::ribbon::ribbon_genus;
use flatrep::search::{canonical_class, enumerate_valid_decorations};
use flatrep::sld::SldDocument;
use flatrep::{Decoration, Group, Rotation, SearchOptions};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn total_genus(d: &SingularLinkDiagram) -> usize {
    ribbon_genus(d).unwrap().iter().map(|g| g.genus).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn components_ignore_arc_order(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, &DiagramShape::default());
        let p = d.components().unwrap();
        prop_assert_eq!(&d.components().unwrap(), &p);
        let mut shuffled = d.clone();
        shuffled.arcs_mut().shuffle(&mut rng);
        prop_assert_eq!(shuffled.components().unwrap(), p);
    }

    #[test]
    fn genus_ignores_cyclic_slot_relabelling(seed in any::<u64>(), shift in 0usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, &DiagramShape::default());
        let before: Vec<usize> = ribbon_genus(&d).unwrap().iter().map(|g| g.genus).collect();
        let after: Vec<usize> = ribbon_genus(&rotate_slots(&d, shift)).unwrap().iter().map(|g| g.genus).collect();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn bridging_arc_never_adds_genus(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, &DiagramShape { max_circles: 5, ..DiagramShape::default() });
        let p = d.components().unwrap();
        prop_assume!(p.len() >= 2);
        let (a, b) = (p.blocks[0][0].clone(), p.blocks[1][0].clone());
        let mut e = d.clone();
        e.add_arc(ArcBand::new("bridge", (a, -1000), (b, 1000)));
        prop_assert!(total_genus(&e) <= total_genus(&d));
    }

    #[test]
    fn reversed_arc_inverts_holonomy(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = Group::octahedral();
        let d = random_diagram(&mut rng, &DiagramShape::default());
        let dec = random_decoration(&mut rng, &d, &g);
        for arc in d.arcs() {
            prop_assert_eq!(
                holonomy_word(&arc.reversed(), &dec).unwrap(),
                holonomy_word(arc, &dec).unwrap().inverse()
            );
        }
    }

    #[test]
    fn checks_are_conjugation_invariant(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = Group::octahedral();
        let d = random_diagram(&mut rng, &DiagramShape::default());
        let dec = repaired_decoration(&d, random_decoration(&mut rng, &d, &g));
        let c = g.elements().choose(&mut rng).unwrap();
        let moved = dec.conjugated_by(c);
        prop_assert_eq!(
            check_relators(&d, &dec).unwrap().passed,
            check_relators(&d, &moved).unwrap().passed
        );
        if check_selfint(&d).unwrap().passed {
            prop_assert_eq!(
                check_sw(&d, &dec, SwPathMode::Shortest).unwrap().passed,
                check_sw(&d, &moved, SwPathMode::Shortest).unwrap().passed
            );
        }
    }

    #[test]
    fn class_key_is_conjugation_invariant(idx in prop::collection::vec(0usize..9, 1..5), c in 0usize..24) {
        let g = Group::octahedral();
        let inv: Vec<&Rotation> = g.involutions().collect();
        let tuple: Vec<Rotation> = idx.iter().map(|&i| inv[i].clone()).collect();
        let conj = &g.elements()[c];
        let moved: Vec<Rotation> = tuple.iter().map(|t| conj.conjugate(t)).collect();
        prop_assert_eq!(canonical_class(&tuple).unwrap(), canonical_class(&moved).unwrap());
    }

    #[test]
    fn sld_round_trip_on_random_diagrams(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = Group::octahedral();
        let d = random_diagram(&mut rng, &DiagramShape::default());
        let dec = random_decoration(&mut rng, &d, &g);
        let doc = SldDocument::from_parts(Some(GroupName::Octahedral), &d, Some(&dec));
        let text = doc.serialize();
        let back = SldDocument::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.serialize(), text);
        prop_assert_eq!(back.to_diagram(), d);
        prop_assert_eq!(back.decoration(), dec);
    }
}

#[test]
fn presentation_oracle_on_random_diagrams() {
    let g = Group::octahedral();
    let mut rng = StdRng::seed_from_u64(7);
    let (mut pass, mut fail) = (0, 0);
    for _ in 0..300 {
        let d = random_diagram(&mut rng, &DiagramShape::default());
        let dec = random_decoration(&mut rng, &d, &g);
        let dec = if rand::Rng::gen_bool(&mut rng, 0.5) { repaired_decoration(&d, dec) } else { dec };
        let direct = check_relators(&d, &dec).unwrap().passed;
        let symbolic = evaluate_representation(&extract_presentation(&d).unwrap(), &dec).unwrap();
        assert_eq!(direct, symbolic);
        if direct {
            pass += 1
        } else {
            fail += 1
        }
    }
    assert!(pass > 20 && fail > 20, "{pass} passing, {fail} failing");
}

#[test]
fn homomorphism_on_all_pairs() {
    let all = CubePermutation::all();
    for p in &all {
        for q in &all {
            let lhs: Rotation = perm_to_rotation(&p.compose(q));
            let rhs = perm_to_rotation::<flatrep::QSqrt5>(p).compose(&perm_to_rotation(q));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn conjugation_moves_axes() {
    let g = Group::octahedral();
    for c in g.elements() {
        for h in g.elements() {
            let k = c.conjugate(h);
            assert_eq!(k.is_involution(), h.is_involution());
            if h.is_involution() {
                let moved = flatrep::Axis::new(c.apply(h.axis_of_involution().unwrap().direction())).unwrap();
                assert_eq!(k.axis_of_involution().unwrap(), moved);
            }
        }
    }
}

/// Exhaustive check of the search against direct evaluation on small
/// random diagrams.
#[test]
fn search_matches_brute_force() {
    let g = Group::tetrahedral();
    let opts = SearchOptions::new(g.clone());
    let mut rng = StdRng::seed_from_u64(11);
    let shape = DiagramShape { max_circles: 2, max_hopfs: 1, max_arcs: 3, max_word: 2 };
    let mut checked = 0;
    let mut nonempty = 0;
    while checked < 25 {
        let d = random_diagram(&mut rng, &shape);
        let Ok(found) = enumerate_valid_decorations(&d, &opts) else {
            continue;
        };
        checked += 1;
        let ids: Vec<String> = d.nodes().iter().map(|n| n.id.clone()).collect();
        let mut expected = Vec::new();
        let mut assignment = vec![0usize; ids.len()];
        loop {
            let dec: Decoration =
                ids.iter().zip(&assignment).map(|(id, &i)| (id.clone(), g.elements()[i].clone())).collect();
            if check_relators(&d, &dec).unwrap().passed
                && check_sw(&d, &dec, SwPathMode::Shortest).unwrap().passed
            {
                expected.push(dec);
            }
            let Some(pos) = assignment.iter().position(|&i| i + 1 < g.len()) else {
                break;
            };
            assignment[pos] += 1;
            assignment[..pos].iter_mut().for_each(|i| *i = 0);
        }
        let mut found_sorted = found.clone();
        found_sorted.sort();
        expected.sort();
        assert_eq!(found_sorted, expected);
        if !found.is_empty() {
            nonempty += 1;
        }
    }
    assert!(nonempty > 0);
}
