mod common;

use flatrep::conditions::{check_all, check_genus0, check_selfint, SwPathMode};
use flatrep::fixtures::{ref1_decoration, ref1_diagram};
use flatrep::perm::rot;
use flatrep::presentation::{evaluate_representation, extract_presentation};
use flatrep::ribbon::betti;
use flatrep::search::{
    count_classes, enumerate_indexed, enumerate_valid_decorations, verify_onepoint_geometry, Dedup,
    ONEPOINT_ORDER,
};
use flatrep::sld::SldDocument;
use flatrep::{Decoration, Group, Rotation, SearchOptions};

#[test]
fn structure() {
    let d = ref1_diagram();
    assert!(d.validate().is_wellformed());
    assert_eq!(d.components().unwrap().len(), 1);
    let b = betti(&d).unwrap();
    assert_eq!((b.b1, b.b2), (1, 4));
    assert!(check_selfint(&d).unwrap().passed);
    assert!(check_genus0(&d).unwrap().passed);
    let p = extract_presentation(&d).unwrap();
    assert_eq!((p.generators.len(), p.relators.len()), (5, 8));
}

#[test]
fn two_disjoint_copies_add_up() {
    let text = std::fs::read_to_string(common::fixture_dir().join("ref1.sld")).unwrap();
    let renamed = text
        .lines()
        .filter(|l| !l.starts_with("group"))
        .map(|l| {
            l.split(' ')
                .map(|tok| match tok.split_once(['.', ':']) {
                    _ if ["TL", "TR", "BL", "BR", "Y"].iter().any(|n| tok.starts_with(n)) => {
                        format!("X{tok}")
                    }
                    _ if tok.starts_with('A') && tok.len() == 2 => format!("X{tok}"),
                    _ => tok.to_string(),
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n");
    let doc = SldDocument::parse(&format!("{text}\n{renamed}")).unwrap();
    let b = betti(&doc.to_diagram()).unwrap();
    assert_eq!((b.b1, b.b2), (2, 8));
}

#[test]
fn reference_decoration_passes_every_check() {
    let d = ref1_diagram();
    let dec = ref1_decoration();
    for mode in [SwPathMode::Shortest, SwPathMode::AllSimple] {
        let report = check_all(&d, &dec, mode).unwrap();
        assert!(report.passed(), "{report:?}");
    }
    assert!(evaluate_representation(&extract_presentation(&d).unwrap(), &dec).unwrap());
    assert!(verify_onepoint_geometry(&dec).unwrap());
}

#[test]
fn fixture_file_matches_builder() {
    let text = std::fs::read_to_string(common::fixture_dir().join("ref1.sld")).unwrap();
    let doc = SldDocument::parse(&text).unwrap();
    assert_eq!(doc.to_diagram(), ref1_diagram());
    assert_eq!(doc.decoration(), ref1_decoration());
}

#[test]
fn geometry_rejects_parallel_pairs() {
    let mut dec = ref1_decoration();
    dec.insert("BL", rot("(12)"));
    assert!(!verify_onepoint_geometry(&dec).unwrap());
    for c in Group::octahedral().elements() {
        assert!(verify_onepoint_geometry(&ref1_decoration().conjugated_by(c)).unwrap());
    }
}

fn octahedral(dedup: Dedup) -> SearchOptions {
    let mut o = SearchOptions::new(Group::octahedral());
    o.dedup = dedup;
    o
}

#[test]
fn octahedral_search() {
    let d = ref1_diagram();
    let sols = enumerate_valid_decorations(&d, &octahedral(Dedup::So3Canonical)).unwrap();
    assert!(sols.contains(&ref1_decoration()));
    assert_eq!(sols.len(), 120);
    for s in &sols {
        assert!(check_all(&d, s, SwPathMode::Shortest).unwrap().passed());
        assert!(verify_onepoint_geometry(s).unwrap());
    }
    let count = |dedup| count_classes(&sols, &ONEPOINT_ORDER, &octahedral(dedup)).unwrap();
    assert_eq!(count(Dedup::So3Canonical), 1);
    assert_eq!(count(Dedup::GroupConjugacy), 5);
    assert_eq!(count(Dedup::None), 120);
}

#[test]
fn search_is_deterministic_and_sorted() {
    let d = ref1_diagram();
    let a = enumerate_indexed(&d, &octahedral(Dedup::None)).unwrap();
    let b = enumerate_indexed(&d, &octahedral(Dedup::None)).unwrap();
    assert_eq!(a, b);
    assert!(a.assignments.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn all_paths_mode_agrees_on_ref1() {
    let d = ref1_diagram();
    let mut opts = octahedral(Dedup::None);
    opts.sw_paths = SwPathMode::AllSimple;
    assert_eq!(enumerate_valid_decorations(&d, &opts).unwrap().len(), 120);
}

#[test]
fn unrestricted_hopf_labels_change_nothing() {
    let d = ref1_diagram();
    let mut opts = octahedral(Dedup::None);
    opts.involutions_only_on_hopfs = false;
    assert_eq!(enumerate_valid_decorations(&d, &opts).unwrap().len(), 120);
}

#[test]
fn icosahedral_search_is_empty() {
    // two-fold axes of the icosahedron meet at 36, 60, 72 or 90 degrees,
    // never at pi/4
    let d = ref1_diagram();
    let sols = enumerate_valid_decorations(&d, &SearchOptions::new(Group::icosahedral())).unwrap();
    assert!(sols.is_empty());
}

#[test]
fn tetrahedral_search_is_empty() {
    // the Klein subgroup has perpendicular axes but no element at angle pi/4
    let d = ref1_diagram();
    let sols = enumerate_valid_decorations(&d, &SearchOptions::new(Group::tetrahedral())).unwrap();
    assert!(sols.is_empty());
}

#[test]
fn conjugated_reference_is_a_solution() {
    let d = ref1_diagram();
    let c: Rotation = rot("(1234)");
    let moved: Decoration = ref1_decoration().conjugated_by(&c);
    assert!(check_all(&d, &moved, SwPathMode::Shortest).unwrap().passed());
}
