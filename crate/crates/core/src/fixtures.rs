//! The reference diagram REF-1: four Hopf pairs and one simple circle whose
//! arc graph is a tree, with its octahedral reference decoration.

use crate::conditions::Decoration;
use crate::diagram::{ArcBand, CircleRef, Sign, SingularLinkDiagram};
use crate::perm::rot;
use crate::QSqrt5;

fn c(s: &str) -> CircleRef {
    s.parse().expect("fixture references are well-formed")
}

fn arc(id: &str, from: (&str, i64), to: (&str, i64), word: &[&str]) -> ArcBand {
    ArcBand::new(id, (c(from.0), from.1), (c(to.0), to.1)).with_word(word.iter().map(|r| (c(r), Sign::Plus)))
}

pub fn ref1_diagram() -> SingularLinkDiagram {
    let mut d = SingularLinkDiagram::new();
    d.add_hopf("TL").add_hopf("TR").add_hopf("BL").add_hopf("BR").add_circle("Y");
    d.add_arc(arc("A1", ("TL.a", 0), ("TL.b", 0), &["BL.a"]))
        .add_arc(arc("A2", ("TR.a", 0), ("TR.b", 0), &["BR.a"]))
        .add_arc(arc("A3", ("BL.a", 0), ("BL.b", 0), &["TL.a"]))
        .add_arc(arc("A4", ("BR.a", 0), ("BR.b", 0), &["TR.a"]))
        .add_arc(arc("A5", ("TL.a", 1), ("BL.a", 1), &["TR.a", "BR.a"]))
        .add_arc(arc("A6", ("TR.a", 1), ("BR.a", 1), &["TL.a", "BL.a"]))
        .add_arc(arc("A7", ("TL.b", 1), ("Y", 0), &["TL.a", "Y"]))
        .add_arc(arc("A8", ("BL.b", 1), ("TR.a", 2), &["BL.a", "TR.a"]));
    d
}

pub fn ref1_decoration() -> Decoration<QSqrt5> {
    [("TL", "(12)"), ("TR", "(14)"), ("BL", "(34)"), ("BR", "(23)"), ("Y", "(24)")]
        .into_iter()
        .map(|(id, p)| (id, rot(p)))
        .collect()
}
