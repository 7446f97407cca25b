//! Presentation of the link-complement group: one generator per node, one
//! relator per arc.

use std::fmt;

use serde::Serialize;

use crate::conditions::{ConditionError, Decoration};
use crate::diagram::{DiagramError, SingularLinkDiagram};
use crate::rotation::RotationElement;
use crate::scalar::ExactField;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relator {
    pub arc: String,
    /// `(generator index, ±1)` read left to right.
    pub word: Vec<(usize, i8)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
}

/// For an arc from `x_start` to `x_end` with crossing word `W`, the relator
/// is `x_end⁻¹ · W · x_start · W⁻¹`.
pub fn extract_presentation(d: &SingularLinkDiagram) -> Result<GroupPresentation, DiagramError> {
    let r = d.resolve()?;
    let relators = d
        .arcs()
        .iter()
        .zip(&r.arcs)
        .map(|(arc, ra)| {
            let w = &ra.word;
            let mut word = Vec::with_capacity(2 * w.len() + 2);
            word.push((r.node_of_circle[ra.end], -1));
            word.extend(w.iter().copied());
            word.push((r.node_of_circle[ra.start], 1));
            word.extend(w.iter().rev().map(|&(g, e)| (g, -e)));
            Relator { arc: arc.id.clone(), word }
        })
        .collect();
    Ok(GroupPresentation { generators: d.nodes().iter().map(|n| n.id.clone()).collect(), relators })
}

impl GroupPresentation {
    pub fn evaluate<F: ExactField>(
        &self,
        relator: &Relator,
        images: &[&RotationElement<F>],
    ) -> RotationElement<F> {
        relator
            .word
            .iter()
            .fold(RotationElement::identity(), |acc, &(g, e)| acc.compose(&images[g].pow(e as i64)))
    }

    fn images<'a, F: ExactField>(
        &self,
        dec: &'a Decoration<F>,
    ) -> Result<Vec<&'a RotationElement<F>>, ConditionError> {
        self.generators.iter().map(|g| dec.require(g)).collect()
    }

    /// Arcs whose relator does not evaluate to the identity.
    pub fn failing_relators<F: ExactField>(&self, dec: &Decoration<F>) -> Result<Vec<&str>, ConditionError> {
        let images = self.images(dec)?;
        Ok(self
            .relators
            .iter()
            .filter(|r| !self.evaluate(r, &images).is_identity())
            .map(|r| r.arc.as_str())
            .collect())
    }

    pub fn format_relator(&self, relator: &Relator) -> String {
        relator
            .word
            .iter()
            .map(
                |&(g, e)| {
                    if e < 0 {
                        format!("{}^-1", self.generators[g])
                    } else {
                        self.generators[g].clone()
                    }
                },
            )
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// True iff every relator evaluates to the identity.
pub fn evaluate_representation<F: ExactField>(
    p: &GroupPresentation,
    dec: &Decoration<F>,
) -> Result<bool, ConditionError> {
    Ok(p.failing_relators(dec)?.is_empty())
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generators.join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_relator(r)).collect();
        write!(f, "{} >", rels.join(", "))
    }
}
