//! Finite subgroups of SO(3): presets, closure, and Cayley tables.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix3;
use crate::perm::{perm_to_rotation, CubePermutation};
use crate::rotation::RotationElement;
use crate::scalar::ExactField;
use crate::QSqrt5;

/// Upper bound on closure size; every finite subgroup preset is far below it.
pub const MAX_GROUP_ORDER: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a finite subgroup preset size: closure exceeds {MAX_GROUP_ORDER} elements")]
    TooLarge,
    #[error("generator list is empty")]
    NoGenerators,
    #[error("unknown group {0:?}")]
    UnknownName(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupName {
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Custom,
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupName::Tetrahedral => "tetrahedral",
            GroupName::Octahedral => "octahedral",
            GroupName::Icosahedral => "icosahedral",
            GroupName::Custom => "custom",
        })
    }
}

impl std::str::FromStr for GroupName {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tetrahedral" => Ok(GroupName::Tetrahedral),
            "octahedral" => Ok(GroupName::Octahedral),
            "icosahedral" => Ok(GroupName::Icosahedral),
            _ => Err(GroupError::UnknownName(s.to_string())),
        }
    }
}

/// A finite rotation group with a fixed element order; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteRotationGroup<F> {
    name: GroupName,
    elements: Vec<RotationElement<F>>,
    index: HashMap<RotationElement<F>, usize>,
}

impl<F: ExactField> FiniteRotationGroup<F> {
    fn from_elements(name: GroupName, elements: Vec<RotationElement<F>>) -> Self {
        let index = elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        Self { name, elements, index }
    }

    /// The cube group, elements in lexicographic order of the permutations
    /// of the diagonals.
    pub fn octahedral() -> Self {
        let elements = CubePermutation::all().iter().map(perm_to_rotation).collect();
        Self::from_elements(GroupName::Octahedral, elements)
    }

    /// Even permutations of the diagonals.
    pub fn tetrahedral() -> Self {
        let elements = CubePermutation::all().iter().filter(|p| p.is_even()).map(perm_to_rotation).collect();
        Self::from_elements(GroupName::Tetrahedral, elements)
    }

    pub fn name(&self) -> GroupName {
        self.name
    }

    pub fn elements(&self) -> &[RotationElement<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &RotationElement<F>) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &RotationElement<F>) -> bool {
        self.index.contains_key(g)
    }

    pub fn involutions(&self) -> impl Iterator<Item = &RotationElement<F>> {
        self.elements.iter().filter(|g| g.is_involution())
    }

    pub fn cayley_table(&self) -> CayleyTable {
        let n = self.len();
        let mut mul = vec![0usize; n * n];
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                mul[i * n + j] = self.index[&a.compose(b)];
            }
        }
        let inv = self.elements.iter().map(|g| self.index[&g.inverse()]).collect();
        let involution = self.elements.iter().map(|g| g.is_involution()).collect();
        CayleyTable { n, mul, inv, involution }
    }
}

impl FiniteRotationGroup<QSqrt5> {
    /// The rotation group of the icosahedron, generated over Q(√5).
    pub fn icosahedral() -> Self {
        let mut g = generate_group(&icosahedral_generators()).expect("icosahedral closure is finite");
        g.name = GroupName::Icosahedral;
        g
    }

    pub fn preset(name: GroupName) -> Result<Self, GroupError> {
        match name {
            GroupName::Tetrahedral => Ok(Self::tetrahedral()),
            GroupName::Octahedral => Ok(Self::octahedral()),
            GroupName::Icosahedral => Ok(Self::icosahedral()),
            GroupName::Custom => Err(GroupError::UnknownName("custom".into())),
        }
    }
}

/// A five-fold rotation, the three-fold coordinate cycle and a half turn
/// about the x-axis.
pub fn icosahedral_generators() -> Vec<RotationElement<QSqrt5>> {
    let phi = QSqrt5::phi();
    let inv_phi = phi.clone() - QSqrt5::from(1);
    let half = QSqrt5::from_fractions(1, 2, 0, 1);
    let one = QSqrt5::from(1);
    let five_fold = Matrix3::from_rows([
        [one.clone(), -phi.clone(), inv_phi.clone()],
        [phi.clone(), inv_phi.clone(), -one.clone()],
        [inv_phi, one, phi],
    ])
    .scale(&half);
    [
        five_fold,
        Matrix3::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
        Matrix3::from_i64([[1, 0, 0], [0, -1, 0], [0, 0, -1]]),
    ]
    .into_iter()
    .map(|m| RotationElement::new(m).expect("generator is a rotation"))
    .collect()
}

/// Closure of `gens` under products, in breadth-first discovery order from the
/// identity (right multiplication by generators in the given order).
pub fn generate_group<F: ExactField>(
    gens: &[RotationElement<F>],
) -> Result<FiniteRotationGroup<F>, GroupError> {
    if gens.is_empty() {
        return Err(GroupError::NoGenerators);
    }
    let identity = RotationElement::identity();
    let mut elements = vec![identity.clone()];
    let mut seen: HashMap<RotationElement<F>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.contains_key(&y) {
                continue;
            }
            if elements.len() == MAX_GROUP_ORDER {
                return Err(GroupError::TooLarge);
            }
            seen.insert(y.clone(), elements.len());
            elements.push(y.clone());
            queue.push_back(y);
        }
    }
    Ok(FiniteRotationGroup { name: GroupName::Custom, elements, index: seen })
}

/// Integer multiplication table of a finite group: `mul(i, j)` is the index
/// of `elements[i] · elements[j]`.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    involution: Vec<bool>,
}

impl CayleyTable {
    pub const IDENTITY: usize = 0;

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    #[inline]
    pub fn pow_sign(&self, a: usize, sign: i8) -> usize {
        if sign < 0 {
            self.inv[a]
        } else {
            a
        }
    }

    pub fn conjugate(&self, c: usize, g: usize) -> usize {
        self.mul(self.mul(c, g), self.inv[c])
    }

    pub fn is_involution(&self, a: usize) -> bool {
        self.involution[a]
    }
}
