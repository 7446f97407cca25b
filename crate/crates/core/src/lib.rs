//! Exact SO(3) decorations of singular link diagrams and the surrounding
//! obstruction arithmetic.
//!
//! Everything is generic over an [`scalar::ExactField`]; the aliases below
//! fix the field to Q(√5), which carries every finite rotation group.

pub mod axis;
pub mod conditions;
pub mod diagram;
pub mod fixtures;
pub mod group;
pub mod linalg;
pub mod obstructions;
pub mod perm;
pub mod presentation;
pub mod qsqrt5;
pub mod ribbon;
pub mod rotation;
pub mod scalar;
pub mod search;
pub mod sld;

pub use qsqrt5::QSqrt5;

pub type Vector = linalg::Vector3<QSqrt5>;
pub type Matrix = linalg::Matrix3<QSqrt5>;
pub type Axis = axis::AxisLine<QSqrt5>;
pub type Rotation = rotation::RotationElement<QSqrt5>;
pub type Group = group::FiniteRotationGroup<QSqrt5>;
pub type Decoration = conditions::Decoration<QSqrt5>;
pub type SearchOptions = search::SearchOptions<QSqrt5>;
pub type ClassKey = search::ConjugacyClassKey<QSqrt5>;
