//! Exact elements of SO(3).
//!
//! Products follow the matrix convention: `g.compose(&h)` is the rotation
//! that applies `h` first and then `g`.

use std::fmt;

use thiserror::Error;

use crate::axis::AxisLine;
use crate::linalg::{Matrix3, Vector3};
use crate::scalar::{AlgebraError, ExactField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("matrix has determinant {0}, expected 1")]
    WrongDeterminant(String),
    #[error("element is not a rotation by pi")]
    NotInvolution,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A 3×3 matrix `m` with `mᵀm = I` and `det m = 1`, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationElement<F> {
    m: Matrix3<F>,
}

impl<F: ExactField> RotationElement<F> {
    pub fn new(m: Matrix3<F>) -> Result<Self, RotationError> {
        if &m.transpose() * &m != Matrix3::identity() {
            return Err(RotationError::NotOrthogonal);
        }
        let det = m.det();
        if det != F::one() {
            return Err(RotationError::WrongDeterminant(det.to_string()));
        }
        Ok(Self { m })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_matrix_unchecked(m: Matrix3<F>) -> Self {
        debug_assert!(&m.transpose() * &m == Matrix3::identity() && m.det() == F::one());
        Self { m }
    }

    pub fn identity() -> Self {
        Self { m: Matrix3::identity() }
    }

    pub fn matrix(&self) -> &Matrix3<F> {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m == Matrix3::identity()
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { m: &self.m * &other.m }
    }

    pub fn inverse(&self) -> Self {
        Self { m: self.m.transpose() }
    }

    /// `self · g · self⁻¹`.
    pub fn conjugate(&self, g: &Self) -> Self {
        self.compose(g).compose(&self.inverse())
    }

    /// `self^exp` for `exp = ±1`; any other exponent is a power.
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        (0..exp.unsigned_abs()).fold(Self::identity(), |acc, _| acc.compose(&base))
    }

    pub fn apply(&self, v: &Vector3<F>) -> Vector3<F> {
        self.m.mul_vec(v)
    }

    pub fn is_involution_by_square(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    pub fn is_involution_by_trace(&self) -> bool {
        self.m.trace() == -F::one()
    }

    /// True for rotations by π. Both characterisations are evaluated and
    /// must agree.
    pub fn is_involution(&self) -> bool {
        let by_square = self.is_involution_by_square();
        assert_eq!(by_square, self.is_involution_by_trace(), "square and trace tests disagree on {self}");
        by_square
    }

    /// The fixed line of a rotation by π.
    pub fn axis_of_involution(&self) -> Result<AxisLine<F>, RotationError> {
        if !self.is_involution() {
            return Err(RotationError::NotInvolution);
        }
        let plus_identity = &self.m + &Matrix3::identity();
        let column = (0..3)
            .map(|j| plus_identity.column(j))
            .find(|c| !c.is_zero())
            .expect("g + I vanishes only for g = -I, which is not in SO(3)");
        let axis = AxisLine::new(column)?;
        assert_eq!(&self.apply(axis.direction()), axis.direction());
        Ok(axis)
    }

    /// The rotation by π about `axis`: `(2/(v·v))·v·vᵀ - I`.
    pub fn from_axis_pi(axis: &AxisLine<F>) -> Self {
        let v = axis.direction();
        let scale = F::from_i64(2).checked_div(&v.norm_squared()).expect("nonzero axis");
        let m = &Matrix3::outer(v, v).scale(&scale) - &Matrix3::identity();
        Self::from_matrix_unchecked(m)
    }
}

impl<F: ExactField> fmt::Display for RotationElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.m.rows().iter().map(|r| format!("{} {} {}", r[0], r[1], r[2])).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QSqrt5;
    use num_traits::{One, Zero};

    type R = RotationElement<QSqrt5>;

    fn half_turn_x() -> R {
        R::new(Matrix3::from_i64([[1, 0, 0], [0, -1, 0], [0, 0, -1]])).unwrap()
    }

    #[test]
    fn construction_checks_invariants() {
        assert_eq!(
            R::new(Matrix3::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]])),
            Err(RotationError::NotOrthogonal)
        );
        assert!(matches!(
            R::new(Matrix3::from_i64([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])),
            Err(RotationError::WrongDeterminant(_))
        ));
    }

    #[test]
    fn conjugation_trivial_cases() {
        let g = half_turn_x();
        let h = R::from_axis_pi(&AxisLine::from_i64(0, 1, 1).unwrap());
        assert_eq!(R::identity().conjugate(&h), h);
        assert_eq!(g.conjugate(&g), g);
    }

    #[test]
    fn involution_examples() {
        assert!(!R::identity().is_involution());
        assert!(half_turn_x().is_involution());
        let quarter = R::new(Matrix3::from_i64([[1, 0, 0], [0, 0, -1], [0, 1, 0]])).unwrap();
        assert!(!quarter.is_involution());
        assert!(quarter.pow(2).is_involution());
        assert_eq!(quarter.axis_of_involution(), Err(RotationError::NotInvolution));
    }

    #[test]
    fn axis_round_trip_on_coordinate_axis() {
        let x = AxisLine::from_i64(1, 0, 0).unwrap();
        assert_eq!(R::from_axis_pi(&x), half_turn_x());
        assert_eq!(half_turn_x().axis_of_involution().unwrap(), x);
    }

    #[test]
    fn golden_axis_half_turn() {
        let axis = AxisLine::new(Vector3::new(QSqrt5::phi(), QSqrt5::one(), QSqrt5::zero())).unwrap();
        let g = R::from_axis_pi(&axis);
        assert!(R::new(g.matrix().clone()).is_ok());
        assert_eq!(g.axis_of_involution().unwrap(), axis);
    }
}
