//! Unsigned lines through the origin and the exact angle predicates used on
//! rotation axes.

use std::fmt;

use crate::linalg::{Matrix3, Vector3};
use crate::scalar::{primitive_integer_vector, AlgebraError, ExactField};

/// A line through the origin, stored by a canonical direction vector.
///
/// The direction is scaled so its first nonzero coordinate is positive; when
/// every coordinate is rational the coordinates are additionally coprime
/// integers, otherwise the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxisLine<F> {
    direction: Vector3<F>,
}

impl<F: ExactField> AxisLine<F> {
    pub fn new(v: Vector3<F>) -> Result<Self, AlgebraError> {
        Ok(Self { direction: canonical_direction(v)? })
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Result<Self, AlgebraError> {
        Self::new(Vector3::from_i64(x, y, z))
    }

    pub fn direction(&self) -> &Vector3<F> {
        &self.direction
    }

    pub fn dot(&self, other: &Self) -> F {
        self.direction.dot(&other.direction)
    }

    pub fn is_perpendicular(&self, other: &Self) -> bool {
        self.dot(other).is_zero()
    }

    /// The lines meet at angle π/4, i.e. `2(u·v)² = (u·u)(v·v)`.
    pub fn is_angle_pi_over_4(&self, other: &Self) -> bool {
        let d = self.dot(other);
        let two = F::from_i64(2);
        two * d.clone() * d == self.direction.norm_squared() * other.direction.norm_squared()
    }

    /// The common perpendicular of two distinct lines.
    pub fn common_perpendicular(&self, other: &Self) -> Result<Self, AlgebraError> {
        Self::new(self.direction.cross(&other.direction))
    }
}

pub fn is_coplanar<F: ExactField>(u: &AxisLine<F>, v: &AxisLine<F>, w: &AxisLine<F>) -> bool {
    Matrix3::from_rows([u.direction.to_array(), v.direction.to_array(), w.direction.to_array()])
        .det()
        .is_zero()
}

fn canonical_direction<F: ExactField>(v: Vector3<F>) -> Result<Vector3<F>, AlgebraError> {
    let lead = v.to_array().into_iter().find(|c| !c.is_zero()).ok_or(AlgebraError::ZeroAxis)?;
    let v = v.scale(&lead.try_inv()?);
    let coords = v.to_array();
    let rational: Option<Vec<_>> = coords.iter().map(|c| c.to_rational()).collect();
    match rational {
        Some(qs) => {
            let ints = primitive_integer_vector(&qs);
            let mut it =
                ints.into_iter().map(|n| F::from_rational(num_rational::BigRational::from_integer(n)));
            Ok(Vector3::new(it.next().unwrap(), it.next().unwrap(), it.next().unwrap()))
        }
        None => Ok(v),
    }
}

impl<F: ExactField> fmt::Display for AxisLine<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.direction;
        write!(f, "({}, {}, {})", d.x, d.y, d.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QSqrt5;
    use num_traits::Zero;
    use proptest::prelude::*;

    type Axis = AxisLine<QSqrt5>;

    fn ax(x: i64, y: i64, z: i64) -> Axis {
        Axis::from_i64(x, y, z).unwrap()
    }

    #[test]
    fn perpendicular_examples() {
        assert!(ax(0, 1, 1).is_perpendicular(&ax(0, 1, -1)));
        assert!(!ax(0, 1, 1).is_perpendicular(&ax(0, 1, 1)));
        assert!(ax(1, 1, 0).is_perpendicular(&ax(1, -1, 0)));
    }

    #[test]
    fn quarter_pi_examples() {
        assert!(ax(0, 0, 1).is_angle_pi_over_4(&ax(0, 1, 1)));
        assert!(!ax(0, 0, 1).is_angle_pi_over_4(&ax(0, 0, 1)));
        assert!(ax(0, 0, 1).is_angle_pi_over_4(&ax(0, 1, -1)));
    }

    #[test]
    fn coplanar_examples() {
        assert!(is_coplanar(&ax(0, 1, 1), &ax(0, 1, -1), &ax(0, 0, 1)));
        assert!(!is_coplanar(&ax(1, 0, 0), &ax(0, 1, 0), &ax(0, 0, 1)));
        assert!(is_coplanar(&ax(1, 2, 3), &ax(-1, 0, 4), &ax(0, 2, 7)));
    }

    #[test]
    fn zero_axis_is_rejected() {
        assert_eq!(Axis::from_i64(0, 0, 0), Err(AlgebraError::ZeroAxis));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(ax(0, -2, 4).direction(), &Vector3::from_i64(0, 1, -2));
        let golden = Axis::new(Vector3::new(QSqrt5::phi(), QSqrt5::from(2), QSqrt5::zero())).unwrap();
        assert_eq!(golden.direction().x, QSqrt5::from(1));
        assert_eq!(golden.direction().y, QSqrt5::from(2) / QSqrt5::phi());
    }

    proptest! {
        #[test]
        fn canonicalization_is_scale_invariant(
            x in -6i64..7, y in -6i64..7, z in -6i64..7,
            num in -5i64..6, den in 1i64..5, surd in -3i64..4,
        ) {
            prop_assume!((x, y, z) != (0, 0, 0) && num != 0);
            let v = Vector3::<QSqrt5>::from_i64(x, y, z);
            let a = Axis::new(v.clone()).unwrap();
            let rational = QSqrt5::from_fractions(num, den, 0, 1);
            prop_assert_eq!(&Axis::new(v.scale(&rational)).unwrap(), &a);
            let irrational = QSqrt5::from_fractions(num, den, surd, 1);
            prop_assert_eq!(&Axis::new(v.scale(&irrational)).unwrap(), &a);
            prop_assert_eq!(&Axis::new(a.direction().clone()).unwrap(), &a);
        }
    }
}
