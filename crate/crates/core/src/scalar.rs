//! The exact scalar abstraction shared by the linear algebra, rotation and
//! search layers.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero vector does not determine an axis")]
    ZeroAxis,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// An ordered subfield of the reals with decidable equality.
///
/// `Ord` must be the order of the real embedding, so that signs of
/// determinants and dot products are meaningful.
pub trait ExactField:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: BigRational) -> Self;

    /// `Some(q)` when the value lies in the rational subfield.
    fn to_rational(&self) -> Option<BigRational>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn try_inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(Self::one() / self.clone())
        }
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self.clone() * rhs.try_inv()?)
    }

    /// -1, 0 or 1 according to the sign of the real value.
    fn signum_i8(&self) -> i8 {
        match self.cmp(&Self::zero()) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }
}

impl ExactField for BigRational {
    fn from_rational(q: BigRational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// Scales a rational vector to coprime integers, keeping signs.
pub(crate) fn primitive_integer_vector(qs: &[BigRational]) -> Vec<BigInt> {
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|n| n / &gcd).collect()
}
