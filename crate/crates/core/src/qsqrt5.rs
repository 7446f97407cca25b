//! Arithmetic in the real quadratic field Q(√5).
//!
//! Integer matrices of the cube group and the golden-ratio matrices of the
//! icosahedral group both live here, so every finite rotation group the
//! search layer works with has exact entries.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{AlgebraError, ExactField};

/// `a + b·√5` with rational `a`, `b`.
///
/// Both parts are kept as reduced fractions with positive denominator, so
/// structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt5 {
    a: BigRational,
    b: BigRational,
}

impl QSqrt5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(int(a), int(b))
    }

    /// `(an/ad) + (bn/bd)·√5`. Panics on a zero denominator.
    pub fn from_fractions(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Self::new(BigRational::new(an.into(), ad.into()), BigRational::new(bn.into(), bd.into()))
    }

    pub fn sqrt5() -> Self {
        Self::from_ints(0, 1)
    }

    /// The golden ratio (1 + √5)/2.
    pub fn phi() -> Self {
        Self::from_fractions(1, 2, 1, 2)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    /// Galois conjugate `a - b·√5`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² - 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - int(5) * &self.b * &self.b
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn sign_of(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl Zero for QSqrt5 {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt5 {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl Add for QSqrt5 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for QSqrt5 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for QSqrt5 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let a = &self.a * &rhs.a + int(5) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Self::new(a, b)
    }
}

/// Panics on division by zero; use [`ExactField::checked_div`] for an
/// error value instead.
impl Div for QSqrt5 {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt 5)");
        let num = self * rhs.conjugate();
        Self::new(num.a / &n, num.b / &n)
    }
}

impl Neg for QSqrt5 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Ord for QSqrt5 {
    /// Order of the real embedding √5 ≈ 2.236.
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.clone() - other.clone();
        let (sa, sb) = (sign_of(&d.a), sign_of(&d.b));
        let s = if sa == 0 || sb == 0 || sa == sb {
            if sa != 0 {
                sa
            } else {
                sb
            }
        } else {
            // opposite signs: compare a² with 5b²
            let lhs = &d.a * &d.a;
            let rhs = int(5) * &d.b * &d.b;
            match lhs.cmp(&rhs) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                Ordering::Equal => 0,
            }
        };
        s.cmp(&0)
    }
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ExactField for QSqrt5 {
    fn from_rational(q: BigRational) -> Self {
        Self::new(q, BigRational::zero())
    }

    fn to_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn try_inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::one() / self.clone())
    }
}

impl From<i64> for QSqrt5 {
    fn from(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
}

impl From<BigRational> for QSqrt5 {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

/// Canonical text form: `p/q` (or `p`), optionally followed by `+r/s*r5`
/// or `-r/s*r5`.
impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let op = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*r5", self.a, op, self.b.abs())
    }
}

fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let err = || AlgebraError::Parse(s.to_string());
    if s.is_empty() {
        return Err(err());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| err())?;
            let d = BigInt::from_str(d).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| err())?)),
    }
}

impl FromStr for QSqrt5 {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let Some(body) = s.strip_suffix("*r5") else {
            return Ok(Self::from_rational(parse_rational(s)?));
        };
        // split at the last sign that is not the leading one
        let split =
            body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
        match split {
            Some(i) => {
                let a = parse_rational(&body[..i])?;
                let mut b = parse_rational(&body[i + 1..])?;
                if body.as_bytes()[i] == b'-' {
                    b = -b;
                }
                Ok(Self::new(a, b))
            }
            None => Ok(Self::new(BigRational::zero(), parse_rational(body)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_product() {
        let x = QSqrt5::from_fractions(3, 7, -2, 5);
        assert_eq!(QSqrt5::one() * x.clone(), x);
    }

    #[test]
    fn conjugate_product_is_rational() {
        let x = QSqrt5::from_ints(3, 2);
        assert_eq!(x.clone() * x.conjugate(), QSqrt5::from_ints(9 - 5 * 4, 0));
    }

    #[test]
    fn golden_ratio_minimal_polynomial() {
        let phi = QSqrt5::phi();
        assert_eq!(phi.clone() * phi.clone(), phi + QSqrt5::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let x = QSqrt5::from_ints(1, 1);
        assert_eq!(x.checked_div(&QSqrt5::zero()), Err(AlgebraError::DivisionByZero));
        assert_eq!(x.checked_div(&x).unwrap(), QSqrt5::one(),);
    }

    #[test]
    fn real_order() {
        // √5 - 2 > 0 and 9/4 - √5 > 0 but √5 - 9/4 < 0
        assert!(QSqrt5::from_ints(-2, 1) > QSqrt5::zero());
        assert!(QSqrt5::from_fractions(9, 4, -1, 1) > QSqrt5::zero());
        assert!(QSqrt5::from_fractions(-9, 4, 1, 1) < QSqrt5::zero());
        assert!(QSqrt5::phi() > QSqrt5::from_fractions(8, 5, 0, 1));
        assert!(QSqrt5::phi() < QSqrt5::from_fractions(13, 8, 0, 1) + QSqrt5::from_fractions(1, 100, 0, 1));
    }

    #[test]
    fn text_forms() {
        for s in ["0", "-3/4", "1/2+1/2*r5", "2-1/3*r5", "0+1*r5", "-1/2-3/2*r5"] {
            let x: QSqrt5 = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("1/2*r5".parse::<QSqrt5>().unwrap(), QSqrt5::from_fractions(0, 1, 1, 2));
        assert!("-r5".parse::<QSqrt5>().is_err());
        assert!("1/0".parse::<QSqrt5>().is_err());
        assert!("x".parse::<QSqrt5>().is_err());
    }

    fn arb() -> impl Strategy<Value = QSqrt5> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| QSqrt5::from_fractions(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_laws(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
            prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
            if !x.is_zero() {
                prop_assert_eq!(x.clone() * x.try_inv().unwrap(), QSqrt5::one());
            }
        }

        #[test]
        fn order_is_compatible_with_addition(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(x.cmp(&y), (x.clone() + z.clone()).cmp(&(y.clone() + z)));
        }

        #[test]
        fn display_parse_round_trip(x in arb()) {
            prop_assert_eq!(x.to_string().parse::<QSqrt5>().unwrap(), x);
        }
    }
}
