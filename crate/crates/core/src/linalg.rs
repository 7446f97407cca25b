//! 3-vectors and 3×3 matrices over an exact field.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::ExactField;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector3<F> {
    pub x: F,
    pub y: F,
    pub z: F,
}

impl<F: ExactField> Vector3<F> {
    pub fn new(x: F, y: F, z: F) -> Self {
        Self { x, y, z }
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Self {
        Self::new(F::from_i64(x), F::from_i64(y), F::from_i64(z))
    }

    pub fn zero() -> Self {
        Self::new(F::zero(), F::zero(), F::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn to_array(&self) -> [F; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn from_array([x, y, z]: [F; 3]) -> Self {
        Self::new(x, y, z)
    }

    pub fn dot(&self, o: &Self) -> F {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.z.clone() * o.z.clone()
    }

    pub fn norm_squared(&self) -> F {
        self.dot(self)
    }

    pub fn cross(&self, o: &Self) -> Self {
        Self::new(
            self.y.clone() * o.z.clone() - self.z.clone() * o.y.clone(),
            self.z.clone() * o.x.clone() - self.x.clone() * o.z.clone(),
            self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone(),
        )
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.x.clone() * s.clone(), self.y.clone() * s.clone(), self.z.clone() * s.clone())
    }
}

impl<F: ExactField> Add for Vector3<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<F: ExactField> Sub for Vector3<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<F: ExactField> Neg for Vector3<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// Row-major 3×3 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix3<F> {
    rows: [[F; 3]; 3],
}

impl<F: ExactField> Matrix3<F> {
    pub fn from_rows(rows: [[F; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Self::from_rows(rows.map(|r| r.map(F::from_i64)))
    }

    pub fn identity() -> Self {
        Self::diag(F::one(), F::one(), F::one())
    }

    pub fn zero() -> Self {
        Self::from_rows(std::array::from_fn(|_| std::array::from_fn(|_| F::zero())))
    }

    pub fn diag(a: F, b: F, c: F) -> Self {
        let z = F::zero;
        Self::from_rows([[a, z(), z()], [z(), b, z()], [z(), z(), c]])
    }

    /// `u·vᵀ`.
    pub fn outer(u: &Vector3<F>, v: &Vector3<F>) -> Self {
        let (u, v) = (u.to_array(), v.to_array());
        Self::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| u[i].clone() * v[j].clone())))
    }

    pub fn rows(&self) -> &[[F; 3]; 3] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.rows[i][j]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = &F> {
        self.rows.iter().flatten()
    }

    pub fn column(&self, j: usize) -> Vector3<F> {
        Vector3::new(self.rows[0][j].clone(), self.rows[1][j].clone(), self.rows[2][j].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| self.rows[j][i].clone())))
    }

    pub fn trace(&self) -> F {
        self.rows[0][0].clone() + self.rows[1][1].clone() + self.rows[2][2].clone()
    }

    pub fn det(&self) -> F {
        let m = &self.rows;
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            m[1][a].clone() * m[2][b].clone() - m[1][c].clone() * m[2][d].clone()
        };
        m[0][0].clone() * minor(1, 2, 2, 1) - m[0][1].clone() * minor(0, 2, 2, 0)
            + m[0][2].clone() * minor(0, 1, 1, 0)
    }

    pub fn mul_vec(&self, v: &Vector3<F>) -> Vector3<F> {
        let r = |i: usize| Vector3::from_array(self.rows[i].clone()).dot(v);
        Vector3::new(r(0), r(1), r(2))
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_rows(self.rows.clone().map(|r| r.map(|x| x * s.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(|x| x.is_zero())
    }
}

impl<F: ExactField> Mul for &Matrix3<F> {
    type Output = Matrix3<F>;
    fn mul(self, o: &Matrix3<F>) -> Matrix3<F> {
        Matrix3::from_rows(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(F::zero(), |acc, k| acc + self.rows[i][k].clone() * o.rows[k][j].clone())
            })
        }))
    }
}

impl<F: ExactField> Mul for Matrix3<F> {
    type Output = Matrix3<F>;
    fn mul(self, o: Matrix3<F>) -> Matrix3<F> {
        &self * &o
    }
}

impl<F: ExactField> Add for &Matrix3<F> {
    type Output = Matrix3<F>;
    fn add(self, o: &Matrix3<F>) -> Matrix3<F> {
        Matrix3::from_rows(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.rows[i][j].clone() + o.rows[i][j].clone())
        }))
    }
}

impl<F: ExactField> Sub for &Matrix3<F> {
    type Output = Matrix3<F>;
    fn sub(self, o: &Matrix3<F>) -> Matrix3<F> {
        Matrix3::from_rows(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.rows[i][j].clone() - o.rows[i][j].clone())
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QSqrt5;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type M = Matrix3<BigRational>;

    #[test]
    fn identity_is_neutral() {
        let m = M::from_i64([[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
        assert_eq!(&M::identity() * &m, m);
        assert_eq!(&m * &M::identity(), m);
    }

    #[test]
    fn det_of_half_turn() {
        let m = Matrix3::<QSqrt5>::from_i64([[1, 0, 0], [0, -1, 0], [0, 0, -1]]);
        assert_eq!(m.det(), QSqrt5::from(1));
        assert_eq!(
            M::from_i64([[1, 2, 3], [4, 5, 6], [7, 8, 10]]).det(),
            BigRational::from_integer((-3).into())
        );
    }

    #[test]
    fn double_transpose() {
        let m = M::from_i64([[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_ne!(m.transpose(), m);
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let u = Vector3::<QSqrt5>::from_i64(1, 1, 0);
        let v = Vector3::<QSqrt5>::from_i64(1, -1, 0);
        assert_eq!(u.cross(&v), Vector3::from_i64(0, 0, -2));
    }

    fn arb_matrix() -> impl Strategy<Value = M> {
        proptest::array::uniform3(proptest::array::uniform3(-4i64..5)).prop_map(M::from_i64)
    }

    proptest! {
        #[test]
        fn product_is_associative_and_det_multiplicative(a in arb_matrix(), b in arb_matrix(), c in arb_matrix()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!((&a * &b).det(), a.det() * b.det());
        }
    }
}
