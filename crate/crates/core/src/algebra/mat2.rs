use std::fmt;

use super::ring::Ring;
use crate::error::{Error, Result};

/// A 2×2 matrix over a commutative ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub e11: T,
    pub e12: T,
    pub e21: T,
    pub e22: T,
}

impl<T: Ring> Mat2<T> {
    pub fn new(e11: T, e12: T, e21: T, e22: T) -> Self {
        Mat2 { e11, e12, e21, e22 }
    }

    /// The identity over the ring of `like`.
    pub fn identity_like(like: &T) -> Self {
        let (z, o) = (like.zero_like(), like.one_like());
        Mat2::new(o.clone(), z.clone(), z, o)
    }

    pub fn scalar(c: T) -> Self {
        let z = c.zero_like();
        Mat2::new(c.clone(), z.clone(), z, c)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mat2 {
            e11: self.e11.mul_ref(&rhs.e11).add_ref(&self.e12.mul_ref(&rhs.e21)),
            e12: self.e11.mul_ref(&rhs.e12).add_ref(&self.e12.mul_ref(&rhs.e22)),
            e21: self.e21.mul_ref(&rhs.e11).add_ref(&self.e22.mul_ref(&rhs.e21)),
            e22: self.e21.mul_ref(&rhs.e12).add_ref(&self.e22.mul_ref(&rhs.e22)),
        }
    }

    pub fn det(&self) -> T {
        self.e11.mul_ref(&self.e22).sub_ref(&self.e12.mul_ref(&self.e21))
    }

    pub fn trace(&self) -> T {
        self.e11.add_ref(&self.e22)
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg_ref)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    /// Inverse via the adjugate; requires a unit determinant.
    pub fn inverse(&self) -> Result<Self> {
        let inv_det = self.det().unit_inverse().ok_or(Error::NotInvertible)?;
        Ok(Mat2 {
            e11: self.e22.mul_ref(&inv_det),
            e12: self.e12.neg_ref().mul_ref(&inv_det),
            e21: self.e21.neg_ref().mul_ref(&inv_det),
            e22: self.e11.mul_ref(&inv_det),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity_like(&self.e11);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Mat2::new(f(&self.e11), f(&self.e12), f(&self.e21), f(&self.e22))
    }

    pub fn try_map<U>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Mat2<U>> {
        Ok(Mat2 { e11: f(&self.e11)?, e12: f(&self.e12)?, e21: f(&self.e21)?, e22: f(&self.e22)? })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity_like(&self.e11)
    }

    /// Whether the matrix is `c · Identity` for the given scalar.
    pub fn is_scalar(&self, c: &T) -> bool {
        *self == Self::scalar(c.clone())
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> [&T; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e11, self.e12, self.e21, self.e22)
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.e11, self.e12, self.e21, self.e22)
    }
}

/// Integer matrix from row-major entries.
pub fn int_mat(rows: [[i64; 2]; 2]) -> Mat2<num_bigint::BigInt> {
    Mat2::new(rows[0][0].into(), rows[0][1].into(), rows[1][0].into(), rows[1][1].into())
}

/// Serialized row by row as `[[e11, e12], [e21, e22]]`.
impl<T: serde::Serialize> serde::Serialize for Mat2<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [[&self.e11, &self.e12], [&self.e21, &self.e22]].serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn trace_of_snake_matrix() {
        assert_eq!(int_mat([[1393, 576], [2208, 913]]).trace(), BigInt::from(2306));
    }

    #[test]
    fn det_of_l() {
        assert_eq!(int_mat([[0, 1], [1, 1]]).det(), BigInt::from(-1));
    }

    #[test]
    fn j_is_an_involution() {
        let j = int_mat([[1, 0], [0, -1]]);
        assert!(j.inverse().unwrap().mul(&j).is_identity());
        assert!(j.pow(2).is_identity());
    }

    #[test]
    fn non_unit_determinant_is_not_invertible() {
        assert_eq!(int_mat([[2, 0], [0, 1]]).inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn inverse_of_sl2() {
        let m = int_mat([[2, 3], [1, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, int_mat([[2, -3], [-1, 2]]));
        assert_eq!(inv.trace(), m.trace());
    }
}
