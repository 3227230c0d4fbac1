use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::Cyclotomic;
use crate::error::Result;

/// A commutative ring whose elements carry enough context to build their own
/// zero and one (a polynomial needs its variable list, a cyclotomic integer
/// its order).
///
/// The arithmetic methods are infallible. Types with context (variables,
/// order) panic when mixed across incompatible contexts; their checked
/// counterparts live on the concrete types.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse when `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    fn is_unity(&self) -> bool {
        *self == self.one_like()
    }

    fn int_like(&self, n: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        for _ in 0..n.unsigned_abs() {
            acc = acc.add_ref(&one);
        }
        if n < 0 {
            acc.neg_ref()
        } else {
            acc
        }
    }
}

/// Scalar coefficients stored inside a [`LaurentPoly`](super::LaurentPoly).
pub trait Coeff: Ring + Eq + Hash {
    fn zero_coeff() -> Self;
    fn one_coeff() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Image under the embedding into ℤ[ζ_order].
    fn to_cyclotomic(&self, order: u32) -> Result<Cyclotomic>;
    /// Sign and magnitude text, e.g. `(true, "3")` for -3. Coefficients that
    /// are not plain integers come back parenthesized when needed.
    fn signed_text(&self) -> (bool, String);
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        Zero::zero()
    }
    fn one_like(&self) -> Self {
        One::one()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.abs().is_one().then(|| self.clone())
    }
    fn int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Coeff for BigInt {
    fn zero_coeff() -> Self {
        BigInt::zero()
    }
    fn one_coeff() -> Self {
        BigInt::one()
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn to_cyclotomic(&self, order: u32) -> Result<Cyclotomic> {
        Cyclotomic::from_int(order, self.clone())
    }
    fn signed_text(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}
