//! Gaussian integers ℤ[i], the coefficient ring of the symbolic connection.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::Cyclotomic;
use super::ring::{Coeff, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gaussian {
    pub re: BigInt,
    pub im: BigInt,
}

impl Gaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Gaussian { re: re.into(), im: im.into() }
    }

    pub fn i() -> Self {
        Gaussian::new(0, 1)
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl From<BigInt> for Gaussian {
    fn from(re: BigInt) -> Self {
        Gaussian { re, im: BigInt::zero() }
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, text) = self.signed_text();
        if neg {
            write!(f, "-{text}")
        } else {
            write!(f, "{text}")
        }
    }
}

impl Ring for Gaussian {
    fn zero_like(&self) -> Self {
        Gaussian::default()
    }
    fn one_like(&self) -> Self {
        Gaussian::new(1, 0)
    }
    fn vanishes(&self) -> bool {
        Gaussian::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Gaussian { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Gaussian { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Gaussian { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
    fn neg_ref(&self) -> Self {
        Gaussian { re: -&self.re, im: -&self.im }
    }
    fn unit_inverse(&self) -> Option<Self> {
        // Units are ±1, ±i; their inverse is the conjugate.
        let norm = &self.re * &self.re + &self.im * &self.im;
        norm.is_one().then(|| self.conj())
    }
}

impl Coeff for Gaussian {
    fn zero_coeff() -> Self {
        Gaussian::default()
    }
    fn one_coeff() -> Self {
        Gaussian::new(1, 0)
    }
    fn from_i64(n: i64) -> Self {
        Gaussian::new(n, 0)
    }
    fn to_cyclotomic(&self, order: u32) -> Result<Cyclotomic> {
        let re = Cyclotomic::from_int(order, self.re.clone())?;
        if self.im.is_zero() {
            return Ok(re);
        }
        if !order.is_multiple_of(4) {
            return Err(Error::UnsupportedOrder(order));
        }
        let i = Cyclotomic::root(order, order / 4)?;
        let im = Cyclotomic::from_int(order, self.im.clone())?;
        Ok(re.add_ref(&i.mul_ref(&im)))
    }
    fn signed_text(&self) -> (bool, String) {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => (self.re.is_negative(), self.re.abs().to_string()),
            (true, false) => {
                let mag = self.im.abs();
                let text = if mag.is_one() { "i".to_string() } else { format!("{mag}i") };
                (self.im.is_negative(), text)
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                let mag = self.im.abs();
                let imag = if mag.is_one() { "i".to_string() } else { format!("{mag}i") };
                (false, format!("({}{sign}{imag})", self.re))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = Gaussian::i();
        assert_eq!(i.mul_ref(&i), Gaussian::new(-1, 0));
    }

    #[test]
    fn units_invert() {
        for u in [Gaussian::new(1, 0), Gaussian::new(-1, 0), Gaussian::i(), Gaussian::new(0, -1)] {
            let inv = u.unit_inverse().unwrap();
            assert!(u.mul_ref(&inv).is_unity());
        }
        assert!(Gaussian::new(1, 1).unit_inverse().is_none());
    }

    #[test]
    fn text_forms() {
        assert_eq!(Gaussian::new(-3, 0).to_string(), "-3");
        assert_eq!(Gaussian::new(0, -1).to_string(), "-i");
        assert_eq!(Gaussian::new(2, -5).to_string(), "(2-5i)");
    }

    #[test]
    fn embeds_into_order_eight() {
        let i = Gaussian::i().to_cyclotomic(8).unwrap();
        assert_eq!(i.mul_ref(&i), Cyclotomic::from_int(8, BigInt::from(-1)).unwrap());
        assert!(Gaussian::i().to_cyclotomic(3).is_err());
    }
}
