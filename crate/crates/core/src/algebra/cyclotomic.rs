//! Cyclotomic integers ℤ[ζₙ] ≅ ℤ[x]/(Φₙ(x)) for the handful of orders the
//! root-of-unity specializations need.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ring::Ring;
use crate::error::{Error, Result};

/// Orders with a hard-coded cyclotomic polynomial. Order 12 hosts the
/// cube and sixth roots together with i.
pub const SUPPORTED_ORDERS: [u32; 7] = [1, 2, 3, 4, 6, 8, 12];

/// Low-to-high coefficients of Φₙ, monic.
fn phi(order: u32) -> Result<&'static [i64]> {
    Ok(match order {
        1 => &[-1, 1],
        2 => &[1, 1],
        3 => &[1, 1, 1],
        4 => &[1, 0, 1],
        6 => &[1, -1, 1],
        8 => &[1, 0, 0, 0, 1],
        12 => &[1, 0, -1, 0, 1],
        other => return Err(Error::UnsupportedOrder(other)),
    })
}

fn degree(order: u32) -> Result<usize> {
    Ok(phi(order)?.len() - 1)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Result<Self> {
        Ok(Cyclotomic { order, coeffs: vec![BigInt::zero(); degree(order)?] })
    }

    pub fn from_int(order: u32, n: impl Into<BigInt>) -> Result<Self> {
        let mut z = Self::zero(order)?;
        z.coeffs[0] = n.into();
        Ok(z)
    }

    pub fn one(order: u32) -> Result<Self> {
        Self::from_int(order, 1)
    }

    /// ζ^k for the fixed primitive root ζ = x of order `order`.
    pub fn root(order: u32, k: u32) -> Result<Self> {
        let k = (k % order) as usize;
        let mut raw = vec![BigInt::zero(); k.max(degree(order)?) + 1];
        raw[k] = BigInt::one();
        Self::from_raw(order, raw)
    }

    /// Reduces an arbitrary coefficient vector (powers of ζ, low to high).
    pub fn from_raw(order: u32, mut raw: Vec<BigInt>) -> Result<Self> {
        let phi = phi(order)?;
        let d = phi.len() - 1;
        if raw.len() < d {
            raw.resize(d, BigInt::zero());
        }
        for top in (d..raw.len()).rev() {
            let c = std::mem::take(&mut raw[top]);
            if c.is_zero() {
                continue;
            }
            for (j, &p) in phi[..d].iter().enumerate() {
                if p != 0 {
                    raw[top - d + j] -= &c * p;
                }
            }
        }
        raw.truncate(d);
        Ok(Cyclotomic { order, coeffs: raw })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn same_order(&self, rhs: &Self) -> Result<()> {
        if self.order == rhs.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch { left: self.order, right: rhs.order })
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let d = self.coeffs.len();
        let mut raw = vec![BigInt::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::from_raw(self.order, raw)
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut raw = vec![BigInt::zero(); n.max(self.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[(n - k % n) % n] += c;
        }
        Self::from_raw(self.order, raw).expect("order already validated")
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// The integer value, when the element lies in ℤ.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }
}

impl Ring for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic { order: self.order, coeffs: vec![BigInt::zero(); self.coeffs.len()] }
    }
    fn one_like(&self) -> Self {
        let mut one = self.zero_like();
        one.coeffs[0] = BigInt::one();
        one
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("cyclotomic order mismatch")
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
    fn neg_ref(&self) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    /// Only roots of unity (up to sign) are recognised: x is inverted by its
    /// conjugate when x·x̄ = 1.
    fn unit_inverse(&self) -> Option<Self> {
        let conj = self.conj();
        self.mul_ref(&conj).is_unity().then_some(conj)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if wrote {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            wrote = true;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{k}", self.order)?,
                (_, false) => write!(f, "{mag}*z{}^{k}", self.order)?,
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(order: u32, k: u32) -> Cyclotomic {
        Cyclotomic::root(order, k).unwrap()
    }

    #[test]
    fn cube_root_minimal_polynomial() {
        let w = z(3, 1);
        let sum = w.pow(2).add_ref(&w).add_ref(&w.one_like());
        assert!(sum.is_zero());
    }

    #[test]
    fn eighth_root_to_the_fourth() {
        assert_eq!(z(8, 1).pow(4), Cyclotomic::from_int(8, -1).unwrap());
        assert_eq!(z(8, 4), Cyclotomic::from_int(8, -1).unwrap());
    }

    #[test]
    fn i_squared() {
        let i = z(4, 1);
        assert_eq!(i.mul_ref(&i), Cyclotomic::from_int(4, -1).unwrap());
    }

    #[test]
    fn every_root_has_full_order() {
        for &n in &SUPPORTED_ORDERS {
            let one = Cyclotomic::one(n).unwrap();
            assert_eq!(z(n, 1).pow(n), one);
            for k in 1..n {
                if num_integer::gcd(k, n) == 1 {
                    assert_ne!(z(n, 1).pow(k), one, "order {n} k {k}");
                }
            }
        }
    }

    #[test]
    fn conj_inverts_roots() {
        for &n in &SUPPORTED_ORDERS {
            for k in 0..n {
                let x = z(n, k);
                assert!(x.mul_ref(&x.conj()).is_unity());
                assert_eq!(x.unit_inverse().unwrap(), z(n, (n - k) % n));
            }
        }
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert_eq!(z(3, 1).try_add(&z(4, 1)), Err(Error::OrderMismatch { left: 3, right: 4 }));
        assert!(Cyclotomic::zero(5).is_err());
    }

    #[test]
    fn twelfth_roots_contain_i_and_omega() {
        let i = z(12, 3);
        assert_eq!(i.pow(2), Cyclotomic::from_int(12, -1).unwrap());
        let w = z(12, 4);
        assert!(w.pow(2).add_ref(&w).add_ref(&w.one_like()).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(z(8, 1).to_string(), "z8^1");
        assert_eq!(Cyclotomic::from_int(4, -2).unwrap().to_string(), "-2");
        assert_eq!(z(3, 2).to_string(), "-z3^1 - 1");
    }
}
