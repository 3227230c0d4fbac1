//! Sparse multivariate Laurent polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use smallvec::SmallVec;

use super::cyclotomic::Cyclotomic;
use super::gaussian::Gaussian;
use super::ring::{Coeff, Ring};
use crate::error::{Error, Result};

/// Exponent vector, one slot per variable.
pub type Exps = SmallVec<[i32; 4]>;

/// Ordered variable names shared between polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn empty() -> Self {
        Vars(Arc::from(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A polynomial in finitely many variables with integer (possibly negative)
/// exponents. No stored coefficient is zero.
///
/// A polynomial over the empty variable list is a constant and combines
/// freely with polynomials over any variable list.
#[derive(Clone, Debug)]
pub struct LaurentPoly<C: Coeff = BigInt> {
    vars: Vars,
    terms: BTreeMap<Exps, C>,
}

pub type IntPoly = LaurentPoly<BigInt>;
pub type GaussPoly = LaurentPoly<Gaussian>;

impl<C: Coeff> PartialEq for LaurentPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        match (self.constant_value(), other.constant_value()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl<C: Coeff> Eq for LaurentPoly<C> {}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, C::one_coeff())
    }

    pub fn constant(vars: &Vars, c: C) -> Self {
        let mut p = Self::zero(vars);
        p.push_term(SmallVec::from_elem(0, vars.len()), c);
        p
    }

    pub fn from_int(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, C::from_i64(n))
    }

    /// The single variable `name` to the first power.
    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let idx = vars.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps: Exps = SmallVec::from_elem(0, vars.len());
        exps[idx] = 1;
        Ok(Self::monomial(vars, exps, C::one_coeff()))
    }

    pub fn monomial(vars: &Vars, exps: Exps, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent arity");
        let mut p = Self::zero(vars);
        p.push_term(exps, c);
        p
    }

    /// Monomial from `(name, exponent)` pairs.
    pub fn monomial_named(vars: &Vars, powers: &[(&str, i32)], c: C) -> Result<Self> {
        let mut exps: Exps = SmallVec::from_elem(0, vars.len());
        for &(name, e) in powers {
            let idx = vars.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            exps[idx] += e;
        }
        Ok(Self::monomial(vars, exps, c))
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Exps, C)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(Error::ExponentArity { expected: vars.len(), got: exps.len() });
            }
            p.push_term(exps, c);
        }
        Ok(p)
    }

    /// Adds `c·x^exps` in place, dropping the term if it cancels.
    pub fn push_term(&mut self, exps: Exps, c: C) {
        if Ring::vanishes(&c) {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add_ref(&c);
                if Ring::vanishes(&sum) {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero_coeff)
    }

    /// The value of a polynomial with no non-constant terms.
    pub fn constant_value(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero_coeff()),
            1 => {
                let (exps, c) = self.terms.iter().next().unwrap();
                exps.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term of a monomial.
    pub fn as_monomial(&self) -> Option<(&Exps, &C)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    /// Minimum and maximum total degree over the terms.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| total_degree(e));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// Sum of the coefficients, multiplicities included: the polynomial at
    /// every variable equal to one.
    pub fn coefficient_sum(&self) -> C {
        self.terms.values().fold(C::zero_coeff(), |acc, c| acc.add_ref(c))
    }

    /// Brings both operands onto one variable list, lifting constants.
    fn aligned<'a>(&'a self, rhs: &'a Self) -> Result<(Vars, Self, Self)> {
        if self.vars == rhs.vars {
            return Ok((self.vars.clone(), self.clone(), rhs.clone()));
        }
        if let Some(c) = self.constant_value() {
            if self.vars.is_empty() {
                return Ok((rhs.vars.clone(), Self::constant(&rhs.vars, c), rhs.clone()));
            }
        }
        if let Some(c) = rhs.constant_value() {
            if rhs.vars.is_empty() {
                return Ok((self.vars.clone(), self.clone(), Self::constant(&self.vars, c)));
            }
        }
        Err(Error::VarMismatch { left: self.vars.names().to_vec(), right: rhs.vars.names().to_vec() })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.vars == rhs.vars {
            let mut out = self.clone();
            for (e, c) in &rhs.terms {
                out.push_term(e.clone(), c.clone());
            }
            return Ok(out);
        }
        let (_, l, r) = self.aligned(rhs)?;
        l.try_add(&r)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&rhs.neg())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.try_mul_bounded(rhs, None)
    }

    /// Product keeping only terms of total degree at most `max_degree`.
    pub fn try_mul_bounded(&self, rhs: &Self, max_degree: Option<i64>) -> Result<Self> {
        if self.vars != rhs.vars {
            let (_, l, r) = self.aligned(rhs)?;
            return l.try_mul_bounded(&r, max_degree);
        }
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            let d1 = total_degree(e1);
            for (e2, c2) in &rhs.terms {
                if let Some(cap) = max_degree {
                    if d1 + total_degree(e2) > cap {
                        continue;
                    }
                }
                let exps: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.push_term(exps, c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, k) in &self.terms {
            out.push_term(e.clone(), k.mul_ref(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same vars");
            }
            base = base.try_mul(&base).expect("same vars");
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents allowed for unit monomials.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.unit_inverse().ok_or(Error::NotAUnit)? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).map_err(|_| Error::NotAUnit)?;
        Ok(base.pow(e))
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncated(&self, max_degree: i64) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable that occurs with a nonzero exponent.
    pub fn with_vars(&self, target: &Vars) -> Result<Self> {
        let map = self.index_map(target)?;
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut exps: Exps = SmallVec::from_elem(0, target.len());
            for (k, &x) in e.iter().enumerate() {
                if x != 0 {
                    let slot = map[k].ok_or_else(|| Error::UnknownVariable(self.vars.0[k].clone()))?;
                    exps[slot] += x;
                }
            }
            out.push_term(exps, c.clone());
        }
        Ok(out)
    }

    fn index_map(&self, target: &Vars) -> Result<Vec<Option<usize>>> {
        Ok(self.vars.0.iter().map(|v| target.index(v)).collect())
    }

    /// Substitutes `var^root ↦ image` for each rule, building a polynomial
    /// over `target`. Variables without a rule are carried over by name.
    ///
    /// A term whose exponent of a ruled variable is not divisible by that
    /// rule's root is rejected with [`Error::OddExponent`]. Negative powers
    /// require the image to be a unit.
    pub fn substitute(&self, target: &Vars, rules: &[(&str, u32, &Self)]) -> Result<Self> {
        let mut slot_rule: Vec<Option<(u32, Self)>> = vec![None; self.vars.len()];
        for &(name, root, image) in rules {
            let idx = self.vars.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            slot_rule[idx] = Some((root.max(1), image.with_vars(target)?));
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut plain: Exps = SmallVec::from_elem(0, target.len());
            let mut factor = Self::constant(target, c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match &slot_rule[k] {
                    Some((root, image)) => {
                        if x % *root as i32 != 0 {
                            return Err(Error::OddExponent {
                                var: self.vars.0[k].clone(),
                                exponent: x as i64,
                                root: *root,
                            });
                        }
                        factor = factor.try_mul(&image.powi((x / *root as i32) as i64)?)?;
                    }
                    None => {
                        let name = &self.vars.0[k];
                        let slot = target.index(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                        plain[slot] += x;
                    }
                }
            }
            let shifted = factor.shifted(&plain);
            out = out.try_add(&shifted)?;
        }
        Ok(out)
    }

    /// Multiplies by the monomial x^shift.
    pub fn shifted(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at cyclotomic values, one per variable name.
    pub fn eval_cyclotomic(&self, values: &[(&str, Cyclotomic)]) -> Result<Cyclotomic> {
        let order = values.first().map(|(_, v)| v.order()).unwrap_or(1);
        let mut slots: Vec<Option<(Cyclotomic, Option<Cyclotomic>)>> = vec![None; self.vars.len()];
        for (name, value) in values {
            if value.order() != order {
                return Err(Error::OrderMismatch { left: order, right: value.order() });
            }
            if let Some(idx) = self.vars.index(name) {
                slots[idx] = Some((value.clone(), value.unit_inverse()));
            }
        }
        let mut acc = Cyclotomic::zero(order)?;
        for (e, c) in &self.terms {
            let mut term = c.to_cyclotomic(order)?;
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let (value, inverse) =
                    slots[k].as_ref().ok_or_else(|| Error::UnknownVariable(self.vars.0[k].clone()))?;
                let base = if x > 0 { value } else { inverse.as_ref().ok_or(Error::NotAUnit)? };
                term = term.mul_ref(&base.pow(x.unsigned_abs()));
            }
            acc = acc.add_ref(&term);
        }
        Ok(acc)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut out = LaurentPoly::<D>::zero(&self.vars);
        for (e, c) in &self.terms {
            out.push_term(e.clone(), f(c));
        }
        out
    }
}

impl LaurentPoly<BigInt> {
    /// Parses the canonical text form, e.g. `3*a^2*b^-1 - c + 4`.
    pub fn parse(vars: &Vars, text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("polynomial `{text}`: {msg}"));
        let mut out = Self::zero(vars);
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(out);
        }
        let mut chunks = Vec::new();
        let mut current = String::new();
        let mut prev = '\0';
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && prev != '^' {
                chunks.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = ch;
        }
        chunks.push(current);
        for chunk in chunks {
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            let mut coeff = BigInt::from(sign);
            let mut exps: Exps = SmallVec::from_elem(0, vars.len());
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(bad("empty factor"));
                }
                if let Ok(n) = factor.parse::<BigInt>() {
                    coeff *= n;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => (n, p.parse::<i32>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                let idx = vars.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                exps[idx] += power;
            }
            out.push_term(exps, coeff);
        }
        Ok(out)
    }

    pub fn to_gaussian(&self) -> GaussPoly {
        self.map_coeffs(|c| Gaussian::from(c.clone()))
    }
}

impl LaurentPoly<Gaussian> {
    /// Drops to integer coefficients, failing if any imaginary part survives.
    pub fn into_integer(&self) -> Result<IntPoly> {
        let mut out = IntPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if !c.is_real() {
                return Err(Error::ImaginaryResidue);
            }
            out.push_term(e.clone(), c.re.clone());
        }
        Ok(out)
    }
}

pub fn total_degree(exps: &[i32]) -> i64 {
    exps.iter().map(|&e| e as i64).sum()
}

impl<C: Coeff> Ring for LaurentPoly<C> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.vars)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("variable lists differ")
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("variable lists differ")
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("variable lists differ")
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn unit_inverse(&self) -> Option<Self> {
        let (exps, c) = self.as_monomial()?;
        let inv = c.unit_inverse()?;
        Some(Self::monomial(&self.vars, exps.iter().map(|e| -e).collect(), inv))
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    /// Terms from the lexicographically largest exponent vector down.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (exps, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.signed_text();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = exps.iter().all(|&e| e == 0);
            if mag != "1" || is_const {
                factors.push(mag);
            }
            for (name, &e) in self.vars.0.iter().zip(exps.iter()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Serialized as its canonical text, e.g. `"3*q^2*r^-1 + 4"`.
impl<C: Coeff> serde::Serialize for LaurentPoly<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
