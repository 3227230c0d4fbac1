//! Truncated power series built from products of `(1 - m)^e` factors, graded
//! by total degree.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::{total_degree, IntPoly};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Cap on the total degree of retained monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesBudget {
    pub max_total_degree: u32,
}

impl SeriesBudget {
    pub fn new(max_total_degree: u32) -> Self {
        SeriesBudget { max_total_degree }
    }

    fn cap(&self) -> i64 {
        self.max_total_degree as i64
    }

    pub fn truncate(&self, p: &IntPoly) -> IntPoly {
        p.truncated(self.cap())
    }

    /// Truncated product.
    pub fn mul(&self, a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
        a.try_mul_bounded(b, Some(self.cap()))
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Expansion of `(1 - m)^e` for a monomial `m`, truncated to the budget.
///
/// Negative `e` gives an infinite series, which only truncates when `m` has
/// positive total degree.
pub fn one_minus_power(m: &IntPoly, e: i64, budget: SeriesBudget) -> Result<IntPoly> {
    let one = IntPoly::one(m.vars());
    if m.is_zero() || e == 0 {
        return Ok(one);
    }
    let (exps, _) = m.as_monomial().ok_or(Error::NotAMonomial)?;
    let degree = total_degree(exps);
    let neg_m = m.neg();
    let mut out = IntPoly::zero(m.vars());
    let mut power = one;
    if e < 0 && degree <= 0 {
        return Err(Error::NonConvergentGrading { degree });
    }
    let mut k = 0i64;
    loop {
        if (e > 0 && k > e) || (degree > 0 && k * degree > budget.cap()) {
            break;
        }
        // (1 - m)^e = Σ_k C(e, k) (-m)^k with the generalized binomial;
        // for e = -n, C(-n, k) (-1)^k = C(n + k - 1, k).
        let c = if e > 0 {
            binomial(e, k)
        } else {
            let n = -e;
            let b = binomial(n + k - 1, k);
            if k % 2 == 0 {
                b
            } else {
                -b
            }
        };
        out = out.try_add(&power.scale(&c))?;
        power = power.try_mul(&neg_m)?;
        k += 1;
    }
    Ok(budget.truncate(&out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MacMahonKind {
    /// M(a, Q) = ∏_{i≥1} (1 - a Qⁱ)^{-i}
    M,
    /// M̃(x, Q) = M(x, Q) M(x⁻¹, Q)
    MTilde,
}

/// `M(arg, q)^power` or `M̃(arg, q)^power`, truncated to the budget.
pub fn macmahon_power(
    kind: MacMahonKind,
    arg: &IntPoly,
    q: &IntPoly,
    power: i64,
    budget: SeriesBudget,
) -> Result<IntPoly> {
    match kind {
        MacMahonKind::M => m_power(arg, q, power, budget),
        MacMahonKind::MTilde => {
            let inv = arg.unit_inverse().ok_or(Error::NotAUnit)?;
            let inv = if inv.vars() != q.vars() { inv.with_vars(q.vars())? } else { inv };
            let a = m_power(arg, q, power, budget)?;
            let b = m_power(&inv, q, power, budget)?;
            budget.mul(&a, &b)
        }
    }
}

pub fn macmahon_series(kind: MacMahonKind, arg: &IntPoly, q: &IntPoly, budget: SeriesBudget) -> Result<IntPoly> {
    macmahon_power(kind, arg, q, 1, budget)
}

fn m_power(arg: &IntPoly, q: &IntPoly, power: i64, budget: SeriesBudget) -> Result<IntPoly> {
    let one = IntPoly::one(q.vars());
    if arg.is_zero() || power == 0 {
        return Ok(one);
    }
    let (q_exps, _) = q.as_monomial().ok_or(Error::NotAMonomial)?;
    let (a_exps, _) = arg.as_monomial().ok_or(Error::NotAMonomial)?;
    let q_deg = total_degree(q_exps);
    let first = total_degree(a_exps) + q_deg;
    if q_deg <= 0 || first <= 0 {
        return Err(Error::NonConvergentGrading { degree: first.min(q_deg) });
    }
    let arg = if arg.vars() != q.vars() { arg.with_vars(q.vars())? } else { arg.clone() };
    let mut acc = one;
    let mut q_pow = q.clone();
    let mut i = 1i64;
    while total_degree(a_exps) + i * q_deg <= budget.cap() {
        let m = arg.try_mul(&q_pow)?;
        let factor = one_minus_power(&m, -i * power, budget)?;
        acc = budget.mul(&acc, &factor)?;
        q_pow = q_pow.try_mul(q)?;
        i += 1;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Vars;

    fn qvars() -> Vars {
        Vars::new(&["q"])
    }

    fn p(text: &str) -> IntPoly {
        IntPoly::parse(&qvars(), text).unwrap()
    }

    #[test]
    fn macmahon_counts_plane_partitions() {
        let m = macmahon_series(MacMahonKind::M, &p("1"), &p("q"), SeriesBudget::new(4)).unwrap();
        assert_eq!(m, p("1 + q + 3*q^2 + 6*q^3 + 13*q^4"));
    }

    #[test]
    fn macmahon_at_zero_is_one() {
        let m = macmahon_series(MacMahonKind::M, &p("0"), &p("q"), SeriesBudget::new(6)).unwrap();
        assert_eq!(m, p("1"));
    }

    #[test]
    fn macmahon_at_minus_q() {
        let m = macmahon_series(MacMahonKind::M, &p("1"), &p("-q"), SeriesBudget::new(3)).unwrap();
        assert_eq!(m, p("1 - q + 3*q^2 - 6*q^3"));
    }

    #[test]
    fn power_minus_one_inverts() {
        let b = SeriesBudget::new(7);
        let m = macmahon_power(MacMahonKind::M, &p("1"), &p("q"), 1, b).unwrap();
        let inv = macmahon_power(MacMahonKind::M, &p("1"), &p("q"), -1, b).unwrap();
        assert_eq!(b.mul(&m, &inv).unwrap(), p("1"));
    }

    #[test]
    fn tilde_at_one_is_square() {
        let b = SeriesBudget::new(6);
        let m = macmahon_series(MacMahonKind::M, &p("1"), &p("q"), b).unwrap();
        let mt = macmahon_series(MacMahonKind::MTilde, &p("1"), &p("q"), b).unwrap();
        assert_eq!(mt, b.mul(&m, &m).unwrap());
    }

    #[test]
    fn non_positive_grading_is_rejected() {
        let b = SeriesBudget::new(3);
        assert!(matches!(
            macmahon_series(MacMahonKind::M, &p("q^-1"), &p("q"), b),
            Err(Error::NonConvergentGrading { .. })
        ));
        assert!(matches!(one_minus_power(&p("1"), -1, b), Err(Error::NonConvergentGrading { .. })));
    }

    #[test]
    fn finite_powers_are_exact() {
        let b = SeriesBudget::new(10);
        assert_eq!(one_minus_power(&p("q^2"), 3, b).unwrap(), p("1 - 3*q^2 + 3*q^4 - q^6"));
        assert_eq!(one_minus_power(&p("1"), 2, b).unwrap(), p("0"));
    }

    #[test]
    fn geometric_series() {
        let b = SeriesBudget::new(4);
        assert_eq!(one_minus_power(&p("q"), -1, b).unwrap(), p("1 + q + q^2 + q^3 + q^4"));
        assert_eq!(one_minus_power(&p("q"), -2, b).unwrap(), p("1 + 2*q + 3*q^2 + 4*q^3 + 5*q^4"));
    }
}
