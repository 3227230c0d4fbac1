//! Colored generating functions of boxed plane partitions, the SL₂ double
//! dimer weight of squished configurations, the fiber-by-fiber measure
//! check, the four-variable series Z_Q, and edge probabilities.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{macmahon_power, qrst, IntPoly, MacMahonKind, SeriesBudget, Vars};
use crate::connection::loop_trace;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::honeycomb::{matching_edges, matching_of, region_edges, HexEdge, Matching};
use crate::planepart::{color_counts_of, enumerate_boxed, scan_boxed, BoxShape, PlanePartition};
use crate::squish::{overlay, preimages, squish_multiset, DoubleDimer, Loop};

type ColorHistogram = HashMap<[u32; 4], u64>;

fn histogram_poly(hist: &ColorHistogram) -> IntPoly {
    let vars = qrst();
    let mut out = IntPoly::zero(&vars);
    let mut keys: Vec<_> = hist.iter().collect();
    keys.sort();
    for (exps, &n) in keys {
        let exps = exps.iter().map(|&e| e as i32).collect();
        out = out.try_add(&IntPoly::monomial(&vars, exps, BigInt::from(n))).expect("same variables");
    }
    out
}

fn merge_histograms(into: &mut ColorHistogram, from: ColorHistogram) {
    for (k, n) in from {
        *into.entry(k).or_insert(0) += n;
    }
}

/// Σ colored weight over every partition in the box, in q, r, s, t.
pub fn colored_gf_box(shape: BoxShape, exec: Exec) -> IntPoly {
    let chunks = scan_boxed(shape, exec, ColorHistogram::new, |hist, heights| {
        *hist.entry(color_counts_of(heights, shape.y)).or_insert(0) += 1;
    });
    let mut total = ColorHistogram::new();
    for chunk in chunks {
        merge_histograms(&mut total, chunk);
    }
    histogram_poly(&total)
}

/// A loop's trace with a², b², c² renamed to r, s, t.
pub fn loop_weight(l: &Loop) -> Result<IntPoly> {
    let trace = loop_trace(l)?;
    let vars = qrst();
    let var = |n: &str| IntPoly::var(&vars, n).expect("r, s, t are box variables");
    let (r, s, t) = (var("r"), var("s"), var("t"));
    trace.substitute(&vars, &[("a", 2, &r), ("b", 2, &s), ("c", 2, &t)])
}

fn empty_height_sum(coarse: BoxShape) -> Result<i64> {
    Ok(2 * matching_of(&PlanePartition::empty(), coarse)?.height_sum())
}

fn big_q() -> IntPoly {
    IntPoly::monomial(&qrst(), smallvec::smallvec![1, 1, 1, 1], BigInt::from(1))
}

/// The SL₂ double dimer weight of a configuration on the coarse box:
/// Q raised to its height excess over the all-doubled empty configuration,
/// times the renamed traces of its loops.
pub fn dd_weight(dd: &DoubleDimer, coarse: BoxShape) -> Result<IntPoly> {
    let excess = dd.height_sum() - empty_height_sum(coarse)?;
    let mut acc = big_q().powi(excess)?;
    for l in &dd.decompose().loops {
        acc = acc.try_mul(&loop_weight(l)?)?;
    }
    Ok(acc)
}

/// One fiber of the squish map with both sides of the measure identity.
#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub target: DoubleDimer,
    pub loops: usize,
    pub fiber_size: u64,
    /// Ordered pairs of coarse matchings overlaying to the target.
    pub ordered_pairs: u64,
    /// Colored generating function of the fiber.
    pub lhs: IntPoly,
    /// SL₂ double dimer weight of the target.
    pub rhs: IntPoly,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MeasureReport {
    pub shape: BoxShape,
    pub fibers: Vec<FiberReport>,
    /// Σ fiber sizes; the number of partitions in the box.
    pub total_members: u64,
    pub colored_total: IntPoly,
    pub weight_total: IntPoly,
    pub global_equal: bool,
    /// Every target with ℓ loops came from 2^ℓ ordered pairs.
    pub pair_counts_ok: bool,
    /// A common monomial c with lhs = c·rhs on every fiber, when the
    /// fibers disagree by exactly such a factor.
    pub calibration: Option<IntPoly>,
}

impl MeasureReport {
    pub fn all_equal(&self) -> bool {
        self.fibers.iter().all(|f| f.equal) && self.global_equal && self.pair_counts_ok
    }
}

/// Every double dimer configuration of the coarse box arising as an
/// overlay, with the number of ordered matching pairs producing it.
pub fn double_dimer_targets(coarse: BoxShape, exec: Exec) -> Result<Vec<(DoubleDimer, u64)>> {
    let matchings: Vec<Matching> = enumerate_boxed(coarse).map(|p| matching_of(&p, coarse)).collect::<Result<_>>()?;
    let rows = exec.map(&matchings, |m1| -> Result<BTreeMap<DoubleDimer, u64>> {
        let mut local = BTreeMap::new();
        for m2 in &matchings {
            *local.entry(overlay(m1, m2)?).or_insert(0) += 1;
        }
        Ok(local)
    });
    let mut out: BTreeMap<DoubleDimer, u64> = BTreeMap::new();
    for row in rows {
        for (dd, n) in row? {
            *out.entry(dd).or_insert(0) += n;
        }
    }
    Ok(out.into_iter().collect())
}

/// Groups every partition of the fine box by its squish and compares each
/// fiber's colored generating function to the target's SL₂ weight.
pub fn measure_check(shape: BoxShape, exec: Exec) -> Result<MeasureReport> {
    let coarse = shape.halved()?;
    type Groups = HashMap<BTreeMap<HexEdge, u8>, ColorHistogram>;
    let chunks = scan_boxed(
        shape,
        exec,
        || Ok(Groups::new()),
        |acc: &mut Result<Groups>, heights| {
            let Ok(groups) = acc else { return };
            match squish_multiset(&matching_edges(heights, shape)) {
                Ok(mult) => {
                    *groups.entry(mult).or_default().entry(color_counts_of(heights, shape.y)).or_insert(0) += 1;
                }
                Err(e) => *acc = Err(e),
            }
        },
    );
    let mut groups = Groups::new();
    for chunk in chunks {
        for (k, hist) in chunk? {
            merge_histograms(groups.entry(k).or_default(), hist);
        }
    }
    let targets = double_dimer_targets(coarse, exec)?;
    for key in groups.keys() {
        if !targets.iter().any(|(dd, _)| dd.multiplicities() == key) {
            return Err(Error::InternalInvariant("a squish is not an overlay of coarse matchings".into()));
        }
    }
    let fibers: Vec<Result<FiberReport>> = exec.map(&targets, |(dd, pairs)| {
        let hist = groups.get(dd.multiplicities());
        let lhs = hist.map(histogram_poly).unwrap_or_else(|| IntPoly::zero(&qrst()));
        let rhs = dd_weight(dd, coarse)?;
        Ok(FiberReport {
            target: dd.clone(),
            loops: dd.decompose().loops.len(),
            fiber_size: hist.map(|h| h.values().sum()).unwrap_or(0),
            ordered_pairs: *pairs,
            equal: lhs == rhs,
            lhs,
            rhs,
        })
    });
    let fibers = fibers.into_iter().collect::<Result<Vec<_>>>()?;
    let zero = IntPoly::zero(&qrst());
    let colored_total = fibers.iter().try_fold(zero.clone(), |acc, f| acc.try_add(&f.lhs))?;
    let weight_total = fibers.iter().try_fold(zero, |acc, f| acc.try_add(&f.rhs))?;
    let calibration = if fibers.iter().all(|f| f.equal) { None } else { common_ratio(&fibers) };
    Ok(MeasureReport {
        shape,
        total_members: fibers.iter().map(|f| f.fiber_size).sum(),
        global_equal: colored_total == weight_total,
        pair_counts_ok: fibers.iter().all(|f| f.ordered_pairs == 1u64 << f.loops),
        colored_total,
        weight_total,
        fibers,
        calibration,
    })
}

/// The monomial m with lhs = m·rhs on every fiber, if there is one.
fn common_ratio(fibers: &[FiberReport]) -> Option<IntPoly> {
    let first = fibers.iter().find(|f| !f.rhs.is_zero())?;
    let (le, lc) = first.lhs.terms().next_back()?;
    let (re, rc) = first.rhs.terms().next_back()?;
    if lc != rc {
        return None;
    }
    let exps = le.iter().zip(re.iter()).map(|(a, b)| a - b).collect();
    let m = IntPoly::monomial(first.lhs.vars(), exps, BigInt::from(1));
    fibers.iter().all(|f| f.rhs.try_mul(&m).is_ok_and(|p| p == f.lhs)).then_some(m)
}

/// Values substituted for q, r, s, t, all in one variable list.
#[derive(Clone, Debug)]
pub struct ZqArgs {
    pub q: IntPoly,
    pub r: IntPoly,
    pub s: IntPoly,
    pub t: IntPoly,
}

impl ZqArgs {
    /// The generic series in q, r, s, t.
    pub fn generic() -> Self {
        let vars = qrst();
        let v = |n: &str| IntPoly::var(&vars, n).expect("known variable");
        ZqArgs { q: v("q"), r: v("r"), s: v("s"), t: v("t") }
    }

    /// r = s = t = `value`, a polynomial in q alone.
    pub fn diagonal(value: &IntPoly) -> Result<Self> {
        let vars = Vars::new(&["q"]);
        let value = value.with_vars(&vars)?;
        Ok(ZqArgs { q: IntPoly::var(&vars, "q")?, r: value.clone(), s: value.clone(), t: value })
    }
}

/// M(1,Q)⁴ · M̃(rs,Q) M̃(st,Q) M̃(tr,Q) / (M̃(−r,Q) M̃(−s,Q) M̃(−t,Q) M̃(−rst,Q))
/// with Q = qrst, evaluated factor by factor at the given arguments and
/// truncated to the budget's total degree.
pub fn zq_at(args: &ZqArgs, budget: SeriesBudget) -> Result<IntPoly> {
    let ZqArgs { q, r, s, t } = args;
    let rs = r.try_mul(s)?;
    let rst = rs.try_mul(t)?;
    let big_q = q.try_mul(&rst)?;
    let one = IntPoly::one(q.vars());
    let mut acc = macmahon_power(MacMahonKind::M, &one, &big_q, 4, budget)?;
    for arg in [rs, s.try_mul(t)?, t.try_mul(r)?] {
        acc = budget.mul(&acc, &macmahon_power(MacMahonKind::MTilde, &arg, &big_q, 1, budget)?)?;
    }
    for arg in [r.neg(), s.neg(), t.neg(), rst.neg()] {
        acc = budget.mul(&acc, &macmahon_power(MacMahonKind::MTilde, &arg, &big_q, -1, budget)?)?;
    }
    Ok(acc)
}

/// The generic truncated Z_Q in q, r, s, t.
pub fn zq_series(budget: SeriesBudget) -> Result<IntPoly> {
    zq_at(&ZqArgs::generic(), budget)
}

/// Σ colored weight over every plane partition with at most `max_volume` cubes.
pub fn colored_sum_by_volume(max_volume: u32) -> IntPoly {
    let vars = qrst();
    let mut hist = ColorHistogram::new();
    for n in 0..=max_volume {
        for p in crate::planepart::enumerate_by_volume(n) {
            *hist.entry(p.color_counts()).or_insert(0) += 1;
        }
    }
    let out = histogram_poly(&hist);
    debug_assert_eq!(out.vars(), &vars);
    out
}

/// Exact edge statistics for a coarse edge, over the fine box and its halving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeProbabilities {
    pub edge: HexEdge,
    /// Fraction of coarse matchings containing the edge.
    pub single: BigRational,
    /// Fraction of fine matchings containing both preimages.
    pub doubled: BigRational,
    /// Product of the two preimages' separate fine probabilities.
    pub preimage_product: BigRational,
}

pub fn edge_probabilities(shape: BoxShape, e: &HexEdge, exec: Exec) -> Result<EdgeProbabilities> {
    let coarse = shape.halved()?;
    if !region_edges(coarse).contains(e) {
        return Err(Error::EdgeOutsideRegion);
    }
    let [f1, f2] = preimages(e);
    let fine = scan_boxed(
        shape,
        exec,
        || [0u64; 4],
        |acc, heights| {
            let edges = matching_edges(heights, shape);
            let (a, b) = (edges.binary_search(&f1).is_ok(), edges.binary_search(&f2).is_ok());
            acc[0] += 1;
            acc[1] += a as u64;
            acc[2] += b as u64;
            acc[3] += (a && b) as u64;
        },
    )
    .into_iter()
    .fold([0u64; 4], |x, y| [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]]);
    let coarse_counts = scan_boxed(
        coarse,
        exec,
        || [0u64; 2],
        |acc, heights| {
            acc[0] += 1;
            acc[1] += matching_edges(heights, coarse).binary_search(e).is_ok() as u64;
        },
    )
    .into_iter()
    .fold([0u64; 2], |x, y| [x[0] + y[0], x[1] + y[1]]);
    let ratio = |a: u64, b: u64| BigRational::new(a.into(), b.into());
    Ok(EdgeProbabilities {
        edge: *e,
        single: ratio(coarse_counts[1], coarse_counts[0]),
        doubled: ratio(fine[3], fine[0]),
        preimage_product: ratio(fine[1], fine[0]) * ratio(fine[2], fine[0]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::honeycomb::{EdgeClass, HexCoord};
    use crate::planepart::macmahon_box_gf;
    use num_traits::One;

    fn poly(text: &str) -> IntPoly {
        IntPoly::parse(&qrst(), text).unwrap()
    }

    const GF_222: &str = "1 + q + q*r + q*s + q*t + q*r*s + q*r*t + q*s*t + 4*q*r*s*t + q*r^2*s*t \
        + q*r*s^2*t + q*r*s*t^2 + q*r^2*s^2*t + q*r^2*s*t^2 + q*r*s^2*t^2 + q*r^2*s^2*t^2 \
        + q^2*r^2*s^2*t^2";

    const HEX_18: &str = "q*r^2*s^2*t^2 + q*r^2*s^2*t + q*r^2*s*t^2 + q*r*s^2*t^2 + q*r^2*s*t \
        + q*r*s^2*t + q*r*s*t^2 + 4*q*r*s*t + q*r*s + q*r*t + q*s*t + q*r + q*s + q*t + q";

    #[test]
    fn unit_box() {
        assert_eq!(colored_gf_box(BoxShape::new(1, 1, 1), Exec::Sequential), poly("1 + q"));
    }

    #[test]
    fn box_222_matches_listed_polynomial() {
        let gf = colored_gf_box(BoxShape::new(2, 2, 2), Exec::default());
        assert_eq!(gf, poly(GF_222));
        assert_eq!(gf.coefficient_sum(), BigInt::from(20));
    }

    #[test]
    fn box_224_has_105_terms() {
        let gf = colored_gf_box(BoxShape::new(2, 2, 4), Exec::default());
        assert_eq!(gf.coefficient_sum(), BigInt::from(105));
    }

    #[test]
    fn diagonal_specialization_is_volume_gf() {
        let q = IntPoly::var(&Vars::new(&["q"]), "q").unwrap();
        for shape in [BoxShape::new(2, 2, 2), BoxShape::new(2, 3, 1), BoxShape::new(3, 2, 2)] {
            let gf = colored_gf_box(shape, Exec::Sequential);
            let spec = gf.substitute(q.vars(), &[("r", 1, &q), ("s", 1, &q), ("t", 1, &q)]).unwrap();
            assert_eq!(spec, macmahon_box_gf(shape));
        }
    }

    #[test]
    fn empty_configuration_weighs_one() {
        let coarse = BoxShape::new(1, 1, 1);
        let m = matching_of(&PlanePartition::empty(), coarse).unwrap();
        let dd = overlay(&m, &m).unwrap();
        assert_eq!(dd_weight(&dd, coarse).unwrap(), poly("1"));
    }

    #[test]
    fn hexagon_configuration_weighs_18_terms() {
        let coarse = BoxShape::new(1, 1, 1);
        let empty = matching_of(&PlanePartition::empty(), coarse).unwrap();
        let full = matching_of(&PlanePartition::from_rows(&[vec![1]]).unwrap(), coarse).unwrap();
        let dd = overlay(&empty, &full).unwrap();
        let w = dd_weight(&dd, coarse).unwrap();
        assert_eq!(w, poly(HEX_18));
        assert_eq!(w.coefficient_sum(), BigInt::from(18));
    }

    #[test]
    fn measure_222() {
        let report = measure_check(BoxShape::new(2, 2, 2), Exec::default()).unwrap();
        assert!(report.all_equal());
        assert_eq!(report.fibers.len(), 3);
        assert_eq!(report.total_members, 20);
        let mut rhs: Vec<String> = report.fibers.iter().map(|f| f.rhs.to_string()).collect();
        rhs.sort();
        let mut expected = vec!["1".to_string(), poly(HEX_18).to_string(), "q^2*r^2*s^2*t^2".to_string()];
        expected.sort();
        assert_eq!(rhs, expected);
        assert_eq!(report.colored_total, poly(GF_222));
        assert!(report.calibration.is_none());
    }

    #[test]
    fn measure_224() {
        let report = measure_check(BoxShape::new(2, 2, 4), Exec::default()).unwrap();
        assert!(report.all_equal());
        assert_eq!(report.fibers.len(), 6);
        assert_eq!(report.colored_total.coefficient_sum(), BigInt::from(105));
        let sizes: Vec<String> = report.fibers.iter().map(|f| f.lhs.len().to_string()).collect();
        assert!(report.fibers.iter().any(|f| f.loops == 1 && f.fiber_size == 66), "{sizes:?}");
    }

    #[test]
    fn pair_counts_are_powers_of_two() {
        for (dd, n) in double_dimer_targets(BoxShape::new(1, 2, 2), Exec::Sequential).unwrap() {
            assert_eq!(n, 1 << dd.decompose().loops.len());
        }
    }

    #[test]
    fn zq_matches_brute_force() {
        let budget = SeriesBudget::new(6);
        assert_eq!(zq_series(budget).unwrap(), colored_sum_by_volume(6));
    }

    #[test]
    fn zq_diagonal_counts() {
        let q = IntPoly::var(&Vars::new(&["q"]), "q").unwrap();
        let z = zq_at(&ZqArgs::diagonal(&q).unwrap(), SeriesBudget::new(8)).unwrap();
        let counts: Vec<BigInt> = (0..=8).map(|n| z.coeff(&[n])).collect();
        let expected: Vec<BigInt> = [1, 1, 3, 6, 13, 24, 48, 86, 160].into_iter().map(BigInt::from).collect();
        assert_eq!(counts, expected);
    }

    #[test]
    fn zq_at_minus_one_is_squared_macmahon() {
        let vars = Vars::new(&["q"]);
        let minus_one = IntPoly::from_int(&vars, -1);
        let budget = SeriesBudget::new(8);
        let z = zq_at(&ZqArgs::diagonal(&minus_one).unwrap(), budget).unwrap();
        let minus_q = IntPoly::var(&vars, "q").unwrap().neg();
        let m = macmahon_power(MacMahonKind::M, &IntPoly::one(&vars), &minus_q, 1, budget).unwrap();
        assert_ne!(z, m);
        assert_eq!(z, budget.mul(&m, &m).unwrap());
    }

    #[test]
    fn unit_box_probabilities() {
        let shape = BoxShape::new(2, 2, 2);
        let horizontal =
            region_edges(BoxShape::new(1, 1, 1)).into_iter().filter(|e| e.class() == EdgeClass::K).collect::<Vec<_>>();
        assert!(!horizontal.is_empty());
        for e in &horizontal {
            let p = edge_probabilities(shape, e, Exec::Sequential).unwrap();
            assert_eq!(p.single, BigRational::new(1.into(), 2.into()));
        }
        let far = HexEdge::from_class(HexCoord::new(40, 40), EdgeClass::K);
        assert_eq!(edge_probabilities(shape, &far, Exec::Sequential).unwrap_err(), Error::EdgeOutsideRegion);
    }

    #[test]
    fn forced_edge_has_probability_one() {
        let coarse = BoxShape::new(1, 1, 1);
        let all: Vec<Matching> = enumerate_boxed(coarse).map(|p| matching_of(&p, coarse).unwrap()).collect();
        let forced = region_edges(coarse).into_iter().find(|e| all.iter().all(|m| m.contains(e)));
        if let Some(e) = forced {
            let p = edge_probabilities(BoxShape::new(2, 2, 2), &e, Exec::Sequential).unwrap();
            assert!(p.single.is_one());
        }
    }
}
