//! Randomized invariants shared by the property test suite and the
//! `verify` command: proptest strategies, plain predicates, and a seeded
//! runner.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use serde::Serialize;

use crate::algebra::{qrst, Cyclotomic, Exps, IntPoly, Mat2, Ring, Vars, SUPPORTED_ORDERS};
use crate::connection::{gauge_normalize, symbolic, EdgeSymbol, Greek};
use crate::honeycomb::{matching_of, region_edges, HexCoord, HexEdge, Matching};
use crate::planepart::{enumerate_boxed, BoxShape, PlanePartition};
use crate::roots::connection_at;
use crate::squish::Loop;

/// Outcome of a predicate: `Err` carries a description of the violation.
pub type Verdict = std::result::Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

// ---------------------------------------------------------------------------
// Strategies

/// Sparse Laurent polynomials in q, r, s, t with small exponents.
pub fn int_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((prop::collection::vec(-3i32..=3, 4), -5i64..=5), 0..6).prop_map(|terms| {
        IntPoly::from_terms(&qrst(), terms.into_iter().map(|(e, c)| (Exps::from_vec(e), BigInt::from(c))))
            .expect("four exponents per term")
    })
}

fn cyclotomic_of(order: u32) -> impl Strategy<Value = Cyclotomic> {
    // Longer-than-reduced vectors exercise the reduction modulo Φₙ.
    prop::collection::vec(-6i64..=6, 0..9).prop_map(move |raw| {
        Cyclotomic::from_raw(order, raw.into_iter().map(BigInt::from).collect()).expect("supported order")
    })
}

/// Three cyclotomic integers of one randomly chosen order.
pub fn cyclotomic_triple() -> impl Strategy<Value = [Cyclotomic; 3]> {
    prop::sample::select(SUPPORTED_ORDERS.to_vec())
        .prop_flat_map(|order| [cyclotomic_of(order), cyclotomic_of(order), cyclotomic_of(order)])
}

pub fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    prop::sample::select(SUPPORTED_ORDERS.to_vec()).prop_flat_map(cyclotomic_of)
}

pub fn edge_word(max_len: usize) -> impl Strategy<Value = Vec<EdgeSymbol>> {
    let symbol = (prop::sample::select(vec![Greek::Alpha, Greek::Beta, Greek::Gamma]), any::<bool>())
        .prop_map(|(greek, inverse)| EdgeSymbol { greek, inverse });
    prop::collection::vec(symbol, 0..=max_len)
}

/// A root-of-unity order used by the specialized connection.
pub fn specialization_order() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 6, 8])
}

/// Outlines of random simply connected polyhexes grown by a random walk.
pub fn polyhex_loop(max_cells: usize) -> impl Strategy<Value = Loop> {
    prop::collection::vec(0usize..6, 0..max_cells).prop_filter_map("region has a hole", |steps| {
        let mut at = HexCoord::new(0, 0);
        let mut cells = BTreeSet::from([at]);
        for k in steps {
            at = at.neighbors()[k];
            cells.insert(at);
        }
        Loop::around_region(&cells).ok()
    })
}

/// A box with at most 64 cells and a random partition inside it.
pub fn boxed_partition() -> impl Strategy<Value = (BoxShape, PlanePartition)> {
    (1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(x, y, z)| {
        prop::collection::vec(0..=z as u32, x * y).prop_map(move |mut grid| {
            // Sorting every row and then every column leaves both sorted.
            for row in grid.chunks_mut(y) {
                row.sort_unstable_by(|a, b| b.cmp(a));
            }
            for j in 0..y {
                let mut col: Vec<u32> = (0..x).map(|i| grid[i * y + j]).collect();
                col.sort_unstable_by(|a, b| b.cmp(a));
                for (i, h) in col.into_iter().enumerate() {
                    grid[i * y + j] = h;
                }
            }
            let rows: Vec<Vec<u32>> = grid.chunks(y).map(<[u32]>::to_vec).collect();
            (BoxShape::new(x, y, z), PlanePartition::from_rows(&rows).expect("sorted grid"))
        })
    })
}

/// The box whose matchings the gauge property compares.
pub const GAUGE_BOX: BoxShape = BoxShape { x: 2, y: 2, z: 2 };

/// Positive rational weights on every edge of [`GAUGE_BOX`].
pub fn gauge_weights() -> impl Strategy<Value = BTreeMap<HexEdge, BigRational>> {
    let edges: Vec<HexEdge> = region_edges(GAUGE_BOX).into_iter().collect();
    prop::collection::vec((1i64..=9, 1i64..=9), edges.len()).prop_map(move |ws| {
        edges.iter().zip(ws).map(|(e, (n, d))| (*e, BigRational::new(n.into(), d.into()))).collect()
    })
}

// ---------------------------------------------------------------------------
// Predicates

/// Associativity, commutativity, distributivity, identities and negation.
pub fn ring_axioms<T: Ring>(a: &T, b: &T, c: &T) -> Verdict {
    let (zero, one) = (a.zero_like(), a.one_like());
    let checks = [
        ("additive associativity", a.add_ref(b).add_ref(c) == a.add_ref(&b.add_ref(c))),
        ("multiplicative associativity", a.mul_ref(b).mul_ref(c) == a.mul_ref(&b.mul_ref(c))),
        ("additive commutativity", a.add_ref(b) == b.add_ref(a)),
        ("multiplicative commutativity", a.mul_ref(b) == b.mul_ref(a)),
        ("distributivity", a.mul_ref(&b.add_ref(c)) == a.mul_ref(b).add_ref(&a.mul_ref(c))),
        ("additive identity", a.add_ref(&zero) == *a),
        ("multiplicative identity", a.mul_ref(&one) == *a),
        ("additive inverse", a.add_ref(&a.neg_ref()).vanishes()),
        ("subtraction", a.sub_ref(b) == a.add_ref(&b.neg_ref())),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(format!("{name} fails for {a:?}, {b:?}, {c:?}")),
        None => Ok(()),
    }
}

/// Canonical text parses back to the same polynomial.
pub fn laurent_round_trip(p: &IntPoly) -> Verdict {
    let text = p.to_string();
    let back = IntPoly::parse(p.vars(), &text).map_err(|e| format!("`{text}` does not parse: {e}"))?;
    ensure(back == *p, || format!("`{text}` parses to `{back}`"))
}

/// Reduction is idempotent, conjugation is an involution, and writing the
/// element as a polynomial in ζ and evaluating it gives the element back.
pub fn cyclotomic_round_trip(c: &Cyclotomic) -> Verdict {
    let order = c.order();
    let reduced = Cyclotomic::from_raw(order, c.coeffs().to_vec()).map_err(|e| e.to_string())?;
    ensure(reduced == *c, || format!("re-reducing {c} gives {reduced}"))?;
    ensure(c.conj().conj() == *c, || format!("conjugation is not an involution on {c}"))?;
    let vars = Vars::new(&["x"]);
    let mut poly = IntPoly::zero(&vars);
    for (k, coeff) in c.coeffs().iter().enumerate() {
        poly.push_term(Exps::from_slice(&[k as i32]), coeff.clone());
    }
    let zeta = Cyclotomic::root(order, 1).map_err(|e| e.to_string())?;
    let back = poly.eval_cyclotomic(&[("x", zeta)]).map_err(|e| e.to_string())?;
    ensure(back == *c, || format!("{poly} at ζ{order} gives {back}, expected {c}"))
}

fn det_is_one<T: Ring>(m: &Mat2<T>) -> bool {
    m.det().is_unity()
}

/// Any word in α, β, γ and their inverses has determinant one, symbolically
/// and at the given root of unity.
pub fn word_determinant(word: &[EdgeSymbol], n: u32) -> Verdict {
    let text = || word.iter().map(ToString::to_string).collect::<String>();
    ensure(det_is_one(&symbolic().eval_path(word)), || format!("symbolic det of `{}` is not 1", text()))?;
    let conn = connection_at(n).map_err(|e| e.to_string())?;
    ensure(det_is_one(&conn.eval_path(word)), || format!("det of `{}` at n = {n} is not 1", text()))
}

/// The monodromy trace does not depend on where the loop starts or which
/// way it is traversed. Small loops are also checked symbolically.
pub fn trace_invariance(l: &Loop, start: usize, n: u32) -> Verdict {
    let start = start % l.len();
    let conn = connection_at(n).map_err(|e| e.to_string())?;
    let base = conn.monodromy(l).trace();
    for (dir, (vs, es)) in
        [("counterclockwise", l.counterclockwise_from(start)), ("clockwise", l.clockwise_from(start))]
    {
        let t = conn.monodromy_along(&vs, &es).trace();
        ensure(t == base, || format!("{dir} from {start} at n = {n}: {t} vs {base} for {l:?}"))?;
    }
    if l.len() <= 14 {
        let conn = symbolic();
        let base = conn.monodromy(l).trace();
        let (vs, es) = l.clockwise_from(start);
        ensure(conn.monodromy_along(&vs, &es).trace() == base, || format!("symbolic trace moves for {l:?}"))?;
    }
    Ok(())
}

/// The horizontal-edge heights of a matching, less those of the empty
/// partition's matching, add up to the volume.
pub fn q_weight_is_volume(shape: BoxShape, p: &PlanePartition) -> Verdict {
    let m = matching_of(p, shape).map_err(|e| e.to_string())?;
    let empty = matching_of(&PlanePartition::empty(), shape).map_err(|e| e.to_string())?;
    let excess = m.height_sum() - empty.height_sum();
    ensure(excess == p.volume() as i64, || format!("{p} in {shape}: height excess {excess}, volume {}", p.volume()))
}

fn matching_weight(m: &Matching, w: &BTreeMap<HexEdge, BigRational>) -> BigRational {
    m.edges().iter().map(|e| w[e].clone()).product()
}

/// Gauge normalization rescales every matching weight by the same factor,
/// so all weight ratios survive it.
pub fn gauge_ratios(weights: &BTreeMap<HexEdge, BigRational>, matchings: &[Matching]) -> Verdict {
    let out = gauge_normalize(weights).map_err(|e| e.to_string())?;
    for m in matchings {
        let (before, after) = (matching_weight(m, weights), matching_weight(m, &out.normalized));
        ensure(after == &out.global_factor * &before, || {
            format!("matching {m:?}: {before} becomes {after}, global factor {}", out.global_factor)
        })?;
    }
    Ok(())
}

/// Every matching of [`GAUGE_BOX`].
pub fn gauge_matchings() -> Vec<Matching> {
    enumerate_boxed(GAUGE_BOX).map(|p| matching_of(&p, GAUGE_BOX).expect("boxed partition")).collect()
}

// ---------------------------------------------------------------------------
// Seeded runner

#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: u32,
    /// The minimal failing input's description, if any case failed.
    pub failure: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn run<S: Strategy>(
    name: &'static str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Verdict,
) -> PropertyOutcome {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let failure = runner.run(&strategy, |v| test(v).map_err(TestCaseError::fail)).err().map(|e| e.to_string());
    PropertyOutcome { name, cases, failure }
}

/// Runs every property suite with a fixed seed, `cases` cases each.
pub fn run_property_suites(cases: u32) -> Vec<PropertyOutcome> {
    let matchings = gauge_matchings();
    vec![
        run("ring axioms on Laurent polynomials", cases, (int_poly(), int_poly(), int_poly()), |(a, b, c)| {
            ring_axioms(&a, &b, &c)
        }),
        run("ring axioms on cyclotomic integers", cases, cyclotomic_triple(), |[a, b, c]| ring_axioms(&a, &b, &c)),
        run("Laurent text round-trip", cases, int_poly(), |p| laurent_round_trip(&p)),
        run("cyclotomic round-trip", cases, cyclotomic(), |c| cyclotomic_round_trip(&c)),
        run("SL2 determinants of random words", cases, (edge_word(8), specialization_order()), |(w, n)| {
            word_determinant(&w, n)
        }),
        run(
            "trace invariance under basepoint and direction",
            cases,
            (polyhex_loop(6), any::<usize>(), specialization_order()),
            |(l, start, n)| trace_invariance(&l, start, n),
        ),
        run("Q-weight equals volume", cases, boxed_partition(), |(shape, p)| q_weight_is_volume(shape, &p)),
        run("gauge invariance of weight ratios", cases, gauge_weights(), |w| gauge_ratios(&w, &matchings)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauge_box_has_twenty_matchings() {
        assert_eq!(gauge_matchings().len(), 20);
    }

    #[test]
    fn predicates_reject_bad_inputs() {
        let one = BigInt::from(1);
        assert!(ring_axioms(&one, &one, &one).is_ok());
        let p = IntPoly::parse(&qrst(), "q*r^-1 - 3*t^2").unwrap();
        assert!(laurent_round_trip(&p).is_ok());
        let partition = PlanePartition::from_rows(&[vec![2, 1]]).unwrap();
        assert!(q_weight_is_volume(BoxShape::new(1, 1, 1), &partition).is_err());
    }

    #[test]
    fn small_seeded_run_passes() {
        for outcome in run_property_suites(16) {
            assert!(outcome.passed(), "{}: {:?}", outcome.name, outcome.failure);
        }
    }
}
