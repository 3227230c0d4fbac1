//! Transfer matrices, the SL₂ connection on the three edge classes, loop
//! monodromy, turn words, and gauge normalization of edge weights.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{abc, int_mat, Coeff, Cyclotomic, GaussPoly, Gaussian, IntPoly, Mat2, Ring};
use crate::error::{Error, Result};
use crate::honeycomb::{EdgeClass, HexEdge, HexVertex, VertexKind};
use crate::squish::{even_edge_image, Loop};

/// The three connection matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Greek {
    Alpha,
    Beta,
    Gamma,
}

/// Which matrix sits on each edge class: α on northeast/southwest edges,
/// β on northwest/southeast edges, γ on horizontal edges.
pub fn greek_of(class: EdgeClass) -> Greek {
    match class {
        EdgeClass::J => Greek::Alpha,
        EdgeClass::I => Greek::Beta,
        EdgeClass::K => Greek::Gamma,
    }
}

/// One factor of a monodromy product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeSymbol {
    pub greek: Greek,
    pub inverse: bool,
}

impl fmt::Display for EdgeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.greek {
            Greek::Alpha => "α",
            Greek::Beta => "β",
            Greek::Gamma => "γ",
        };
        write!(f, "{g}{}", if self.inverse { "⁻¹" } else { "" })
    }
}

/// Rule choosing Γ(e) or Γ(e)⁻¹ for a traversal direction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// Slanted edges use Γ going north, horizontal edges use Γ going west.
    #[default]
    Geometric,
    /// Γ from the west-pointing endpoint to the east-pointing one. Kept for
    /// comparison; it alternates around every hexagon.
    Bipartite,
}

impl Orientation {
    /// Whether traversing `e` from `from` to `to` uses Γ(e) itself.
    pub fn forward(self, from: &HexVertex, to: &HexVertex, e: &HexEdge) -> bool {
        match self {
            Orientation::Geometric => {
                let (p, q) = (from.draw3(), to.draw3());
                match e.class() {
                    EdgeClass::K => q.0 < p.0,
                    EdgeClass::I | EdgeClass::J => q.1 > p.1,
                }
            }
            Orientation::Bipartite => from.kind == VertexKind::West,
        }
    }
}

/// An SL₂ connection: one matrix per class plus the orientation rule.
#[derive(Clone, Debug)]
pub struct Connection<T> {
    mats: [Mat2<T>; 3],
    invs: [Mat2<T>; 3],
    pub orientation: Orientation,
}

impl<T: Ring> Connection<T> {
    pub fn new(alpha: Mat2<T>, beta: Mat2<T>, gamma: Mat2<T>, orientation: Orientation) -> Result<Self> {
        let invs = [alpha.inverse()?, beta.inverse()?, gamma.inverse()?];
        Ok(Connection { mats: [alpha, beta, gamma], invs, orientation })
    }

    pub fn matrix(&self, sym: EdgeSymbol) -> &Mat2<T> {
        let idx = sym.greek as usize;
        if sym.inverse {
            &self.invs[idx]
        } else {
            &self.mats[idx]
        }
    }

    pub fn alpha(&self) -> &Mat2<T> {
        &self.mats[0]
    }

    pub fn beta(&self) -> &Mat2<T> {
        &self.mats[1]
    }

    pub fn gamma(&self) -> &Mat2<T> {
        &self.mats[2]
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        Connection { orientation, ..self.clone() }
    }

    /// Evaluates a word given in path order (first factor applied first).
    pub fn eval_path(&self, path: &[EdgeSymbol]) -> Mat2<T> {
        let id = Mat2::identity_like(&self.mats[0].e11);
        path.iter().fold(id, |acc, s| self.matrix(*s).mul(&acc))
    }

    /// The ordered product along the loop's counterclockwise traversal from
    /// its basepoint, later edges multiplying on the left.
    pub fn monodromy(&self, l: &Loop) -> Mat2<T> {
        self.eval_path(&edge_word(l, self.orientation))
    }

    /// Monodromy along an explicit closed vertex/edge sequence.
    pub fn monodromy_along(&self, vertices: &[HexVertex], edges: &[HexEdge]) -> Mat2<T> {
        self.eval_path(&path_word(vertices, edges, self.orientation))
    }
}

/// The symbols met along the loop, in path order.
pub fn edge_word(l: &Loop, orientation: Orientation) -> Vec<EdgeSymbol> {
    path_word(l.vertices(), l.edges(), orientation)
}

fn path_word(vertices: &[HexVertex], edges: &[HexEdge], orientation: Orientation) -> Vec<EdgeSymbol> {
    let n = vertices.len();
    (0..n)
        .map(|k| {
            let e = &edges[k];
            let forward = orientation.forward(&vertices[k], &vertices[(k + 1) % n], e);
            EdgeSymbol { greek: greek_of(e.class()), inverse: !forward }
        })
        .collect()
}

/// Renders a path-order word as a product read right to left.
pub fn word_text(path: &[EdgeSymbol]) -> String {
    path.iter().rev().map(ToString::to_string).collect()
}

/// L, R, J, A, B, C and α, β, γ over ℤ[i][a^±1, b^±1, c^±1].
#[derive(Clone, Debug)]
pub struct Constants {
    pub l: Mat2<GaussPoly>,
    pub r: Mat2<GaussPoly>,
    pub j: Mat2<GaussPoly>,
    pub a: Mat2<GaussPoly>,
    pub b: Mat2<GaussPoly>,
    pub c: Mat2<GaussPoly>,
    pub alpha: Mat2<GaussPoly>,
    pub beta: Mat2<GaussPoly>,
    pub gamma: Mat2<GaussPoly>,
}

fn gauss_int(n: i64) -> GaussPoly {
    GaussPoly::from_int(&abc(), n)
}

fn gauss_mat(rows: [[i64; 2]; 2]) -> Mat2<GaussPoly> {
    Mat2::new(gauss_int(rows[0][0]), gauss_int(rows[0][1]), gauss_int(rows[1][0]), gauss_int(rows[1][1]))
}

fn diag_var(name: &str, exp: i32) -> Mat2<GaussPoly> {
    let vars = abc();
    let x = GaussPoly::monomial_named(&vars, &[(name, exp)], Gaussian::one_coeff()).unwrap();
    let y = GaussPoly::monomial_named(&vars, &[(name, -exp)], Gaussian::one_coeff()).unwrap();
    Mat2::new(x, gauss_int(0), gauss_int(0), y)
}

impl Constants {
    fn build() -> Self {
        let l = gauss_mat([[0, 1], [1, 1]]);
        let r = gauss_mat([[1, 1], [1, 0]]);
        let j = gauss_mat([[1, 0], [0, -1]]);
        let a = diag_var("a", 1);
        let b = diag_var("b", -1);
        let c = diag_var("c", 1);
        let i = GaussPoly::constant(&abc(), Gaussian::i());
        let minus_i = i.neg();
        let alpha = a.mul(&j).scale(&i);
        let beta = r.mul(&b).mul(&l).mul(&j).scale(&i);
        let gamma = l.mul(&c).mul(&r).mul(&j).scale(&minus_i);
        Constants { l, r, j, a, b, c, alpha, beta, gamma }
    }

    /// The L and R of opposite handedness, with negative entries.
    pub fn alternate_turns() -> (Mat2<BigInt>, Mat2<BigInt>) {
        (int_mat([[0, 1], [1, -1]]), int_mat([[-1, 1], [1, 0]]))
    }
}

/// The shared symbolic constants.
pub fn constants() -> &'static Constants {
    static CELL: OnceLock<Constants> = OnceLock::new();
    CELL.get_or_init(Constants::build)
}

/// The symbolic connection with the default orientation.
pub fn symbolic() -> &'static Connection<GaussPoly> {
    static CELL: OnceLock<Connection<GaussPoly>> = OnceLock::new();
    CELL.get_or_init(|| {
        let k = constants();
        Connection::new(k.alpha.clone(), k.beta.clone(), k.gamma.clone(), Orientation::Geometric)
            .expect("alpha, beta, gamma have unit determinant")
    })
}

/// The connection at a = b = c = ζₙ, over ℤ[ζ_lcm(4,n)].
pub fn specialized(n: u32) -> Result<Connection<Cyclotomic>> {
    if ![1, 2, 3, 4, 6, 8].contains(&n) {
        return Err(Error::UnsupportedOrder(n));
    }
    let order = num_integer::lcm(4, n);
    let zeta = Cyclotomic::root(order, order / n)?;
    let values = [("a", zeta.clone()), ("b", zeta.clone()), ("c", zeta)];
    let k = constants();
    let eval = |m: &Mat2<GaussPoly>| m.try_map(|p| p.eval_cyclotomic(&values));
    Connection::new(eval(&k.alpha)?, eval(&k.beta)?, eval(&k.gamma)?, Orientation::Geometric)
}

/// Trace of the symbolic monodromy as an integer Laurent polynomial in a, b, c.
pub fn loop_trace(l: &Loop) -> Result<IntPoly> {
    symbolic()
        .monodromy(l)
        .trace()
        .into_integer()
        .map_err(|_| Error::Calibration("loop trace has an imaginary part".into()))
}

/// One named factor in a turn identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    L,
    R,
    J,
    A(bool),
    B(bool),
    C(bool),
    Greek(EdgeSymbol),
}

fn parse_factors(text: &str) -> Vec<Factor> {
    text.split_whitespace()
        .map(|tok| {
            let inv = tok.ends_with('\'');
            let g = |greek| Factor::Greek(EdgeSymbol { greek, inverse: inv });
            match tok.trim_end_matches('\'') {
                "L" => Factor::L,
                "R" => Factor::R,
                "J" => Factor::J,
                "A" => Factor::A(inv),
                "B" => Factor::B(inv),
                "C" => Factor::C(inv),
                "a" => g(Greek::Alpha),
                "b" => g(Greek::Beta),
                "g" => g(Greek::Gamma),
                other => panic!("unknown factor {other}"),
            }
        })
        .collect()
}

fn eval_factors(factors: &[Factor]) -> Mat2<GaussPoly> {
    let k = constants();
    let conn = symbolic();
    let inv = |m: &Mat2<GaussPoly>, flag: bool| if flag { m.inverse().unwrap() } else { m.clone() };
    factors.iter().fold(gauss_mat([[1, 0], [0, 1]]), |acc, f| {
        let m = match *f {
            Factor::L => k.l.clone(),
            Factor::R => k.r.clone(),
            Factor::J => k.j.clone(),
            Factor::A(i) => inv(&k.a, i),
            Factor::B(i) => inv(&k.b, i),
            Factor::C(i) => inv(&k.c, i),
            Factor::Greek(s) => conn.matrix(s).clone(),
        };
        acc.mul(&m)
    })
}

/// The twelve ways to step from one edge to the next, each as
/// (product of connection matrices, sign, product of transfer matrices),
/// written left to right. A trailing `'` marks an inverse; `a, b, g` are
/// α, β, γ.
pub const TURN_IDENTITIES: [(&str, i64, &str); 12] = [
    ("b a", -1, "R B L A"),
    ("a b", -1, "J A R B L J"),
    ("g b", 1, "L C L B L J"),
    ("b g", -1, "R B R C R J"),
    ("a' g", -1, "J A' L C R J"),
    ("g a'", -1, "L C R A'"),
    ("b' a'", -1, "R B' L A'"),
    ("a' b'", -1, "J A' R B' L J"),
    ("g' b'", 1, "L C' L B' L J"),
    ("b' g'", 1, "R B' R C' R J"),
    ("a g'", -1, "J A L C' R J"),
    ("g' a", -1, "L C' R A"),
];

#[derive(Clone, Debug, Serialize)]
pub struct TurnIdentityCheck {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    /// Whether the identity holds after flipping the sign of the right side.
    pub negated_holds: bool,
}

/// Checks each turn identity symbolically.
pub fn twelve_turn_identities() -> Vec<TurnIdentityCheck> {
    TURN_IDENTITIES
        .iter()
        .map(|&(lhs, sign, rhs)| {
            let left = eval_factors(&parse_factors(lhs));
            let right = eval_factors(&parse_factors(rhs)).scale(&gauss_int(sign));
            TurnIdentityCheck {
                lhs: lhs.to_string(),
                rhs: format!("{}{rhs}", if sign < 0 { "-" } else { "" }),
                holds: left == right,
                negated_holds: left == right.neg(),
            }
        })
        .collect()
}

/// Left or right turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Turn {
    L,
    R,
}

/// A word in L and R, stored as written: the rightmost letter is the first
/// turn of the path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TurnWord(pub Vec<Turn>);

impl TurnWord {
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| match c {
                'L' => Ok(Turn::L),
                'R' => Ok(Turn::R),
                other => Err(Error::Parse(format!("turn letter `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(TurnWord)
    }

    /// Product of the letters' matrices in written order.
    pub fn eval(&self) -> Mat2<BigInt> {
        let (l, r) = (int_mat([[0, 1], [1, 1]]), int_mat([[1, 1], [1, 0]]));
        self.0.iter().fold(int_mat([[1, 0], [0, 1]]), |acc, t| acc.mul(if *t == Turn::L { &l } else { &r }))
    }

    pub fn count(&self, turn: Turn) -> usize {
        self.0.iter().filter(|&&t| t == turn).count()
    }
}

impl fmt::Display for TurnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            f.write_str(if *t == Turn::L { "L" } else { "R" })?;
        }
        Ok(())
    }
}

/// Turns at successive vertices of the counterclockwise traversal.
pub fn turn_word(l: &Loop) -> TurnWord {
    let pts: Vec<(i64, i64)> = l.vertices().iter().map(HexVertex::draw3).collect();
    let n = pts.len();
    let mut turns: Vec<Turn> = (0..n)
        .map(|k| {
            let (p, q, r) = (pts[k], pts[(k + 1) % n], pts[(k + 2) % n]);
            let cross = (q.0 - p.0) * (r.1 - q.1) - (q.1 - p.1) * (r.0 - q.0);
            if cross > 0 {
                Turn::L
            } else {
                Turn::R
            }
        })
        .collect();
    turns.reverse();
    TurnWord(turns)
}

/// The snake word γ⁻¹(β⁻¹α⁻¹γα⁻¹)²γ(βαγ⁻¹α)² in path order.
pub fn snake_word() -> Vec<EdgeSymbol> {
    let s = |greek, inverse| EdgeSymbol { greek, inverse };
    let (a, b, g) = (Greek::Alpha, Greek::Beta, Greek::Gamma);
    let inner = [s(b, true), s(a, true), s(g, false), s(a, true)];
    let tail = [s(b, false), s(a, false), s(g, true), s(a, false)];
    let mut written = vec![s(g, true)];
    written.extend(inner);
    written.extend(inner);
    written.push(s(g, false));
    written.extend(tail);
    written.extend(tail);
    written.reverse();
    written
}

/// The snake word at a = b = c = 1, as an integer matrix.
pub fn snake_monodromy_check() -> Result<Mat2<BigInt>> {
    let conn = specialized(1)?;
    conn.eval_path(&snake_word()).try_map(|x| {
        x.as_integer().cloned().ok_or_else(|| Error::Calibration("snake product is not an integer matrix".into()))
    })
}

/// Gauge-normalized edge weights.
#[derive(Clone, Debug)]
pub struct GaugeOutcome {
    /// Weights after dividing each non-center propeller vertex by its
    /// propeller edge weight.
    pub normalized: BTreeMap<HexEdge, BigRational>,
    /// The constant every matching weight was multiplied by.
    pub global_factor: BigRational,
    pub pairs: Vec<PairWeight>,
}

/// A squished pair (e₁, e₂) → e with w(e) = √(w(e₁)w(e₂)) and
/// w̃(eᵢ) = w(eᵢ)/w(e). Square roots are kept as squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWeight {
    pub coarse: HexEdge,
    pub fine: [HexEdge; 2],
    pub weight_sq: BigRational,
    pub ratio_sq: [BigRational; 2],
}

/// Gauge transformation of a positive weight function on a fine region.
pub fn gauge_normalize(weights: &BTreeMap<HexEdge, BigRational>) -> Result<GaugeOutcome> {
    for w in weights.values() {
        if w.is_zero() {
            return Err(Error::ZeroWeight);
        }
        if w.is_negative() {
            return Err(Error::NegativeWeight);
        }
    }
    let mut normalized = weights.clone();
    let mut global = BigRational::one();
    let vertices: std::collections::BTreeSet<HexVertex> = weights.keys().flat_map(|e| e.vertices()).collect();
    for v in &vertices {
        // A vertex touching an even hexagon has exactly one propeller edge.
        if !v.triple().iter().any(|h| h.is_even()) {
            continue;
        }
        let Some(prop) = v.edges().into_iter().find(|e| !e.a().is_even() && !e.b().is_even()) else {
            continue;
        };
        let Some(scale) = weights.get(&prop).cloned() else { continue };
        for e in v.edges() {
            if let Some(w) = normalized.get_mut(&e) {
                *w = &*w / &scale;
            }
        }
        global /= scale;
    }
    let mut by_coarse: BTreeMap<HexEdge, Vec<HexEdge>> = BTreeMap::new();
    for e in normalized.keys() {
        if let Some(c) = even_edge_image(e)? {
            by_coarse.entry(c).or_default().push(*e);
        }
    }
    let pairs = by_coarse
        .into_iter()
        .filter(|(_, fine)| fine.len() == 2)
        .map(|(coarse, fine)| {
            let (w1, w2) = (&normalized[&fine[0]], &normalized[&fine[1]]);
            PairWeight { coarse, fine: [fine[0], fine[1]], weight_sq: w1 * w2, ratio_sq: [w1 / w2, w2 / w1] }
        })
        .collect();
    Ok(GaugeOutcome { normalized, global_factor: global, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Vars;
    use crate::honeycomb::HexCoord;

    fn abc_poly(text: &str) -> IntPoly {
        IntPoly::parse(&abc(), text).unwrap()
    }

    #[test]
    fn determinants() {
        let k = constants();
        let one = gauss_int(1);
        for m in [&k.alpha, &k.beta, &k.gamma] {
            assert_eq!(m.det(), one);
        }
        for m in [&k.l, &k.r, &k.j] {
            assert_eq!(m.det(), gauss_int(-1));
        }
        assert!(k.j.mul(&k.j).is_identity());
    }

    #[test]
    fn explicit_entries() {
        let k = constants();
        let vars = abc();
        let i = Gaussian::i();
        let mono = |pw: &[(&str, i32)], c: Gaussian| GaussPoly::monomial_named(&vars, pw, c).unwrap();
        assert_eq!(k.alpha.e11, mono(&[("a", 1)], i.clone()));
        assert_eq!(k.alpha.e22, mono(&[("a", -1)], i.neg_ref()));
        let beta12 = mono(&[("b", 1)], i.neg_ref()).try_add(&mono(&[("b", -1)], i.neg_ref())).unwrap();
        assert_eq!(k.beta.e12, beta12);
        assert!(k.beta.e21.is_zero());
        assert!(k.gamma.e12.is_zero());
        assert_eq!(k.gamma.e22, mono(&[("c", 1)], i.clone()));
    }

    #[test]
    fn turn_identities_hold_up_to_one_sign() {
        let checks = twelve_turn_identities();
        let failing: Vec<_> = checks.iter().filter(|c| !c.holds).map(|c| c.lhs.as_str()).collect();
        assert_eq!(failing, ["b' g'"]);
        assert!(checks.iter().all(|c| c.holds || c.negated_holds));
    }

    #[test]
    fn hexagon_word_and_trace() {
        let l = Loop::around_hexagon(HexCoord::new(0, 0));
        let word = edge_word(&l, Orientation::Geometric);
        // Paper order (path order, starting at the bottom edge):
        // α, β, γ, α⁻¹, β⁻¹, γ⁻¹.
        let s = |greek, inverse| EdgeSymbol { greek, inverse };
        let expected = [
            s(Greek::Alpha, false),
            s(Greek::Beta, false),
            s(Greek::Gamma, false),
            s(Greek::Alpha, true),
            s(Greek::Beta, true),
            s(Greek::Gamma, true),
        ];
        assert!((0..6).any(|k| {
            let mut rotated = word.clone();
            rotated.rotate_left(k);
            rotated == expected
        }));
        let trace = loop_trace(&l).unwrap();
        let paper = abc_poly(
            "a^2*b^2*c^2 + a^2*b^2 + a^2*c^2 + b^2*c^2 + a^2 + b^2 + c^2 + a^-2 + b^-2 + c^-2 \
             + a^-2*b^-2 + a^-2*c^-2 + b^-2*c^-2 + a^-2*b^-2*c^-2 + 4",
        );
        assert_eq!(trace, paper);
        assert_eq!(trace.coefficient_sum(), BigInt::from(18));
    }

    #[test]
    fn bipartite_orientation_alternates() {
        let l = Loop::around_hexagon(HexCoord::new(0, 0));
        let word = edge_word(&l, Orientation::Bipartite);
        let inverses = word.iter().filter(|s| s.inverse).count();
        assert_eq!(inverses, 3);
        assert!(word.windows(2).all(|w| w[0].inverse != w[1].inverse));
    }

    #[test]
    fn trace_is_independent_of_basepoint_and_direction() {
        let l = Loop::around_hexagon(HexCoord::new(1, -2));
        let conn = symbolic();
        let base = conn.monodromy(&l).trace();
        for start in 0..l.len() {
            let (vs, es) = l.counterclockwise_from(start);
            assert_eq!(conn.monodromy_along(&vs, &es).trace(), base);
            let (vs, es) = l.clockwise_from(start);
            assert_eq!(conn.monodromy_along(&vs, &es).trace(), base);
        }
    }

    #[test]
    fn snake_word_matrix() {
        let m = snake_monodromy_check().unwrap();
        assert_eq!(m, int_mat([[1393, 576], [2208, 913]]));
        assert_eq!(m.trace(), BigInt::from(2306));
        assert_eq!(m.det(), BigInt::from(1));
        assert_eq!(word_text(&snake_word()), "γ⁻¹β⁻¹α⁻¹γα⁻¹β⁻¹α⁻¹γα⁻¹γβαγ⁻¹αβαγ⁻¹α");
    }

    #[test]
    fn snake_turn_word() {
        let w = TurnWord::parse("LLLRRLLRLLLLRRLLRL").unwrap();
        assert_eq!(w.eval(), int_mat([[337, 1152], [576, 1969]]));
        assert_eq!(w.eval().trace(), BigInt::from(2306));
    }

    #[test]
    fn hexagon_turn_word() {
        let l = Loop::around_hexagon(HexCoord::new(0, 0));
        let w = turn_word(&l);
        assert_eq!(w.to_string(), "LLLLLL");
        assert_eq!(w.eval().trace(), BigInt::from(18));
    }

    #[test]
    fn beta_at_fourth_root_is_minus_identity() {
        let conn = specialized(4).unwrap();
        let minus = Cyclotomic::from_int(4, -1).unwrap();
        assert!(conn.beta().is_scalar(&minus));
        assert!(conn.alpha().is_scalar(&minus));
        assert!(conn.gamma().is_scalar(&minus));
        let one = specialized(1).unwrap();
        let i = Cyclotomic::root(4, 1).unwrap();
        assert_eq!(one.alpha().e11, i);
        assert_eq!(one.alpha().e22, i.neg_ref());
    }

    #[test]
    fn alternate_turn_matrices_are_inverses() {
        let (l2, r2) = Constants::alternate_turns();
        let (l, r) = (int_mat([[0, 1], [1, 1]]), int_mat([[1, 1], [1, 0]]));
        assert_eq!(l2, r.inverse().unwrap());
        assert_eq!(r2, l.inverse().unwrap());
    }

    #[test]
    fn gauge_rejects_bad_weights() {
        let e = HexEdge::from_class(HexCoord::new(0, 0), EdgeClass::J);
        let mut w = BTreeMap::new();
        w.insert(e, BigRational::zero());
        assert_eq!(gauge_normalize(&w).unwrap_err(), Error::ZeroWeight);
        w.insert(e, BigRational::from_integer((-2).into()));
        assert_eq!(gauge_normalize(&w).unwrap_err(), Error::NegativeWeight);
    }

    #[test]
    fn constant_weights_normalize_to_unit_ratios() {
        let shape = crate::planepart::BoxShape::new(2, 2, 2);
        let w: BTreeMap<HexEdge, BigRational> = crate::honeycomb::region_edges(shape)
            .into_iter()
            .map(|e| (e, BigRational::from_integer(3.into())))
            .collect();
        let out = gauge_normalize(&w).unwrap();
        assert!(!out.pairs.is_empty());
        for p in &out.pairs {
            assert!(p.ratio_sq.iter().all(|r| r.is_one()));
        }
    }

    #[test]
    fn vars_of_trace() {
        let t = loop_trace(&Loop::around_hexagon(HexCoord::new(0, 0))).unwrap();
        assert_eq!(t.vars(), &Vars::new(&["a", "b", "c"]));
    }
}
