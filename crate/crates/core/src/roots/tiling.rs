//! Signed tilings by stones, bones and snakes, found by exact integer
//! elimination over a window of tile placements.
//!
//! The placements of all eleven tiles span, inside the free abelian group on
//! hexagons, exactly the kernel of the map sending hexagon (u, v) to
//! ω^(u+v) in the field with four elements. So a region has a signed tiling
//! iff its character vanishes; when it does not, that value is an obstruction
//! valid for every window.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::tiles::{tile_catalog, TileKind, F4};
use crate::error::{Error, Result};
use crate::honeycomb::HexCoord;

pub const DEFAULT_MARGIN: u32 = 3;
pub const MAX_MARGIN: u32 = 12;

/// One tile placed at an offset with an integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub tile: &'static str,
    pub offset: HexCoord,
    #[serde(serialize_with = "as_text")]
    pub coefficient: BigInt,
}

fn as_text<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TilingCertificate {
    pub placements: Vec<Placement>,
    /// Sum of stone coefficients, mod 2.
    pub stone_count_parity: u8,
    /// Window margin the solver needed.
    pub margin: u32,
}

impl TilingCertificate {
    /// Recomputes the signed cover and compares it with the region.
    pub fn verify(&self, region: &BTreeSet<HexCoord>) -> bool {
        let mut cover: BTreeMap<HexCoord, BigInt> = BTreeMap::new();
        for p in &self.placements {
            let Some(tile) = tile_catalog().iter().find(|t| t.name == p.tile) else { return false };
            for cell in tile.placed(p.offset) {
                *cover.entry(cell).or_default() += &p.coefficient;
            }
        }
        cover.retain(|_, c| !c.is_zero());
        cover.len() == region.len() && region.iter().all(|h| cover.get(h).is_some_and(One::is_one))
    }

    pub fn stone_sign(&self) -> i8 {
        if self.stone_count_parity == 0 {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum TilingOutcome {
    Certificate(TilingCertificate),
    /// No signed tiling in any window; `character` is the region's nonzero
    /// value in the four-element field.
    None {
        character: String,
    },
    /// Not found up to the largest window tried.
    Unknown {
        max_margin: u32,
    },
}

/// Hexagon (u, v) ↦ ω^(u+v); zero on every tile placement.
pub fn tiling_character(h: HexCoord) -> F4 {
    F4::omega_pow(h.u as i64 + h.v as i64)
}

pub fn region_character(region: &BTreeSet<HexCoord>) -> F4 {
    region.iter().fold(F4::ZERO, |acc, h| acc + tiling_character(*h))
}

/// Graph distance between hexagons.
pub fn hex_distance(a: HexCoord, b: HexCoord) -> u32 {
    let (du, dv) = (b.u - a.u, b.v - a.v);
    if (du >= 0) == (dv >= 0) {
        du.unsigned_abs().max(dv.unsigned_abs())
    } else {
        du.unsigned_abs() + dv.unsigned_abs()
    }
}

fn check_simply_connected(region: &BTreeSet<HexCoord>) -> Result<()> {
    let (umin, umax) = (region.iter().map(|h| h.u).min().unwrap() - 1, region.iter().map(|h| h.u).max().unwrap() + 1);
    let (vmin, vmax) = (region.iter().map(|h| h.v).min().unwrap() - 1, region.iter().map(|h| h.v).max().unwrap() + 1);
    let inside = |h: &HexCoord| (umin..=umax).contains(&h.u) && (vmin..=vmax).contains(&h.v);
    let start = HexCoord::new(umin, vmin);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        for n in h.neighbors() {
            if inside(&n) && !region.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    let outside = ((umax - umin + 1) * (vmax - vmin + 1)) as usize - region.len();
    if seen.len() == outside {
        Ok(())
    } else {
        Err(Error::NotSimplyConnected)
    }
}

fn window(region: &BTreeSet<HexCoord>, margin: u32) -> BTreeSet<HexCoord> {
    let m = margin as i32;
    let mut out = BTreeSet::new();
    for h in region {
        for du in -m..=m {
            for dv in -m..=m {
                let c = h.offset(du, dv);
                if hex_distance(*h, c) <= margin {
                    out.insert(c);
                }
            }
        }
    }
    out
}

type Sparse = BTreeMap<usize, BigInt>;

fn axpy(y: &mut Sparse, a: &BigInt, x: &Sparse) {
    for (k, v) in x {
        let e = y.entry(*k).or_default();
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

fn scaled(a: &BigInt, x: &Sparse) -> Sparse {
    if a.is_zero() {
        return Sparse::new();
    }
    x.iter().map(|(k, v)| (*k, a * v)).collect()
}

/// Integer row echelon basis of a lattice, each row remembering which
/// combination of generators produced it.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, (Sparse, Sparse)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Sparse, mut combo: Sparse) {
        while let Some((&p, c)) = v.iter().next() {
            let c = c.clone();
            let Some((row, row_combo)) = self.rows.get_mut(&p) else {
                if c.is_negative() {
                    v = scaled(&BigInt::from(-1), &v);
                    combo = scaled(&BigInt::from(-1), &combo);
                }
                self.rows.insert(p, (v, combo));
                return;
            };
            let a = row[&p].clone();
            if c.is_multiple_of(&a) {
                let q = -(&c / &a);
                axpy(&mut v, &q, row);
                axpy(&mut combo, &q, row_combo);
                continue;
            }
            // Replace the pivot row by a gcd combination and keep reducing
            // the leftover, whose leading entry cancels.
            let eg = a.extended_gcd(&c);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let mut new_row = scaled(&s, row);
            axpy(&mut new_row, &t, &v);
            let mut new_combo = scaled(&s, row_combo);
            axpy(&mut new_combo, &t, &combo);
            let (cg, ag) = (&c / &g, -(&a / &g));
            let mut rest = scaled(&cg, row);
            axpy(&mut rest, &ag, &v);
            let mut rest_combo = scaled(&cg, row_combo);
            axpy(&mut rest_combo, &ag, &combo);
            *row = new_row;
            *row_combo = new_combo;
            v = rest;
            combo = rest_combo;
        }
    }

    fn solve(&self, target: &Sparse) -> Option<Sparse> {
        let mut residual = target.clone();
        let mut combo = Sparse::new();
        while let Some((&p, c)) = residual.iter().next() {
            let (row, row_combo) = self.rows.get(&p)?;
            let a = &row[&p];
            if !c.is_multiple_of(a) {
                return None;
            }
            let q = c / a;
            axpy(&mut combo, &q, row_combo);
            axpy(&mut residual, &-q, row);
        }
        Some(combo)
    }
}

fn solve_in_window(region: &BTreeSet<HexCoord>, margin: u32) -> Option<TilingCertificate> {
    let win = window(region, margin);
    let index: BTreeMap<HexCoord, usize> = win.iter().enumerate().map(|(i, h)| (*h, i)).collect();
    let mut placements: Vec<(usize, HexCoord)> = Vec::new();
    let mut basis = Echelon::default();
    for (t, tile) in tile_catalog().iter().enumerate() {
        for &at in &win {
            let cells: Option<Vec<usize>> = tile.placed(at).map(|c| index.get(&c).copied()).collect();
            let Some(cells) = cells else { continue };
            let column: Sparse = cells.into_iter().map(|i| (i, BigInt::one())).collect();
            basis.insert(column, Sparse::from([(placements.len(), BigInt::one())]));
            placements.push((t, at));
        }
    }
    let target: Sparse = region.iter().map(|h| (index[h], BigInt::one())).collect();
    let combo = basis.solve(&target)?;
    let catalog = tile_catalog();
    let mut parity = BigInt::zero();
    let placed: Vec<Placement> = combo
        .into_iter()
        .map(|(k, coefficient)| {
            let (t, offset) = placements[k];
            if catalog[t].kind == TileKind::Stone {
                parity += &coefficient;
            }
            Placement { tile: catalog[t].name, offset, coefficient }
        })
        .collect();
    let stone_count_parity = if parity.is_even() { 0 } else { 1 };
    Some(TilingCertificate { placements: placed, stone_count_parity, margin })
}

fn single_tile(region: &BTreeSet<HexCoord>, margin: u32) -> Option<TilingCertificate> {
    let base = *region.first()?;
    let tile = tile_catalog().iter().find(|t| t.region(base) == *region)?;
    let stone_count_parity = u8::from(tile.kind == TileKind::Stone);
    let placement = Placement { tile: tile.name, offset: base, coefficient: BigInt::one() };
    Some(TilingCertificate { placements: vec![placement], stone_count_parity, margin })
}

/// A signed combination of placements summing to zero on every hexagon
/// with three stones: 3·stone-up equals a combination of nine bones.
/// Adding it to any certificate flips the stone parity.
pub fn odd_stone_relation(at: HexCoord) -> Vec<Placement> {
    const TERMS: [(&str, (i32, i32), i64); 8] = [
        ("stone-up", (0, 0), 3),
        ("bone-0", (0, 0), -2),
        ("bone-0", (1, 0), -1),
        ("bone-60", (2, 0), 2),
        ("bone-60", (3, 0), 1),
        ("bone-120", (0, 0), -1),
        ("bone-120", (1, 0), -1),
        ("bone-120", (1, 1), -1),
    ];
    TERMS
        .iter()
        .map(|&(tile, (u, v), c)| Placement { tile, offset: at.offset(u, v), coefficient: BigInt::from(c) })
        .collect()
}

impl TilingCertificate {
    /// The same signed cover with the opposite stone parity.
    pub fn with_flipped_parity(&self) -> TilingCertificate {
        let at = self.placements.first().map_or(HexCoord::new(0, 0), |p| p.offset);
        let mut sum: BTreeMap<(&'static str, HexCoord), BigInt> = BTreeMap::new();
        for p in self.placements.iter().cloned().chain(odd_stone_relation(at)) {
            *sum.entry((p.tile, p.offset)).or_default() += p.coefficient;
        }
        let placements = sum
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((tile, offset), coefficient)| Placement { tile, offset, coefficient })
            .collect();
        TilingCertificate { placements, stone_count_parity: 1 - self.stone_count_parity, margin: self.margin }
    }
}

/// Searches windows of margin `margin`, doubling up to [`MAX_MARGIN`].
pub fn signed_tiling(region: &BTreeSet<HexCoord>, margin: u32) -> Result<TilingOutcome> {
    if region.is_empty() {
        let empty = TilingCertificate { placements: Vec::new(), stone_count_parity: 0, margin };
        return Ok(TilingOutcome::Certificate(empty));
    }
    check_simply_connected(region)?;
    let character = region_character(region);
    if !character.is_zero() {
        return Ok(TilingOutcome::None { character: character.to_string() });
    }
    if let Some(cert) = single_tile(region, margin) {
        return Ok(TilingOutcome::Certificate(cert));
    }
    let mut m = margin;
    let tried = loop {
        if let Some(cert) = solve_in_window(region, m) {
            if !cert.verify(region) {
                return Err(Error::InternalInvariant("tiling certificate does not cover the region".into()));
            }
            return Ok(TilingOutcome::Certificate(cert));
        }
        if m == 0 || m * 2 > MAX_MARGIN.max(margin) {
            break m;
        }
        m *= 2;
    };
    Ok(TilingOutcome::Unknown { max_margin: tried })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn region(cells: &[(i32, i32)]) -> BTreeSet<HexCoord> {
        cells.iter().map(|&(u, v)| HexCoord::new(u, v)).collect()
    }

    #[test]
    fn character_kills_every_tile() {
        for t in tile_catalog() {
            for at in [HexCoord::new(0, 0), HexCoord::new(3, -5), HexCoord::new(-2, 7)] {
                assert!(region_character(&t.region(at)).is_zero(), "{}", t.name);
            }
        }
    }

    #[test]
    fn distances() {
        let o = HexCoord::new(0, 0);
        for n in o.neighbors() {
            assert_eq!(hex_distance(o, n), 1);
        }
        assert_eq!(hex_distance(o, HexCoord::new(2, 2)), 2);
        assert_eq!(hex_distance(o, HexCoord::new(2, -1)), 3);
    }

    #[test]
    fn single_tiles_certify_themselves() {
        for t in tile_catalog() {
            let r = t.region(HexCoord::new(1, 1));
            let TilingOutcome::Certificate(cert) = signed_tiling(&r, 1).unwrap() else {
                panic!("{} not tiled", t.name)
            };
            assert!(cert.verify(&r));
            let expected = if t.kind == TileKind::Stone { 1 } else { 0 };
            assert_eq!(cert.stone_count_parity, expected, "{}", t.name);
        }
    }

    #[test]
    fn single_hexagon_is_obstructed() {
        let out = signed_tiling(&region(&[(0, 0)]), DEFAULT_MARGIN).unwrap();
        assert!(matches!(out, TilingOutcome::None { .. }));
    }

    #[test]
    fn holes_are_rejected() {
        let ring: BTreeSet<HexCoord> = HexCoord::new(0, 0).neighbors().into_iter().collect();
        assert_eq!(signed_tiling(&ring, 1).unwrap_err(), Error::NotSimplyConnected);
    }

    #[test]
    fn seven_hexagon_flower() {
        let mut flower: BTreeSet<HexCoord> = HexCoord::new(0, 0).neighbors().into_iter().collect();
        flower.insert(HexCoord::new(0, 0));
        match signed_tiling(&flower, DEFAULT_MARGIN).unwrap() {
            TilingOutcome::Certificate(c) => assert!(c.verify(&flower)),
            TilingOutcome::None { character } => assert_ne!(character, "0"),
            TilingOutcome::Unknown { .. } => panic!("flower undecided"),
        }
    }

    #[test]
    fn odd_stone_relation_cancels() {
        let relation = TilingCertificate {
            placements: odd_stone_relation(HexCoord::new(4, -1)),
            stone_count_parity: 1,
            margin: 0,
        };
        assert!(relation.verify(&BTreeSet::new()));
        let stones: i64 = relation
            .placements
            .iter()
            .filter(|p| p.tile.starts_with("stone"))
            .map(|p| i64::try_from(&p.coefficient).unwrap())
            .sum();
        assert_eq!(stones % 2, 1);
    }

    #[test]
    fn flipped_certificates_still_verify() {
        for t in tile_catalog() {
            let r = t.region(HexCoord::new(2, 0));
            let TilingOutcome::Certificate(cert) = signed_tiling(&r, 1).unwrap() else { panic!() };
            let flipped = cert.with_flipped_parity();
            assert!(flipped.verify(&r), "{}", t.name);
            assert_ne!(flipped.stone_count_parity, cert.stone_count_parity);
        }
    }

    #[test]
    fn verify_rejects_tampering() {
        let r = tile_catalog()[0].region(HexCoord::new(0, 0));
        let TilingOutcome::Certificate(mut cert) = signed_tiling(&r, 1).unwrap() else { panic!() };
        cert.placements[0].coefficient += 1;
        assert!(!cert.verify(&r));
    }
}
