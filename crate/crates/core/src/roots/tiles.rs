//! Bones, stones and snakes, and the four-element field that detects which
//! regions they can sign-tile.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::honeycomb::HexCoord;
use crate::squish::Loop;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TileKind {
    Bone,
    Stone,
    Snake,
}

/// A tile shape anchored so that its least cell is the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tile {
    pub name: &'static str,
    pub kind: TileKind,
    pub cells: Vec<HexCoord>,
}

impl Tile {
    fn new(name: &'static str, kind: TileKind, cells: &[(i32, i32)]) -> Self {
        let mut cells: Vec<HexCoord> = cells.iter().map(|&(u, v)| HexCoord::new(u, v)).collect();
        cells.sort();
        let base = cells[0];
        let cells = cells.into_iter().map(|c| c.minus(base)).collect();
        Tile { name, kind, cells }
    }

    pub fn placed(&self, at: HexCoord) -> impl Iterator<Item = HexCoord> + '_ {
        self.cells.iter().map(move |c| c.plus(at))
    }

    pub fn region(&self, at: HexCoord) -> BTreeSet<HexCoord> {
        self.placed(at).collect()
    }

    /// The tile's outline as a loop.
    pub fn boundary(&self) -> Result<Loop> {
        Loop::around_region(&self.region(HexCoord::new(0, 0)))
    }
}

/// The eleven tiles: three bones, two stones, six snakes.
///
/// Hexagon steps (1,0), (1,1), (0,1), (−1,0) point at −30°, 30°, 90° and
/// 150° in the drawing. Bones run along (1,1), (0,1) and (1,0). The two
/// stones surround a west-pointing and an east-pointing vertex. A snake is
/// a zigzag of four hexagons whose steps alternate between two neighboring
/// directions.
pub fn tile_catalog() -> &'static [Tile] {
    static CELL: OnceLock<Vec<Tile>> = OnceLock::new();
    CELL.get_or_init(|| {
        use TileKind::*;
        let mut tiles = vec![
            Tile::new("bone-0", Bone, &[(0, 0), (1, 1), (2, 2)]),
            Tile::new("bone-60", Bone, &[(0, 0), (0, 1), (0, 2)]),
            Tile::new("bone-120", Bone, &[(0, 0), (-1, 0), (-2, 0)]),
            Tile::new("stone-up", Stone, &[(0, 0), (1, 0), (1, 1)]),
            Tile::new("stone-down", Stone, &[(0, 0), (0, 1), (1, 1)]),
        ];
        const NAMES: [&str; 6] = ["snake-0", "snake-1", "snake-2", "snake-3", "snake-4", "snake-5"];
        let dirs = [(1, 0), (1, 1), (0, 1), (-1, 0)];
        for k in 0..3 {
            let (d, e) = (dirs[k], dirs[k + 1]);
            let zig = [(0, 0), d, (d.0 + e.0, d.1 + e.1), (2 * d.0 + e.0, 2 * d.1 + e.1)];
            let zag = [(0, 0), e, (d.0 + e.0, d.1 + e.1), (d.0 + 2 * e.0, d.1 + 2 * e.1)];
            tiles.push(Tile::new(NAMES[2 * k], Snake, &zig));
            tiles.push(Tile::new(NAMES[2 * k + 1], Snake, &zag));
        }
        tiles
    })
}

/// The field with four elements, stored as `a + bω` in the low two bits,
/// with ω² = ω + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct F4(u8);

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);
    pub const OMEGA: F4 = F4(2);

    pub fn omega_pow(k: i64) -> F4 {
        match k.rem_euclid(3) {
            0 => F4::ONE,
            1 => F4::OMEGA,
            _ => F4(3),
        }
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for F4 {
    type Output = F4;

    // Characteristic two: addition is bitwise exclusive or.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F4) -> F4 {
        F4(self.0 ^ rhs.0)
    }
}

impl std::ops::Mul for F4 {
    type Output = F4;

    fn mul(self, rhs: F4) -> F4 {
        let (a, b) = (self.0 & 1, self.0 >> 1);
        let (c, d) = (rhs.0 & 1, rhs.0 >> 1);
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd(ω + 1)
        let re = (a & c) ^ (b & d);
        let im = (a & d) ^ (b & c) ^ (b & d);
        F4(re | (im << 1))
    }
}

impl std::fmt::Display for F4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(["0", "1", "w", "w+1"][self.0 as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{edge_word, word_text, Orientation};

    #[test]
    fn eleven_tiles() {
        let cat = tile_catalog();
        assert_eq!(cat.len(), 11);
        let count = |k| cat.iter().filter(|t| t.kind == k).count();
        assert_eq!((count(TileKind::Bone), count(TileKind::Stone), count(TileKind::Snake)), (3, 2, 6));
        for t in cat {
            let expected = if t.kind == TileKind::Snake { 4 } else { 3 };
            assert_eq!(t.cells.len(), expected, "{}", t.name);
        }
    }

    #[test]
    fn shapes_are_distinct_up_to_translation() {
        let cat = tile_catalog();
        for (i, a) in cat.iter().enumerate() {
            for b in &cat[i + 1..] {
                assert_ne!(a.cells, b.cells, "{} vs {}", a.name, b.name);
            }
        }
    }

    #[test]
    fn boundary_lengths() {
        for t in tile_catalog() {
            let expected = match t.kind {
                TileKind::Bone => 14,
                TileKind::Stone => 12,
                TileKind::Snake => 18,
            };
            assert_eq!(t.boundary().unwrap().len(), expected, "{}", t.name);
        }
    }

    fn rotations(word: &str) -> Vec<String> {
        let chars: Vec<char> = word.chars().collect();
        // Split into symbols: a Greek letter with an optional ⁻¹.
        let mut syms: Vec<String> = Vec::new();
        for c in chars {
            if c == '⁻' || c == '¹' {
                syms.last_mut().unwrap().push(c);
            } else {
                syms.push(c.to_string());
            }
        }
        (0..syms.len())
            .map(|k| {
                let mut r = syms.clone();
                r.rotate_left(k);
                r.concat()
            })
            .collect()
    }

    #[test]
    fn tile_words_match_reference_figures() {
        // Outline words for each tile, read right to left.
        let reference = [
            "γ⁻¹β⁻¹γ⁻¹β⁻¹γ⁻¹β⁻¹α⁻¹γβγβγβα",
            "γ⁻¹β⁻¹α⁻¹β⁻¹α⁻¹β⁻¹α⁻¹γβαβαβα",
            "β⁻¹α⁻¹γα⁻¹γα⁻¹γβαγ⁻¹αγ⁻¹αγ⁻¹",
            "γ⁻¹β⁻¹γ⁻¹β⁻¹α⁻¹γα⁻¹γβαβα",
            "β⁻¹α⁻¹β⁻¹α⁻¹γβγβαγ⁻¹αγ⁻¹",
            "αγ⁻¹β⁻¹γ⁻¹αγ⁻¹β⁻¹γ⁻¹β⁻¹α⁻¹γβγα⁻¹γβγβ",
            "γ⁻¹β⁻¹α⁻¹β⁻¹γ⁻¹β⁻¹α⁻¹β⁻¹α⁻¹γβαβγβαβα",
            "γ⁻¹αγ⁻¹β⁻¹γ⁻¹αγ⁻¹β⁻¹α⁻¹γα⁻¹γβγα⁻¹γβα",
            "γ⁻¹β⁻¹γ⁻¹β⁻¹α⁻¹β⁻¹γ⁻¹β⁻¹α⁻¹γβγβαβγβα",
            "β⁻¹α⁻¹β⁻¹α⁻¹γα⁻¹β⁻¹α⁻¹γβαβαγ⁻¹αβαγ⁻¹",
            "γ⁻¹β⁻¹α⁻¹γα⁻¹β⁻¹α⁻¹γα⁻¹γβαγ⁻¹αβαγ⁻¹α",
        ];
        let ours: Vec<String> = tile_catalog()
            .iter()
            .map(|t| word_text(&edge_word(&t.boundary().unwrap(), Orientation::Geometric)))
            .collect();
        for word in reference {
            let rots = rotations(word);
            assert!(ours.iter().any(|w| rots.contains(w)), "no tile has outline word {word}; ours: {ours:?}");
        }
    }

    #[test]
    fn field_arithmetic() {
        let w = F4::OMEGA;
        assert_eq!(w * w, F4(3));
        assert_eq!(w * w * w, F4::ONE);
        assert_eq!(F4::ONE + w + w * w, F4::ZERO);
        for k in -6..6 {
            assert_eq!(F4::omega_pow(k) * F4::omega_pow(-k), F4::ONE);
        }
    }
}
