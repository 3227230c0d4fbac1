//! Plane partitions: validation, boxed enumeration, MacMahon counts, the
//! four-color box weights, and downsampling to the half-scale box.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{qrst, IntPoly, Vars};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Side lengths of a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxShape {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl BoxShape {
    pub fn new(x: usize, y: usize, z: usize) -> Self {
        BoxShape { x, y, z }
    }

    pub fn cells(&self) -> usize {
        self.x * self.y * self.z
    }

    pub fn is_even(&self) -> bool {
        self.x.is_multiple_of(2) && self.y.is_multiple_of(2) && self.z.is_multiple_of(2)
    }

    pub fn halved(&self) -> Result<BoxShape> {
        if !self.is_even() {
            return Err(Error::OddBox { x: self.x, y: self.y, z: self.z });
        }
        Ok(BoxShape::new(self.x / 2, self.y / 2, self.z / 2))
    }

    pub fn doubled(&self) -> BoxShape {
        BoxShape::new(2 * self.x, 2 * self.y, 2 * self.z)
    }
}

/// Parses `x,y,z` or `xXyXz` (lowercase x as the separator).
impl std::str::FromStr for BoxShape {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let sides: Vec<&str> = text.split([',', 'x']).map(str::trim).collect();
        let bad = || Error::Parse(format!("box `{text}`: expected three sides such as 2,2,2"));
        let [x, y, z] = sides.as_slice() else { return Err(bad()) };
        let side = |s: &str| s.parse::<usize>().map_err(|_| bad());
        Ok(BoxShape::new(side(x)?, side(y)?, side(z)?))
    }
}

impl fmt::Display for BoxShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.x, self.y, self.z)
    }
}

/// A unit cube at 1-indexed position `(i, j, k)`; `k` is the height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxCell {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// The four box-label colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Q,
    R,
    S,
    T,
}

impl BoxCell {
    /// Color by the parities of `k - j` and `k - i`.
    pub fn color(&self) -> Color {
        let (a, b) = (self.k.abs_diff(self.j) % 2, self.k.abs_diff(self.i) % 2);
        match (a, b) {
            (0, 0) => Color::Q,
            (1, 0) => Color::R,
            (0, 1) => Color::S,
            _ => Color::T,
        }
    }
}

/// A weakly decreasing matrix of nonnegative integers, stored densely with
/// trailing zero rows and columns trimmed so equal partitions compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlanePartition {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl PlanePartition {
    pub fn empty() -> Self {
        PlanePartition::default()
    }

    /// Validates and normalizes a (possibly ragged) row list; missing entries
    /// count as zero.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut data = vec![0; rows.len() * cols];
        for (i, row) in rows.iter().enumerate() {
            data[i * cols..i * cols + row.len()].copy_from_slice(row);
        }
        let p = Self::from_dense(rows.len(), cols, data);
        p.validate()?;
        Ok(p)
    }

    /// Builds from a dense row-major grid without validation.
    pub(crate) fn from_dense(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        let mut p = PlanePartition { rows, cols, data };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let used_rows = (0..self.rows)
            .rev()
            .find(|&i| self.data[i * self.cols..(i + 1) * self.cols].iter().any(|&h| h > 0))
            .map_or(0, |i| i + 1);
        let used_cols = (0..self.cols)
            .rev()
            .find(|&j| (0..used_rows).any(|i| self.data[i * self.cols + j] > 0))
            .map_or(0, |j| j + 1);
        if used_rows == self.rows && used_cols == self.cols {
            return;
        }
        let mut data = Vec::with_capacity(used_rows * used_cols);
        for i in 0..used_rows {
            data.extend_from_slice(&self.data[i * self.cols..i * self.cols + used_cols]);
        }
        *self = PlanePartition { rows: used_rows, cols: used_cols, data };
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let h = self.data[i * self.cols + j];
                if j + 1 < self.cols && self.data[i * self.cols + j + 1] > h {
                    return Err(Error::InvalidPartition(format!("row {} increases at column {}", i + 1, j + 2)));
                }
                if i + 1 < self.rows && self.data[(i + 1) * self.cols + j] > h {
                    return Err(Error::InvalidPartition(format!("column {} increases at row {}", j + 1, i + 2)));
                }
            }
        }
        Ok(())
    }

    /// Number of nonzero rows.
    pub fn num_rows(&self) -> usize {
        self.rows
    }

    /// Number of nonzero columns.
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// `π(i, j)` with 1-indexed arguments; zero outside the stored extent.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            0
        } else {
            self.data[(i - 1) * self.cols + (j - 1)]
        }
    }

    pub fn max_entry(&self) -> u32 {
        self.data.first().copied().unwrap_or(0)
    }

    pub fn volume(&self) -> u64 {
        self.data.iter().map(|&h| h as u64).sum()
    }

    pub fn fits(&self, shape: BoxShape) -> bool {
        self.rows <= shape.x && self.cols <= shape.y && self.max_entry() as usize <= shape.z
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    /// The `shape.x × shape.y` height grid, row-major.
    pub fn heights_in(&self, shape: BoxShape) -> Result<Vec<u32>> {
        if !self.fits(shape) {
            return Err(Error::DoesNotFit { x: shape.x, y: shape.y, z: shape.z });
        }
        let mut out = vec![0; shape.x * shape.y];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i * shape.y + j] = self.data[i * self.cols + j];
            }
        }
        Ok(out)
    }

    pub fn cells(&self) -> impl Iterator<Item = BoxCell> + '_ {
        (0..self.rows).flat_map(move |i| {
            (0..self.cols).flat_map(move |j| {
                (1..=self.data[i * self.cols + j] as usize).map(move |k| BoxCell { i: i + 1, j: j + 1, k })
            })
        })
    }

    /// Count of cells of each color, in the order q, r, s, t.
    pub fn color_counts(&self) -> [u32; 4] {
        color_counts_of(&self.data, self.cols)
    }

    /// The product of the cell colors, a monomial in `q, r, s, t`.
    pub fn colored_weight(&self) -> IntPoly {
        let counts = self.color_counts();
        IntPoly::monomial(&qrst(), counts.iter().map(|&c| c as i32).collect(), BigInt::one())
    }

    /// Componentwise `self ≤ other`.
    pub fn is_below(&self, other: &PlanePartition) -> bool {
        (1..=self.rows).all(|i| (1..=self.cols).all(|j| self.entry(i, j) <= other.entry(i, j)))
    }

    /// The pair (π_min, π_max) on the half-scale grid: floor of half the
    /// block minimum and ceiling of half the block maximum over each 2×2
    /// block, zero-padding on the high-index side.
    pub fn downsample(&self) -> (PlanePartition, PlanePartition) {
        let (rows, cols) = (self.rows.div_ceil(2), self.cols.div_ceil(2));
        let mut lo = vec![0; rows * cols];
        let mut hi = vec![0; rows * cols];
        for big_i in 0..rows {
            for big_j in 0..cols {
                let block = [
                    self.entry(2 * big_i + 1, 2 * big_j + 1),
                    self.entry(2 * big_i + 1, 2 * big_j + 2),
                    self.entry(2 * big_i + 2, 2 * big_j + 1),
                    self.entry(2 * big_i + 2, 2 * big_j + 2),
                ];
                lo[big_i * cols + big_j] = block.iter().min().unwrap() / 2;
                hi[big_i * cols + big_j] = block.iter().max().unwrap().div_ceil(2);
            }
        }
        (Self::from_dense(rows, cols, lo), Self::from_dense(rows, cols, hi))
    }

    /// Replaces every cube by a 2×2×2 block.
    pub fn doubled(&self) -> PlanePartition {
        let (rows, cols) = (2 * self.rows, 2 * self.cols);
        let data = (0..rows * cols).map(|n| 2 * self.data[(n / cols / 2) * self.cols + (n % cols) / 2]).collect();
        Self::from_dense(rows, cols, data)
    }
}

pub(crate) fn color_counts_of(heights: &[u32], cols: usize) -> [u32; 4] {
    let mut counts = [0u32; 4];
    if cols == 0 {
        return counts;
    }
    for (n, &h) in heights.iter().enumerate() {
        let (i, j) = (n / cols + 1, n % cols + 1);
        // Within one stack, colors of k = 1..=h cycle with period 2 in k.
        for k in 1..=h as usize {
            let idx = (k.abs_diff(j) % 2) + 2 * (k.abs_diff(i) % 2);
            counts[idx] += 1;
        }
    }
    counts
}

impl fmt::Debug for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Serialize for PlanePartition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PlanePartition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(deserializer)?;
        PlanePartition::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Lexicographic stream of the height grids of all partitions in a box.
///
/// The grid is advanced like an odometer: the last cell that can still grow
/// is incremented and every later cell reset to zero, which always leaves a
/// valid partition.
#[derive(Clone, Debug)]
pub struct BoxedHeights {
    shape: BoxShape,
    heights: Vec<u32>,
    frozen: usize,
    started: bool,
    done: bool,
}

impl BoxedHeights {
    pub fn new(shape: BoxShape) -> Self {
        BoxedHeights { shape, heights: vec![0; shape.x * shape.y], frozen: 0, started: false, done: false }
    }

    /// Partitions whose first row is `first_row`; the row must be weakly
    /// decreasing with entries at most `shape.z`.
    pub fn with_first_row(shape: BoxShape, first_row: &[u32]) -> Self {
        let mut it = Self::new(shape);
        if shape.x == 0 || shape.y == 0 {
            return it;
        }
        it.heights[..shape.y].copy_from_slice(first_row);
        it.frozen = shape.y;
        it
    }

    fn bound(&self, n: usize) -> u32 {
        let y = self.shape.y;
        let mut b = self.shape.z as u32;
        if n >= y {
            b = b.min(self.heights[n - y]);
        }
        if !n.is_multiple_of(y) {
            b = b.min(self.heights[n - 1]);
        }
        b
    }

    /// Advances to the next grid; returns false once exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        for n in (self.frozen..self.heights.len()).rev() {
            if self.heights[n] < self.bound(n) {
                self.heights[n] += 1;
                for later in &mut self.heights[n + 1..] {
                    *later = 0;
                }
                return true;
            }
        }
        self.done = true;
        false
    }

    pub fn current(&self) -> &[u32] {
        &self.heights
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }
}

impl Iterator for BoxedHeights {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        self.advance().then(|| PlanePartition::from_dense(self.shape.x, self.shape.y, self.heights.clone()))
    }
}

/// Every plane partition in the box, once each, in lexicographic order of
/// the row-major height grid.
pub fn enumerate_boxed(shape: BoxShape) -> BoxedHeights {
    BoxedHeights::new(shape)
}

/// Weakly decreasing rows of length `y` with entries at most `z`, in
/// lexicographic order. These split a box enumeration into independent
/// chunks.
pub fn first_rows(shape: BoxShape) -> Vec<Vec<u32>> {
    if shape.x == 0 || shape.y == 0 {
        return vec![Vec::new()];
    }
    BoxedHeights::new(BoxShape::new(1, shape.y, shape.z))
        .map(|p| {
            let mut row = p.to_rows().pop().unwrap_or_default();
            row.resize(shape.y, 0);
            row
        })
        .collect()
}

/// Folds over every partition of the box, chunked by first row. Each chunk
/// folds sequentially from `init()`, and the chunk results come back in
/// enumeration order.
pub fn scan_boxed<A, Init, Step>(shape: BoxShape, exec: Exec, init: Init, step: Step) -> Vec<A>
where
    A: Send,
    Init: Fn() -> A + Sync + Send,
    Step: Fn(&mut A, &[u32]) + Sync + Send,
{
    if shape.x == 0 || shape.y == 0 {
        let mut acc = init();
        step(&mut acc, &[]);
        return vec![acc];
    }
    let rows = first_rows(shape);
    exec.map(&rows, |row| {
        let mut acc = init();
        let mut it = BoxedHeights::with_first_row(shape, row);
        while it.advance() {
            step(&mut acc, it.current());
        }
        acc
    })
}

/// Number of partitions in the box, by enumeration.
pub fn count_boxed(shape: BoxShape, exec: Exec) -> u64 {
    scan_boxed(shape, exec, || 0u64, |n, _| *n += 1).into_iter().sum()
}

/// Univariate coefficients of ∏ (1 - q^{i+j+z-1}) / (1 - q^{i+j-1}).
pub fn macmahon_box_coeffs(shape: BoxShape) -> Vec<BigInt> {
    let top = shape.cells();
    let mut poly = vec![BigInt::zero(); top + 1];
    poly[0] = BigInt::one();
    for i in 1..=shape.x {
        for j in 1..=shape.y {
            let (num, den) = (i + j + shape.z - 1, i + j - 1);
            // Multiply by (1 - q^num), then divide by (1 - q^den); the
            // division is exact, so running the geometric recurrence on the
            // truncated coefficients is enough.
            for n in (num..=top).rev() {
                let shifted = poly[n - num].clone();
                poly[n] -= shifted;
            }
            for n in den..=top {
                let shifted = poly[n - den].clone();
                poly[n] += shifted;
            }
        }
    }
    poly
}

/// The box generating function by volume, as a polynomial in `q`.
pub fn macmahon_box_gf(shape: BoxShape) -> IntPoly {
    let vars = Vars::new(&["q"]);
    let mut out = IntPoly::zero(&vars);
    for (n, c) in macmahon_box_coeffs(shape).into_iter().enumerate() {
        out.push_term(smallvec::smallvec![n as i32], c);
    }
    out
}

/// Every plane partition with exactly `n` cubes.
pub fn enumerate_by_volume(n: u32) -> Vec<PlanePartition> {
    fn rows_below(prev: &[u32], remaining: u32, acc: &mut Vec<Vec<u32>>, out: &mut Vec<PlanePartition>) {
        if remaining == 0 {
            out.push(PlanePartition::from_rows(acc).expect("generated rows are valid"));
            return;
        }
        let mut row = Vec::new();
        fill_row(prev, remaining, &mut row, acc, out);
    }

    fn fill_row(
        prev: &[u32],
        remaining: u32,
        row: &mut Vec<u32>,
        acc: &mut Vec<Vec<u32>>,
        out: &mut Vec<PlanePartition>,
    ) {
        let pos = row.len();
        let row_sum: u32 = row.iter().sum();
        if row_sum > 0 {
            acc.push(row.clone());
            rows_below(row, remaining - row_sum, acc, out);
            acc.pop();
        }
        if pos >= prev.len() {
            return;
        }
        let cap = prev[pos].min(row.last().copied().unwrap_or(u32::MAX)).min(remaining - row_sum);
        for h in 1..=cap {
            row.push(h);
            fill_row(prev, remaining, row, acc, out);
            row.pop();
        }
    }

    let mut out = Vec::new();
    let unbounded = vec![n; n as usize];
    rows_below(&unbounded, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(rows: &[&[u32]]) -> PlanePartition {
        PlanePartition::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn single_cube_box() {
        let all: Vec<_> = enumerate_boxed(BoxShape::new(1, 1, 1)).collect();
        assert_eq!(all, vec![PlanePartition::empty(), pp(&[&[1]])]);
    }

    #[test]
    fn twenty_in_the_small_cube() {
        assert_eq!(enumerate_boxed(BoxShape::new(2, 2, 2)).count(), 20);
        assert_eq!(count_boxed(BoxShape::new(2, 2, 2), Exec::Sequential), 20);
    }

    #[test]
    fn enumeration_is_lexicographic_and_distinct() {
        let grids: Vec<Vec<u32>> = {
            let mut it = BoxedHeights::new(BoxShape::new(2, 3, 2));
            let mut v = Vec::new();
            while it.advance() {
                v.push(it.current().to_vec());
            }
            v
        };
        assert!(grids.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn chunked_scan_matches_plain_enumeration() {
        let shape = BoxShape::new(3, 2, 3);
        let chunks = scan_boxed(shape, Exec::Sequential, Vec::new, |v, h| v.push(h.to_vec()));
        let flat: Vec<Vec<u32>> = chunks.into_iter().flatten().collect();
        let direct: Vec<Vec<u32>> = enumerate_boxed(shape).map(|p| p.heights_in(shape).unwrap()).collect();
        assert_eq!(flat, direct);
    }

    #[test]
    fn macmahon_small_boxes() {
        assert_eq!(macmahon_box_gf(BoxShape::new(1, 1, 1)).to_string(), "q + 1");
        let at_one: BigInt = macmahon_box_coeffs(BoxShape::new(2, 2, 2)).iter().sum();
        assert_eq!(at_one, BigInt::from(20));
    }

    #[test]
    fn macmahon_matches_volume_histogram() {
        for x in 1..=3 {
            for y in 1..=3 {
                for z in 1..=3 {
                    let shape = BoxShape::new(x, y, z);
                    let mut hist = vec![BigInt::zero(); shape.cells() + 1];
                    for p in enumerate_boxed(shape) {
                        hist[p.volume() as usize] += 1;
                    }
                    assert_eq!(hist, macmahon_box_coeffs(shape), "box {shape}");
                }
            }
        }
    }

    #[test]
    fn colored_weights() {
        assert_eq!(pp(&[&[1]]).colored_weight().to_string(), "q");
        assert_eq!(pp(&[&[2, 2], &[2, 2]]).colored_weight().to_string(), "q^2*r^2*s^2*t^2");
        assert_eq!(PlanePartition::empty().colored_weight().to_string(), "1");
        // The three neighbors of the corner cube carry r, s, t.
        assert_eq!(pp(&[&[2]]).colored_weight().to_string(), "q*t");
        assert_eq!(pp(&[&[1, 1]]).colored_weight().to_string(), "q*r");
        assert_eq!(pp(&[&[1], &[1]]).colored_weight().to_string(), "q*s");
    }

    #[test]
    fn colored_weight_at_r_s_t_equal_q_is_volume() {
        for p in enumerate_boxed(BoxShape::new(2, 3, 3)) {
            let c = p.color_counts();
            assert_eq!(c.iter().map(|&n| n as u64).sum::<u64>(), p.volume());
        }
    }

    #[test]
    fn downsample_large_example() {
        let p = pp(&[
            &[8, 8, 6, 5],
            &[7, 6, 6, 5],
            &[6, 4, 3, 3],
            &[5, 4, 3, 3],
            &[4, 3, 3, 2],
            &[3, 3, 2, 1],
            &[2, 2, 1, 1],
            &[1, 1, 1, 0],
        ]);
        let (lo, hi) = p.downsample();
        assert_eq!(lo, pp(&[&[3, 2], &[2, 1], &[1, 0], &[0, 0]]));
        assert_eq!(hi, pp(&[&[4, 3], &[3, 2], &[2, 2], &[1, 1]]));
    }

    #[test]
    fn downsample_small_example() {
        let p = pp(&[&[3, 3, 3, 0], &[3, 2, 1, 0], &[3, 1, 1, 0], &[0, 0, 0, 0]]);
        let (lo, hi) = p.downsample();
        assert_eq!(lo, pp(&[&[1, 0], &[0, 0]]));
        assert_eq!(hi, pp(&[&[2, 2], &[2, 1]]));
    }

    #[test]
    fn downsample_of_doubled_partition_is_exact() {
        for p in enumerate_boxed(BoxShape::new(2, 2, 3)) {
            let (lo, hi) = p.doubled().downsample();
            assert_eq!(lo, p);
            assert_eq!(hi, p);
        }
    }

    #[test]
    fn box_shapes_parse() {
        assert_eq!("2,2,4".parse::<BoxShape>().unwrap(), BoxShape::new(2, 2, 4));
        assert_eq!("4x4x4".parse::<BoxShape>().unwrap(), BoxShape::new(4, 4, 4));
        assert!("2,2".parse::<BoxShape>().is_err());
        assert!("a,b,c".parse::<BoxShape>().is_err());
    }

    #[test]
    fn partitions_by_volume() {
        let counts: Vec<usize> = (0..=8).map(|n| enumerate_by_volume(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 6, 13, 24, 48, 86, 160]);
        for p in enumerate_by_volume(5) {
            assert_eq!(p.volume(), 5);
        }
    }

    #[test]
    fn validation_and_normalization() {
        assert!(PlanePartition::from_rows(&[vec![1, 2]]).is_err());
        assert!(PlanePartition::from_rows(&[vec![1], vec![2]]).is_err());
        assert_eq!(pp(&[&[1, 0], &[0, 0]]), pp(&[&[1]]));
        assert_eq!(pp(&[&[2, 1], &[1]]).to_rows(), vec![vec![2, 1], vec![1, 0]]);
    }
}
