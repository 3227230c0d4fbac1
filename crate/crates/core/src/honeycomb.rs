//! Hexagon coordinates on the triangular lattice, honeycomb edges and
//! vertices, and the bijection between boxed plane partitions and perfect
//! matchings of the hexagonal region.
//!
//! A hexagon with 3D label `(i, j, k)` sits at `(u, v) = (j - i, k - i)`.
//! A honeycomb edge is the pair of hexagons it separates and a honeycomb
//! vertex is the triangle of hexagons meeting at it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planepart::{BoxShape, PlanePartition};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct HexCoord {
    pub u: i32,
    pub v: i32,
}

impl HexCoord {
    pub const fn new(u: i32, v: i32) -> Self {
        HexCoord { u, v }
    }

    /// The hexagon of the 3D label `(i, j, k)`.
    pub fn from_label(i: i64, j: i64, k: i64) -> Self {
        HexCoord::new((j - i) as i32, (k - i) as i32)
    }

    pub fn offset(self, du: i32, dv: i32) -> Self {
        HexCoord::new(self.u + du, self.v + dv)
    }

    pub fn plus(self, d: HexCoord) -> Self {
        self.offset(d.u, d.v)
    }

    pub fn minus(self, d: HexCoord) -> Self {
        self.offset(-d.u, -d.v)
    }

    pub fn neighbors(self) -> [HexCoord; 6] {
        NEIGHBOR_STEPS.map(|(du, dv)| self.offset(du, dv))
    }

    pub fn is_adjacent(self, other: HexCoord) -> bool {
        NEIGHBOR_STEPS.contains(&(other.u - self.u, other.v - self.v))
    }

    /// Both coordinates even: the hexagon survives the squish map.
    pub fn is_even(self) -> bool {
        self.u % 2 == 0 && self.v % 2 == 0
    }

    /// Drawing position of the center scaled by three, as `(X, √3·Y)` with
    /// `X = u` and `√3·Y = 2v - u`.
    pub fn draw3(self) -> (i64, i64) {
        (3 * self.u as i64, 3 * (2 * self.v as i64 - self.u as i64))
    }
}

impl From<(i32, i32)> for HexCoord {
    fn from((u, v): (i32, i32)) -> Self {
        HexCoord::new(u, v)
    }
}

impl From<HexCoord> for (i32, i32) {
    fn from(h: HexCoord) -> Self {
        (h.u, h.v)
    }
}

impl fmt::Debug for HexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Counterclockwise neighbor steps starting east.
pub const NEIGHBOR_STEPS: [(i32, i32); 6] = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)];

/// Edge class by the direction between the two hexagons it separates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeClass {
    /// Hexagons differ by ±(1,1); the edge runs northwest/southeast.
    I,
    /// Hexagons differ by ±(1,0); the edge runs northeast/southwest.
    J,
    /// Hexagons differ by ±(0,1); the edge is horizontal.
    K,
}

impl EdgeClass {
    pub fn step(self) -> HexCoord {
        match self {
            EdgeClass::I => HexCoord::new(1, 1),
            EdgeClass::J => HexCoord::new(1, 0),
            EdgeClass::K => HexCoord::new(0, 1),
        }
    }

    pub const ALL: [EdgeClass; 3] = [EdgeClass::I, EdgeClass::J, EdgeClass::K];
}

/// A honeycomb edge, stored as `(a, a + step)` for the class step.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(HexCoord, HexCoord)", into = "(HexCoord, HexCoord)")]
pub struct HexEdge {
    a: HexCoord,
    b: HexCoord,
}

impl HexEdge {
    pub fn new(p: HexCoord, q: HexCoord) -> Result<Self> {
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        match (b.u - a.u, b.v - a.v) {
            (1, 0) | (0, 1) | (1, 1) => Ok(HexEdge { a, b }),
            _ => Err(Error::NotAdjacent(format!("{p:?} and {q:?}"))),
        }
    }

    /// The edge between `a` and `a + class.step()`.
    pub fn from_class(a: HexCoord, class: EdgeClass) -> Self {
        HexEdge { a, b: a.plus(class.step()) }
    }

    /// Lower endpoint (the one the class step starts from).
    pub fn a(&self) -> HexCoord {
        self.a
    }

    pub fn b(&self) -> HexCoord {
        self.b
    }

    pub fn class(&self) -> EdgeClass {
        match (self.b.u - self.a.u, self.b.v - self.a.v) {
            (1, 1) => EdgeClass::I,
            (1, 0) => EdgeClass::J,
            _ => EdgeClass::K,
        }
    }

    pub fn contains(&self, h: HexCoord) -> bool {
        self.a == h || self.b == h
    }

    pub fn translate(&self, d: HexCoord) -> Self {
        HexEdge { a: self.a.plus(d), b: self.b.plus(d) }
    }

    /// The two honeycomb vertices at the ends of the edge.
    pub fn vertices(&self) -> [HexVertex; 2] {
        let a = self.a;
        match self.class() {
            EdgeClass::J => [HexVertex::west(a), HexVertex::east(a.offset(0, -1))],
            EdgeClass::K => [HexVertex::east(a), HexVertex::west(a.offset(-1, 0))],
            EdgeClass::I => [HexVertex::west(a), HexVertex::east(a)],
        }
    }

    /// Height of a horizontal edge: the `v` coordinate of its lower hexagon.
    pub fn horizontal_height(&self) -> Result<i32> {
        match self.class() {
            EdgeClass::K => Ok(self.a.v),
            _ => Err(Error::NotHorizontal),
        }
    }
}

impl TryFrom<(HexCoord, HexCoord)> for HexEdge {
    type Error = Error;
    fn try_from((p, q): (HexCoord, HexCoord)) -> Result<Self> {
        HexEdge::new(p, q)
    }
}

impl From<HexEdge> for (HexCoord, HexCoord) {
    fn from(e: HexEdge) -> Self {
        (e.a, e.b)
    }
}

impl fmt::Debug for HexEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{:?},{:?}}}", self.a, self.b)
    }
}

/// Which way the triangle of hexagon centers points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    /// `{h, h+(1,0), h+(1,1)}`
    West,
    /// `{h, h+(0,1), h+(1,1)}`
    East,
}

/// A honeycomb vertex: three mutually adjacent hexagons, anchored at their
/// lexicographically least member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HexVertex {
    pub anchor: HexCoord,
    pub kind: VertexKind,
}

impl HexVertex {
    pub fn west(anchor: HexCoord) -> Self {
        HexVertex { anchor, kind: VertexKind::West }
    }

    pub fn east(anchor: HexCoord) -> Self {
        HexVertex { anchor, kind: VertexKind::East }
    }

    /// The three hexagons, sorted.
    pub fn triple(&self) -> [HexCoord; 3] {
        let h = self.anchor;
        match self.kind {
            VertexKind::West => [h, h.offset(1, 0), h.offset(1, 1)],
            VertexKind::East => [h, h.offset(0, 1), h.offset(1, 1)],
        }
    }

    pub fn edges(&self) -> [HexEdge; 3] {
        let [p, q, r] = self.triple();
        [HexEdge { a: p, b: q }, HexEdge { a: p, b: r }, HexEdge { a: q, b: r }]
    }

    /// Sum of the three hexagon coordinates (three times the position in the
    /// `(u, v)` frame).
    pub fn pos3(&self) -> (i64, i64) {
        self.triple().iter().fold((0, 0), |(u, v), h| (u + h.u as i64, v + h.v as i64))
    }

    /// Drawing position scaled by three, as `(X, √3·Y)`.
    pub fn draw3(&self) -> (i64, i64) {
        let (u, v) = self.pos3();
        (u, 2 * v - u)
    }
}

impl Ord for HexVertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.triple().cmp(&other.triple())
    }
}

impl PartialOrd for HexVertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for HexVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            VertexKind::West => 'W',
            VertexKind::East => 'E',
        };
        write!(f, "{k}{:?}", self.anchor)
    }
}

/// A face of the stepped surface of a boxed partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceFace {
    /// The top of stack `(i, j)` at height `h`.
    Top { i: i64, j: i64, h: i64 },
    /// The wall between stacks `(i, j)` and `(i + 1, j)` at level `l`.
    XSide { i: i64, j: i64, l: i64 },
    /// The wall between stacks `(i, j)` and `(i, j + 1)` at level `l`.
    YSide { i: i64, j: i64, l: i64 },
}

impl SurfaceFace {
    pub fn to_edge(self) -> HexEdge {
        let e = |p: (i64, i64), q: (i64, i64)| {
            HexEdge::new(HexCoord::new(p.0 as i32, p.1 as i32), HexCoord::new(q.0 as i32, q.1 as i32))
                .expect("face endpoints are adjacent")
        };
        match self {
            SurfaceFace::Top { i, j, h } => e((j - i, h - i), (j - i, h - i + 1)),
            SurfaceFace::XSide { i, j, l } => e((j - i, l - i), (j - i - 1, l - i - 1)),
            SurfaceFace::YSide { i, j, l } => e((j - i, l - i), (j - i + 1, l - i)),
        }
    }
}

/// `π(i, j)` extended by the box walls: `z` on row/column 0, zero past the box.
fn walled(heights: &[u32], shape: BoxShape, i: usize, j: usize) -> i64 {
    if i == 0 || j == 0 {
        shape.z as i64
    } else if i > shape.x || j > shape.y {
        0
    } else {
        heights[(i - 1) * shape.y + (j - 1)] as i64
    }
}

/// Calls `f` for every face of the surface of the height grid.
fn for_each_face(heights: &[u32], shape: BoxShape, mut f: impl FnMut(SurfaceFace)) {
    let (x, y) = (shape.x, shape.y);
    for i in 1..=x {
        for j in 1..=y {
            f(SurfaceFace::Top { i: i as i64, j: j as i64, h: walled(heights, shape, i, j) });
        }
    }
    for j in 1..=y {
        for i in 0..=x {
            for l in walled(heights, shape, i + 1, j) + 1..=walled(heights, shape, i, j) {
                f(SurfaceFace::XSide { i: i as i64, j: j as i64, l });
            }
        }
    }
    for i in 1..=x {
        for j in 0..=y {
            for l in walled(heights, shape, i, j + 1) + 1..=walled(heights, shape, i, j) {
                f(SurfaceFace::YSide { i: i as i64, j: j as i64, l });
            }
        }
    }
}

pub fn surface_faces(p: &PlanePartition, shape: BoxShape) -> Result<Vec<SurfaceFace>> {
    let heights = p.heights_in(shape)?;
    let mut faces = Vec::with_capacity(shape.x * shape.y + shape.y * shape.z + shape.z * shape.x);
    for_each_face(&heights, shape, |face| faces.push(face));
    Ok(faces)
}

/// Edges of the matching of a `shape.x × shape.y` height grid, sorted.
pub fn matching_edges(heights: &[u32], shape: BoxShape) -> Vec<HexEdge> {
    let mut edges = Vec::with_capacity(shape.x * shape.y + shape.y * shape.z + shape.z * shape.x);
    for_each_face(heights, shape, |face| edges.push(face.to_edge()));
    edges.sort_unstable();
    edges
}

/// A set of honeycomb edges, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<HexEdge>,
}

impl Matching {
    /// Builds a matching from distinct edges.
    pub fn new(mut edges: Vec<HexEdge>) -> Result<Self> {
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotAMatching("repeated edge".into()));
        }
        Ok(Matching { edges })
    }

    pub(crate) fn from_sorted(edges: Vec<HexEdge>) -> Self {
        Matching { edges }
    }

    pub fn edges(&self) -> &[HexEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &HexEdge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// How many edges touch each vertex.
    pub fn vertex_degrees(&self) -> BTreeMap<HexVertex, usize> {
        let mut deg = BTreeMap::new();
        for e in &self.edges {
            for v in e.vertices() {
                *deg.entry(v).or_insert(0) += 1;
            }
        }
        deg
    }

    /// Whether every vertex of `region` is covered exactly once and no edge
    /// leaves it.
    pub fn is_perfect_on(&self, region: &BTreeSet<HexVertex>) -> bool {
        let deg = self.vertex_degrees();
        deg.len() == region.len() && deg.iter().all(|(v, &d)| d == 1 && region.contains(v))
    }

    /// Sum of the heights of the horizontal edges.
    pub fn height_sum(&self) -> i64 {
        self.edges.iter().filter_map(|e| e.horizontal_height().ok()).map(i64::from).sum()
    }

    pub fn class_counts(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        for e in &self.edges {
            counts[e.class() as usize] += 1;
        }
        counts
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.edges).finish()
    }
}

/// The perfect matching (lozenge tiling) of a boxed partition.
pub fn matching_of(p: &PlanePartition, shape: BoxShape) -> Result<Matching> {
    let heights = p.heights_in(shape)?;
    Ok(Matching::from_sorted(matching_edges(&heights, shape)))
}

/// Honeycomb vertices of the hexagonal region of the box.
pub fn region_vertices(shape: BoxShape) -> BTreeSet<HexVertex> {
    let empty = vec![0; shape.x * shape.y];
    matching_edges(&empty, shape).iter().flat_map(|e| e.vertices()).collect()
}

/// Honeycomb edges with both vertices in the region.
pub fn region_edges(shape: BoxShape) -> BTreeSet<HexEdge> {
    let vertices = region_vertices(shape);
    vertices.iter().flat_map(|v| v.edges()).filter(|e| e.vertices().iter().all(|w| vertices.contains(w))).collect()
}

/// Hexagons touched by the region's edges.
pub fn region_hexagons(shape: BoxShape) -> BTreeSet<HexCoord> {
    region_vertices(shape).iter().flat_map(|v| v.triple()).collect()
}

/// Inverse of [`matching_of`]: reads the stack heights off the horizontal
/// edges of each diagonal `u = j - i`.
pub fn partition_of(m: &Matching, shape: BoxShape) -> Result<PlanePartition> {
    let region = region_vertices(shape);
    if !m.is_perfect_on(&region) {
        return Err(Error::NotAMatching("vertex coverage is not exactly one".into()));
    }
    let mut columns: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
    for e in m.edges() {
        if let Ok(h) = e.horizontal_height() {
            columns.entry(e.a().u).or_default().push(h);
        }
    }
    let (x, y) = (shape.x as i64, shape.y as i64);
    let mut heights = vec![0u32; shape.x * shape.y];
    for u in (1 - x)..y {
        let lows = columns.remove(&(u as i32)).unwrap_or_default();
        let rows: Vec<i64> = (1.max(1 - u)..=x.min(y - u)).collect();
        if lows.len() != rows.len() {
            return Err(Error::NotAMatching(format!("diagonal {u} has {} horizontal edges", lows.len())));
        }
        let mut lows = lows;
        lows.sort_unstable_by(|a, b| b.cmp(a));
        for (&i, &low) in rows.iter().zip(&lows) {
            let h = low as i64 + i;
            if h < 0 || h > shape.z as i64 {
                return Err(Error::NotAMatching(format!("height {h} out of range")));
            }
            heights[(i - 1) as usize * shape.y + (i + u - 1) as usize] = h as u32;
        }
    }
    if !columns.is_empty() {
        return Err(Error::NotAMatching("horizontal edge outside the box diagonals".into()));
    }
    let rows: Vec<Vec<u32>> = heights.chunks(shape.y.max(1)).map(<[u32]>::to_vec).collect();
    let p = PlanePartition::from_rows(&rows).map_err(|e| Error::NotAMatching(e.to_string()))?;
    if matching_of(&p, shape)? != *m {
        return Err(Error::NotAMatching("edges disagree with the reconstructed partition".into()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planepart::enumerate_boxed;

    fn h(u: i32, v: i32) -> HexCoord {
        HexCoord::new(u, v)
    }

    #[test]
    fn face_formulas() {
        let top = SurfaceFace::Top { i: 1, j: 1, h: 0 }.to_edge();
        assert_eq!(top, HexEdge::new(h(0, -1), h(0, 0)).unwrap());
        assert_eq!(top.class(), EdgeClass::K);
        let side = SurfaceFace::XSide { i: 1, j: 1, l: 1 }.to_edge();
        assert_eq!(side, HexEdge::new(h(0, 0), h(-1, -1)).unwrap());
        assert_eq!(side.class(), EdgeClass::I);
    }

    #[test]
    fn vertical_neighbors_share_a_horizontal_edge() {
        let e = HexEdge::new(HexCoord::from_label(0, 0, 0), HexCoord::from_label(0, 0, 1)).unwrap();
        assert_eq!(e.class(), EdgeClass::K);
    }

    #[test]
    fn edge_vertices_contain_the_edge() {
        for class in EdgeClass::ALL {
            let e = HexEdge::from_class(h(3, -2), class);
            let [v, w] = e.vertices();
            assert_ne!(v, w);
            for x in [v, w] {
                assert!(x.edges().contains(&e));
            }
        }
    }

    #[test]
    fn single_hexagon_box() {
        let shape = BoxShape::new(1, 1, 1);
        let empty = matching_of(&PlanePartition::empty(), shape).unwrap();
        let full = matching_of(&PlanePartition::from_rows(&[vec![1]]).unwrap(), shape).unwrap();
        assert_eq!(empty.len(), 3);
        assert_eq!(empty.class_counts(), [1, 1, 1]);
        assert!(empty.edges().iter().all(|e| !full.contains(e)));
        assert_eq!(region_vertices(shape).len(), 6);
    }

    #[test]
    fn matchings_are_perfect_and_invertible() {
        for shape in [BoxShape::new(2, 2, 2), BoxShape::new(2, 3, 1), BoxShape::new(3, 1, 2)] {
            let region = region_vertices(shape);
            let (x, y, z) = (shape.x, shape.y, shape.z);
            assert_eq!(region.len(), 2 * (x * y + y * z + z * x));
            for p in enumerate_boxed(shape) {
                let m = matching_of(&p, shape).unwrap();
                assert_eq!(m.len(), x * y + y * z + z * x);
                assert!(m.is_perfect_on(&region));
                assert_eq!(m.class_counts(), [y * z, x * z, x * y]);
                assert_eq!(partition_of(&m, shape).unwrap(), p);
            }
        }
    }

    #[test]
    fn tampered_matching_is_rejected() {
        let shape = BoxShape::new(2, 2, 2);
        let m = matching_of(&PlanePartition::empty(), shape).unwrap();
        let mut edges = m.edges().to_vec();
        edges[0] = edges[0].translate(h(0, 10));
        let bad = Matching::new(edges).unwrap();
        assert!(matches!(partition_of(&bad, shape), Err(Error::NotAMatching(_))));
    }

    #[test]
    fn horizontal_heights() {
        let e = SurfaceFace::Top { i: 2, j: 1, h: 3 }.to_edge();
        assert_eq!(e.horizontal_height().unwrap(), 1);
        assert_eq!(HexEdge::from_class(h(0, 0), EdgeClass::J).horizontal_height(), Err(Error::NotHorizontal));
    }

    #[test]
    fn height_sum_tracks_volume() {
        for shape in [BoxShape::new(2, 2, 2), BoxShape::new(2, 2, 4)] {
            let base = matching_of(&PlanePartition::empty(), shape).unwrap().height_sum();
            for p in enumerate_boxed(shape) {
                let m = matching_of(&p, shape).unwrap();
                assert_eq!(m.height_sum() - base, p.volume() as i64);
            }
        }
    }

    #[test]
    fn vertex_order_compares_sorted_triples() {
        let o = h(0, 0);
        assert!(HexVertex::east(o) < HexVertex::west(o));
    }

    #[test]
    fn serde_shapes() {
        let e = HexEdge::from_class(h(1, 2), EdgeClass::I);
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, "[[1,2],[2,3]]");
        assert_eq!(serde_json::from_str::<HexEdge>(&json).unwrap(), e);
        assert!(serde_json::from_str::<HexEdge>("[[0,0],[2,0]]").is_err());
    }
}
