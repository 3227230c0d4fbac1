//! The squish map from matchings of a fine region to double dimer
//! configurations of the half-scale region, loop decomposition, and fibers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::honeycomb::{matching_edges, matching_of, HexCoord, HexEdge, HexVertex, Matching};
use crate::planepart::{scan_boxed, BoxShape, PlanePartition};

/// Image of a fine edge on the half-scale lattice, or `None` for a
/// propeller edge (no even endpoint).
pub fn even_edge_image(e: &HexEdge) -> Result<Option<HexEdge>> {
    let (a, b) = (e.a(), e.b());
    let (even, other) = match (a.is_even(), b.is_even()) {
        (true, true) => return Err(Error::InternalInvariant(format!("edge {e:?} has two even hexagons"))),
        (true, false) => (a, b),
        (false, true) => (b, a),
        (false, false) => return Ok(None),
    };
    let half = HexCoord::new(even.u.div_euclid(2), even.v.div_euclid(2));
    let coarse = HexEdge::new(half, half.plus(other.minus(even)))?;
    Ok(Some(coarse))
}

/// The two fine edges squishing onto a coarse edge: the parallel sides of
/// the odd hexagon between the two even ones.
pub fn preimages(e: &HexEdge) -> [HexEdge; 2] {
    let (a, b) = (e.a(), e.b());
    let (fa, fb) = (HexCoord::new(2 * a.u, 2 * a.v), HexCoord::new(2 * b.u, 2 * b.v));
    let mid = HexCoord::new(a.u + b.u, a.v + b.v);
    [HexEdge::new(fa, mid).expect("adjacent"), HexEdge::new(fb, mid).expect("adjacent")]
}

/// An edge multiset of multiplicities 1 and 2 in which every covered vertex
/// has total multiplicity exactly 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleDimer {
    mult: BTreeMap<HexEdge, u8>,
}

impl DoubleDimer {
    pub fn new(mult: BTreeMap<HexEdge, u8>) -> Result<Self> {
        let mut deg: BTreeMap<HexVertex, u32> = BTreeMap::new();
        for (e, &m) in &mult {
            if !(1..=2).contains(&m) {
                return Err(Error::NotADoubleDimer(format!("edge {e:?} has multiplicity {m}")));
            }
            for v in e.vertices() {
                *deg.entry(v).or_insert(0) += m as u32;
            }
        }
        if let Some((v, d)) = deg.iter().find(|(_, &d)| d != 2) {
            return Err(Error::NotADoubleDimer(format!("vertex {v:?} has degree {d}")));
        }
        Ok(DoubleDimer { mult })
    }

    pub fn multiplicities(&self) -> &BTreeMap<HexEdge, u8> {
        &self.mult
    }

    pub fn multiplicity(&self, e: &HexEdge) -> u8 {
        self.mult.get(e).copied().unwrap_or(0)
    }

    pub fn vertices(&self) -> BTreeSet<HexVertex> {
        self.mult.keys().flat_map(|e| e.vertices()).collect()
    }

    /// Σ multiplicity × height over horizontal edges.
    pub fn height_sum(&self) -> i64 {
        self.mult.iter().filter_map(|(e, &m)| e.horizontal_height().ok().map(|h| h as i64 * m as i64)).sum()
    }

    pub fn is_all_doubled(&self) -> bool {
        self.mult.values().all(|&m| m == 2)
    }

    pub fn decompose(&self) -> LoopDecomposition {
        decompose(self)
    }

    /// Doubled edges plus loops, back to a multiset.
    pub fn from_parts(doubled: &[HexEdge], loops: &[Loop]) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for e in doubled {
            *mult.entry(*e).or_insert(0) += 2;
        }
        for l in loops {
            for e in l.edges() {
                *mult.entry(*e).or_insert(0) += 1;
            }
        }
        DoubleDimer::new(mult)
    }
}

impl fmt::Debug for DoubleDimer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.mult.iter()).finish()
    }
}

impl Serialize for DoubleDimer {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<(HexEdge, u8)> = self.mult.iter().map(|(e, m)| (*e, *m)).collect();
        list.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DoubleDimer {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<(HexEdge, u8)>::deserialize(deserializer)?;
        let mut mult = BTreeMap::new();
        for (e, m) in list {
            *mult.entry(e).or_insert(0) += m;
        }
        DoubleDimer::new(mult).map_err(serde::de::Error::custom)
    }
}

/// Squish multiplicities of a sorted fine edge list, without validation.
pub(crate) fn squish_multiset(edges: &[HexEdge]) -> Result<BTreeMap<HexEdge, u8>> {
    let mut mult = BTreeMap::new();
    for e in edges {
        if let Some(c) = even_edge_image(e)? {
            *mult.entry(c).or_insert(0) += 1;
        }
    }
    Ok(mult)
}

/// The squish of a fine matching.
pub fn squish_matching(m: &Matching) -> Result<DoubleDimer> {
    DoubleDimer::new(squish_multiset(m.edges())?).map_err(|e| Error::InternalInvariant(e.to_string()))
}

/// The superposition of two matchings of the same region.
pub fn overlay(m1: &Matching, m2: &Matching) -> Result<DoubleDimer> {
    let cover = |m: &Matching| m.edges().iter().flat_map(|e| e.vertices()).collect::<BTreeSet<_>>();
    if cover(m1) != cover(m2) {
        return Err(Error::RegionMismatch);
    }
    let mut mult = BTreeMap::new();
    for e in m1.edges().iter().chain(m2.edges()) {
        *mult.entry(*e).or_insert(0) += 1;
    }
    DoubleDimer::new(mult)
}

/// A simple closed path of honeycomb edges, oriented counterclockwise and
/// based at its least vertex. `edges[k]` joins `vertices[k]` to
/// `vertices[k + 1]` (cyclically).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loop {
    vertices: Vec<HexVertex>,
    edges: Vec<HexEdge>,
}

impl Loop {
    /// Assembles the unique cycle through the given edges.
    pub fn from_edges(edges: &[HexEdge]) -> Result<Self> {
        let mut adj: BTreeMap<HexVertex, Vec<(HexVertex, HexEdge)>> = BTreeMap::new();
        for e in edges {
            let [v, w] = e.vertices();
            adj.entry(v).or_default().push((w, *e));
            adj.entry(w).or_default().push((v, *e));
        }
        if adj.len() < 6 || adj.values().any(|n| n.len() != 2) || adj.len() != edges.len() {
            return Err(Error::NotALoop("every vertex must have degree two".into()));
        }
        let start = *adj.keys().next().unwrap();
        let mut vertices = vec![start];
        let mut path = Vec::with_capacity(edges.len());
        let (mut cur, mut prev) = (start, None::<HexEdge>);
        loop {
            let &(next, e) = adj[&cur].iter().find(|(_, e)| Some(*e) != prev).unwrap();
            path.push(e);
            if next == start {
                break;
            }
            vertices.push(next);
            prev = Some(e);
            cur = next;
        }
        if path.len() != edges.len() {
            return Err(Error::NotALoop("edges form more than one cycle".into()));
        }
        Ok(Loop { vertices, edges: path }.canonical())
    }

    /// The six edges around a hexagon.
    pub fn around_hexagon(h: HexCoord) -> Self {
        let edges: Vec<HexEdge> = h.neighbors().iter().map(|&n| HexEdge::new(h, n).unwrap()).collect();
        Loop::from_edges(&edges).expect("a hexagon boundary is a loop")
    }

    /// The boundary of a finite set of hexagons, when it is a single loop.
    pub fn around_region(region: &BTreeSet<HexCoord>) -> Result<Self> {
        let edges: Vec<HexEdge> = region
            .iter()
            .flat_map(|&h| {
                h.neighbors().into_iter().filter(|n| !region.contains(n)).map(move |n| HexEdge::new(h, n).unwrap())
            })
            .collect();
        Loop::from_edges(&edges)
    }

    fn twice_signed_area(&self) -> i64 {
        let pts: Vec<(i64, i64)> = self.vertices.iter().map(HexVertex::draw3).collect();
        let n = pts.len();
        (0..n).map(|k| pts[k].0 * pts[(k + 1) % n].1 - pts[(k + 1) % n].0 * pts[k].1).sum()
    }

    fn reversed(&self) -> Self {
        let n = self.vertices.len();
        let vertices: Vec<HexVertex> = self.vertices.iter().rev().copied().collect();
        let edges = (0..n).map(|k| self.edges[(2 * n - 2 - k) % n]).collect();
        Loop { vertices, edges }
    }

    fn rotated(&self, k: usize) -> Self {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.rotate_left(k);
        edges.rotate_left(k);
        Loop { vertices, edges }
    }

    fn canonical(self) -> Self {
        let ccw = if self.twice_signed_area() < 0 { self.reversed() } else { self };
        let base = (0..ccw.vertices.len()).min_by_key(|&k| ccw.vertices[k]).unwrap();
        ccw.rotated(base)
    }

    pub fn vertices(&self) -> &[HexVertex] {
        &self.vertices
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

    /// The same loop traversed clockwise from vertex `start`.
    pub fn clockwise_from(&self, start: usize) -> (Vec<HexVertex>, Vec<HexEdge>) {
        let r = self.rotated(start % self.len()).reversed();
        let base = r.vertices.len() - 1;
        let r = r.rotated(base);
        (r.vertices, r.edges)
    }

    /// The counterclockwise traversal starting at vertex `start`.
    pub fn counterclockwise_from(&self, start: usize) -> (Vec<HexVertex>, Vec<HexEdge>) {
        let r = self.rotated(start % self.len());
        (r.vertices, r.edges)
    }

    /// Hexagons enclosed by the loop.
    pub fn interior(&self) -> BTreeSet<HexCoord> {
        loop_interior(self)
    }

    /// Translation so the least enclosed hexagon sits at the origin, and the
    /// translated loop. Identifies loops that differ by a shift.
    pub fn normalized(&self) -> (HexCoord, Loop) {
        let first = *self.interior().iter().next().expect("loops enclose a hexagon");
        let shift = HexCoord::new(-first.u, -first.v);
        let edges: Vec<HexEdge> = self.edges.iter().map(|e| e.translate(shift)).collect();
        (first, Loop::from_edges(&edges).expect("translation keeps the loop"))
    }
}

impl fmt::Debug for Loop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Loop{:?}", self.edges)
    }
}

impl Serialize for Loop {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.edges.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Loop {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let edges = Vec::<HexEdge>::deserialize(deserializer)?;
        Loop::from_edges(&edges).map_err(serde::de::Error::custom)
    }
}

/// Doubled edges and disjoint loops of a double dimer configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopDecomposition {
    pub doubled: Vec<HexEdge>,
    pub loops: Vec<Loop>,
}

pub fn decompose(dd: &DoubleDimer) -> LoopDecomposition {
    let doubled = dd.mult.iter().filter(|(_, &m)| m == 2).map(|(e, _)| *e).collect();
    let singles: Vec<HexEdge> = dd.mult.iter().filter(|(_, &m)| m == 1).map(|(e, _)| *e).collect();
    let mut by_vertex: BTreeMap<HexVertex, Vec<HexEdge>> = BTreeMap::new();
    for e in &singles {
        for v in e.vertices() {
            by_vertex.entry(v).or_default().push(*e);
        }
    }
    let mut seen: BTreeSet<HexEdge> = BTreeSet::new();
    let mut loops = Vec::new();
    for e in &singles {
        if seen.contains(e) {
            continue;
        }
        let mut component = Vec::new();
        let mut stack = vec![*e];
        seen.insert(*e);
        while let Some(f) = stack.pop() {
            component.push(f);
            for v in f.vertices() {
                for g in &by_vertex[&v] {
                    if seen.insert(*g) {
                        stack.push(*g);
                    }
                }
            }
        }
        loops.push(Loop::from_edges(&component).expect("valid double dimers split into loops"));
    }
    loops.sort();
    LoopDecomposition { doubled, loops }
}

/// Hexagon centers inside the loop, by ray casting in the `(u, v)` frame
/// (an affine image of the drawing plane, so insideness is unchanged).
/// Centers sit at `3·(u, v)` and vertex coordinates are never multiples of
/// three in `v`, so the ray never grazes a vertex.
pub fn loop_interior(l: &Loop) -> BTreeSet<HexCoord> {
    let pts: Vec<(i64, i64)> = l.vertices().iter().map(HexVertex::pos3).collect();
    let hexes: Vec<HexCoord> = l.vertices().iter().flat_map(|v| v.triple()).collect();
    let (umin, umax) = (hexes.iter().map(|h| h.u).min().unwrap(), hexes.iter().map(|h| h.u).max().unwrap());
    let (vmin, vmax) = (hexes.iter().map(|h| h.v).min().unwrap(), hexes.iter().map(|h| h.v).max().unwrap());
    let n = pts.len();
    let mut inside = BTreeSet::new();
    for u in umin..=umax {
        for v in vmin..=vmax {
            let (x, y) = (3 * u as i64, 3 * v as i64);
            let mut crossings = 0;
            for k in 0..n {
                let (p, q) = (pts[k], pts[(k + 1) % n]);
                if (p.1 > y) == (q.1 > y) {
                    continue;
                }
                // Intersection abscissa compared with x, cleared of the
                // denominator q.1 - p.1.
                let dv = q.1 - p.1;
                let lhs = (p.0 - x) * dv + (y - p.1) * (q.0 - p.0);
                if (lhs > 0) == (dv > 0) && lhs != 0 {
                    crossings += 1;
                }
            }
            if crossings % 2 == 1 {
                inside.insert(HexCoord::new(u, v));
            }
        }
    }
    inside
}

/// All partitions of a box squishing onto `target`.
#[derive(Clone, Debug, Serialize)]
pub struct Fiber {
    pub target: DoubleDimer,
    pub members: Vec<PlanePartition>,
}

pub fn fiber(target: &DoubleDimer, shape: BoxShape, exec: Exec) -> Result<Fiber> {
    shape.halved()?;
    let chunks = scan_boxed(
        shape,
        exec,
        || Ok(Vec::new()),
        |acc: &mut Result<Vec<PlanePartition>>, heights| {
            let Ok(members) = acc else { return };
            let edges = matching_edges(heights, shape);
            match squish_multiset(&edges) {
                Ok(mult) if mult == target.mult => {
                    members.push(PlanePartition::from_dense(shape.x, shape.y, heights.to_vec()));
                }
                Ok(_) => {}
                Err(e) => *acc = Err(e),
            }
        },
    );
    let mut members = Vec::new();
    for chunk in chunks {
        members.extend(chunk?);
    }
    Ok(Fiber { target: target.clone(), members })
}

/// Fiber sizes of every squish target of the box, from one scan.
pub fn squish_counts(shape: BoxShape, exec: Exec) -> Result<BTreeMap<DoubleDimer, u64>> {
    shape.halved()?;
    type Counts = std::collections::HashMap<BTreeMap<HexEdge, u8>, u64>;
    let chunks = scan_boxed(
        shape,
        exec,
        || Ok(Counts::new()),
        |acc: &mut Result<Counts>, heights| {
            let Ok(counts) = acc else { return };
            match squish_multiset(&matching_edges(heights, shape)) {
                Ok(mult) => *counts.entry(mult).or_insert(0) += 1,
                Err(e) => *acc = Err(e),
            }
        },
    );
    let mut out = BTreeMap::new();
    for chunk in chunks {
        for (mult, n) in chunk? {
            *out.entry(DoubleDimer::new(mult)?).or_insert(0) += n;
        }
    }
    Ok(out)
}

/// Outcome of comparing the squish of every partition in a box with the
/// overlay of its two downsampled partitions.
#[derive(Clone, Debug, Serialize)]
pub struct DownsampleReport {
    pub shape: BoxShape,
    pub checked: u64,
    pub mismatches: Vec<PlanePartition>,
}

pub fn downsample_check(shape: BoxShape, exec: Exec) -> Result<DownsampleReport> {
    let half = shape.halved()?;
    type Acc = Result<(u64, Vec<PlanePartition>)>;
    let chunks = scan_boxed(
        shape,
        exec,
        || Ok((0, Vec::new())),
        |acc: &mut Acc, heights| {
            let Ok((checked, bad)) = acc else { return };
            let p = PlanePartition::from_dense(shape.x, shape.y, heights.to_vec());
            let outcome = (|| {
                let squished = DoubleDimer::new(squish_multiset(&matching_edges(heights, shape))?)?;
                let (lo, hi) = p.downsample();
                Ok::<_, Error>(squished == overlay(&matching_of(&lo, half)?, &matching_of(&hi, half)?)?)
            })();
            match outcome {
                Ok(true) => *checked += 1,
                Ok(false) => {
                    *checked += 1;
                    bad.push(p);
                }
                Err(e) => *acc = Err(e),
            }
        },
    );
    let (mut checked, mut mismatches) = (0, Vec::new());
    for chunk in chunks {
        let (n, bad) = chunk?;
        checked += n;
        mismatches.extend(bad);
    }
    Ok(DownsampleReport { shape, checked, mismatches })
}
