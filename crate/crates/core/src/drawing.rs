//! Complete simple topological graphs at the level of weak isomorphism.
//!
//! A [`Drawing`] is a vertex count plus a crossing oracle on independent
//! edge pairs, optionally with a rotation system (counterclockwise cyclic
//! order of neighbours around each vertex) and a declared anchor.

use std::fmt;

use crate::error::{Error, Result};
use crate::generators::HalfCircleSigns;
use crate::{Point, SpiralParams};

/// Largest vertex count for which an explicit crossing table may be built.
pub const EXPLICIT_MAX_N: usize = 256;

/// An undirected edge with endpoints stored in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.0 == other.0 || self.0 == other.1 || self.1 == other.0 || self.1 == other.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic rank of the pair `i < j` among all pairs of `0..n`.
pub fn edge_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i >= j || j >= n {
        return Err(Error::InvalidEdge(i, j, n));
    }
    Ok(i * (2 * n - i - 1) / 2 + (j - i - 1))
}

/// Inverse of [`edge_index`].
pub fn edge_from_index(rank: usize, n: usize) -> Result<Edge> {
    if rank >= edge_count(n) {
        return Err(Error::InvalidEdge(rank, rank, n));
    }
    let mut i = 0;
    let mut start = 0;
    loop {
        let row = n - i - 1;
        if rank < start + row {
            return Ok(Edge(i, i + 1 + rank - start));
        }
        start += row;
        i += 1;
    }
}

/// Bit table over unordered pairs of edge ranks.
#[derive(Clone, PartialEq, Eq)]
pub struct CrossingTable {
    n: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for CrossingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CrossingTable")
            .field("n", &self.n)
            .field("crossings", &self.count())
            .finish()
    }
}

impl CrossingTable {
    pub fn new(n: usize) -> Result<Self> {
        if n > EXPLICIT_MAX_N {
            return Err(Error::SizeLimit(format!(
                "explicit crossing tables are limited to n <= {EXPLICIT_MAX_N}, got {n}"
            )));
        }
        let e = edge_count(n);
        let pairs = e * e.saturating_sub(1) / 2;
        Ok(CrossingTable {
            n,
            bits: vec![0; pairs.div_ceil(64)],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(r1: usize, r2: usize) -> usize {
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        hi * (hi - 1) / 2 + lo
    }

    fn get(&self, r1: usize, r2: usize) -> bool {
        let s = Self::slot(r1, r2);
        self.bits[s / 64] >> (s % 64) & 1 == 1
    }

    fn set(&mut self, r1: usize, r2: usize) {
        let s = Self::slot(r1, r2);
        self.bits[s / 64] |= 1 << (s % 64);
    }

    /// Marks `e1` and `e2` as crossing. Adjacent pairs are rejected.
    pub fn insert(&mut self, e1: Edge, e2: Edge) -> Result<()> {
        let r1 = edge_index(e1.0, e1.1, self.n)?;
        let r2 = edge_index(e2.0, e2.1, self.n)?;
        if e1.shares_endpoint(&e2) {
            return Err(Error::NotIndependent(e1, e2));
        }
        self.set(r1, r2);
        Ok(())
    }

    fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// How crossings are answered.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Explicit(CrossingTable),
    /// Regular polygon; edges cross iff their endpoints interleave.
    Convex,
    /// Spiral realization of the twisted graph; edges cross iff their index
    /// intervals are strictly nested.
    Twisted(SpiralParams),
    /// Vertex `v` at `(v + 1, 0)`, every edge a half-circle above or below
    /// the axis.
    HalfCircle(HalfCircleSigns),
    /// Straight-line drawing of integer points in general position.
    Points(Vec<Point>),
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Explicit(_) => "explicit",
            Model::Convex => "convex",
            Model::Twisted(_) => "twisted",
            Model::HalfCircle(_) => "halfcircle",
            Model::Points(_) => "points",
        }
    }

    pub fn is_geometric(&self) -> bool {
        !matches!(self, Model::Explicit(_))
    }
}

/// A declared anchor: `v0` on the unbounded cell and the clockwise order of
/// the remaining vertices around it, read from the unbounded gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub v0: usize,
    pub order: Vec<usize>,
}

impl Anchor {
    /// Builds the anchor from the counterclockwise rotation at `v0`, where
    /// the unbounded gap lies right after `rotation[gap_after]`.
    pub fn from_gap(v0: usize, rotation: &[usize], gap_after: usize) -> Self {
        let len = rotation.len();
        let order = (0..len)
            .map(|s| rotation[(gap_after + len - s) % len])
            .collect();
        Anchor { v0, order }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Drawing {
    n: usize,
    model: Model,
    rotations: Option<Vec<Vec<usize>>>,
    anchor: Option<Anchor>,
}

#[inline]
fn interleaved(a: usize, b: usize, c: usize, d: usize) -> bool {
    // a < b, c < d, all distinct
    (a < c && c < b) != (a < d && d < b)
}

#[inline]
fn nested(a: usize, b: usize, c: usize, d: usize) -> bool {
    (a < c && d < b) || (c < a && b < d)
}

impl Drawing {
    pub fn new(
        n: usize,
        model: Model,
        rotations: Option<Vec<Vec<usize>>>,
        anchor: Option<Anchor>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation(format!(
                "a drawing needs at least 2 vertices, got {n}"
            )));
        }
        match &model {
            Model::Explicit(t) if t.n() != n => {
                return Err(Error::Validation(format!(
                    "crossing table is for n={}, drawing has n={n}",
                    t.n()
                )))
            }
            Model::Explicit(_) if n > EXPLICIT_MAX_N => {
                return Err(Error::SizeLimit(format!(
                    "explicit model limited to n <= {EXPLICIT_MAX_N}"
                )))
            }
            Model::Twisted(p) => {
                if p.len() != n {
                    return Err(Error::Validation(format!(
                        "{} radii for {n} vertices",
                        p.len()
                    )));
                }
            }
            Model::HalfCircle(s) => {
                if s.n() != n {
                    return Err(Error::InvalidSigns {
                        expected: edge_count(n),
                        got: s.len(),
                    });
                }
            }
            Model::Points(pts) if pts.len() != n => {
                return Err(Error::Validation(format!(
                    "{} points for {n} vertices",
                    pts.len()
                )));
            }
            _ => {}
        }
        if let Some(rot) = &rotations {
            if rot.len() != n {
                return Err(Error::Validation(format!(
                    "{} rotation lists for {n} vertices",
                    rot.len()
                )));
            }
            for (v, r) in rot.iter().enumerate() {
                check_permutation_without(r, n, v)
                    .map_err(|m| Error::Validation(format!("rotation at {v}: {m}")))?;
            }
        }
        if let Some(a) = &anchor {
            check_anchor(n, rotations.as_deref(), a)?;
        }
        Ok(Drawing {
            n,
            model,
            rotations,
            anchor,
        })
    }

    /// Drawing with an explicit crossing relation given as edge pairs.
    pub fn explicit(n: usize, crossings: &[(Edge, Edge)]) -> Result<Self> {
        let mut table = CrossingTable::new(n)?;
        for &(e1, e2) in crossings {
            table.insert(e1, e2)?;
        }
        Drawing::new(n, Model::Explicit(table), None, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn rotations(&self) -> Option<&[Vec<usize>]> {
        self.rotations.as_deref()
    }

    pub fn anchor(&self) -> Option<&Anchor> {
        self.anchor.as_ref()
    }

    pub fn with_rotations(self, rotations: Option<Vec<Vec<usize>>>) -> Result<Self> {
        Drawing::new(self.n, self.model, rotations, self.anchor)
    }

    pub fn with_anchor(self, anchor: Option<Anchor>) -> Result<Self> {
        Drawing::new(self.n, self.model, self.rotations, anchor)
    }

    /// Mirror image: same crossings, every rotation and the anchor order
    /// reversed.
    pub fn mirrored(&self) -> Drawing {
        let rotations = self.rotations.as_ref().map(|rot| {
            rot.iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect()
        });
        let anchor = self.anchor.as_ref().map(|a| Anchor {
            v0: a.v0,
            order: a.order.iter().rev().copied().collect(),
        });
        Drawing {
            n: self.n,
            model: self.model.clone(),
            rotations,
            anchor,
        }
    }

    /// Whether the two arcs cross. Queries on adjacent edges are errors.
    pub fn cross(&self, e1: Edge, e2: Edge) -> Result<bool> {
        let (e1, e2) = (Edge::new(e1.0, e1.1), Edge::new(e2.0, e2.1));
        for e in [e1, e2] {
            if e.0 == e.1 || e.1 >= self.n {
                return Err(Error::InvalidEdge(e.0, e.1, self.n));
            }
        }
        if e1.shares_endpoint(&e2) {
            return Err(Error::NotIndependent(e1, e2));
        }
        Ok(self.cross_unchecked(e1, e2))
    }

    /// Crossing query for normalized, valid, independent edges.
    pub(crate) fn cross_unchecked(&self, e1: Edge, e2: Edge) -> bool {
        let (Edge(a, b), Edge(c, d)) = (e1, e2);
        match &self.model {
            Model::Explicit(t) => {
                let n = self.n;
                let r1 = a * (2 * n - a - 1) / 2 + (b - a - 1);
                let r2 = c * (2 * n - c - 1) / 2 + (d - c - 1);
                t.get(r1, r2)
            }
            Model::Convex => interleaved(a, b, c, d),
            Model::Twisted(_) => nested(a, b, c, d),
            Model::HalfCircle(s) => s.get(a, b) == s.get(c, d) && interleaved(a, b, c, d),
            Model::Points(p) => crate::geometry::segments_cross(&p[a], &p[b], &p[c], &p[d]),
        }
    }

    /// Crossing of the edges `{a,b}` and `{c,d}`; `false` whenever they
    /// share an endpoint.
    pub(crate) fn crosses(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        if a == c || a == d || b == c || b == d {
            return false;
        }
        self.cross_unchecked(Edge::new(a, b), Edge::new(c, d))
    }

    /// All crossing pairs as sorted `(rank1, rank2)` with `rank1 < rank2`.
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let edges: Vec<Edge> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| Edge(i, j)))
            .collect();
        let mut out = Vec::new();
        for (r1, e1) in edges.iter().enumerate() {
            for (r2, e2) in edges.iter().enumerate().skip(r1 + 1) {
                if !e1.shares_endpoint(e2) && self.cross_unchecked(*e1, *e2) {
                    out.push((r1, r2));
                }
            }
        }
        out
    }

    /// Same vertex count and identical crossing relation under the identity
    /// map.
    pub fn same_crossings(&self, other: &Drawing) -> bool {
        if self.n != other.n {
            return false;
        }
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                for c in a + 1..n {
                    for d in c + 1..n {
                        if c == b || d == b {
                            continue;
                        }
                        let (e1, e2) = (Edge(a, b), Edge(c, d));
                        if self.cross_unchecked(e1, e2) != other.cross_unchecked(e1, e2) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Explicit copy of the crossing relation.
    pub fn to_explicit(&self) -> Result<Drawing> {
        let mut table = CrossingTable::new(self.n)?;
        for (r1, r2) in self.crossing_pairs() {
            table.set(r1, r2);
        }
        Drawing::new(
            self.n,
            Model::Explicit(table),
            self.rotations.clone(),
            self.anchor.clone(),
        )
    }

    /// Restriction to the vertices `vs`; vertex `vs[i]` becomes `i`.
    pub fn induced_subdrawing(&self, vs: &[usize]) -> Result<Drawing> {
        if vs.len() < 2 {
            return Err(Error::InvalidSelection("need at least 2 vertices".into()));
        }
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            if v >= self.n {
                return Err(Error::InvalidSelection(format!("vertex {v} out of range")));
            }
            if new_id[v] != usize::MAX {
                return Err(Error::InvalidSelection(format!(
                    "vertex {v} selected twice"
                )));
            }
            new_id[v] = i;
        }
        let k = vs.len();
        let mut table = CrossingTable::new(k)?;
        for a in 0..k {
            for b in a + 1..k {
                let rab = edge_index(a, b, k)?;
                for c in a + 1..k {
                    for d in c + 1..k {
                        if c == b || d == b {
                            continue;
                        }
                        if self.crosses(vs[a], vs[b], vs[c], vs[d]) {
                            table.set(rab, edge_index(c, d, k)?);
                        }
                    }
                }
            }
        }
        let rotations = self.rotations.as_ref().map(|rot| {
            vs.iter()
                .map(|&v| {
                    rot[v]
                        .iter()
                        .filter(|&&u| new_id[u] != usize::MAX)
                        .map(|&u| new_id[u])
                        .collect()
                })
                .collect()
        });
        let anchor = self.anchor.as_ref().and_then(|a| {
            (new_id[a.v0] != usize::MAX).then(|| Anchor {
                v0: new_id[a.v0],
                order: a
                    .order
                    .iter()
                    .filter(|&&u| new_id[u] != usize::MAX)
                    .map(|&u| new_id[u])
                    .collect(),
            })
        });
        Drawing::new(k, Model::Explicit(table), rotations, anchor)
    }
}

pub(crate) fn check_anchor(n: usize, rotations: Option<&[Vec<usize>]>, a: &Anchor) -> Result<()> {
    if a.v0 >= n {
        return Err(Error::Validation(format!("anchor {} out of range", a.v0)));
    }
    check_permutation_without(&a.order, n, a.v0)
        .map_err(|m| Error::Validation(format!("anchor order: {m}")))?;
    if let Some(rot) = rotations {
        if !is_reversed_cyclic_shift(&a.order, &rot[a.v0]) {
            return Err(Error::Validation(format!(
                "anchor order does not match the clockwise rotation at {}",
                a.v0
            )));
        }
    }
    Ok(())
}

fn check_permutation_without(
    seq: &[usize],
    n: usize,
    skip: usize,
) -> std::result::Result<(), String> {
    if seq.len() != n - 1 {
        return Err(format!("expected {} entries, got {}", n - 1, seq.len()));
    }
    let mut seen = vec![false; n];
    for &u in seq {
        if u >= n || u == skip || seen[u] {
            return Err(format!(
                "entry {u} is out of range, repeated, or the centre itself"
            ));
        }
        seen[u] = true;
    }
    Ok(())
}

/// `order` read backwards is a cyclic shift of `rotation`.
fn is_reversed_cyclic_shift(order: &[usize], rotation: &[usize]) -> bool {
    if order.len() != rotation.len() {
        return false;
    }
    let len = order.len();
    if len == 0 {
        return true;
    }
    let Some(start) = rotation.iter().position(|&u| u == order[0]) else {
        return false;
    };
    (0..len).all(|s| order[s] == rotation[(start + len - s) % len])
}
