use crate::drawing::{check_anchor, Anchor, Drawing, Edge};
use crate::error::{Error, Result};
use crate::generators::family_anchor;

/// A drawing seen from an anchor vertex `v0` on the unbounded cell.
///
/// Positions are 0-based: position 0 is `v0`, positions `1..n` follow the
/// clockwise order of the other vertices around `v0`.
#[derive(Clone, Debug)]
pub struct AnchoredDrawing<'a> {
    base: &'a Drawing,
    order: Vec<usize>,
    position: Vec<usize>,
}

impl<'a> AnchoredDrawing<'a> {
    /// Anchors `base` with an explicit order, validated against its rotation
    /// at `v0` when present.
    pub fn new(base: &'a Drawing, v0: usize, order: Vec<usize>) -> Result<Self> {
        let anchor = Anchor { v0, order };
        check_anchor(base.n(), base.rotations(), &anchor)?;
        let order = anchor.order;
        let mut full = Vec::with_capacity(base.n());
        full.push(v0);
        full.extend(order);
        let mut position = vec![0; base.n()];
        for (p, &v) in full.iter().enumerate() {
            position[v] = p;
        }
        Ok(AnchoredDrawing {
            base,
            order: full,
            position,
        })
    }

    pub fn base(&self) -> &'a Drawing {
        self.base
    }

    /// Number of positions, including the anchor.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn v0(&self) -> usize {
        self.order[0]
    }

    /// Vertex at anchored position `p`.
    pub fn vertex(&self, p: usize) -> usize {
        self.order[p]
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// The clockwise order `v1, ..., v_{n-1}` as vertex ids.
    pub fn order(&self) -> &[usize] {
        &self.order[1..]
    }

    pub fn vertices(&self, positions: &[usize]) -> Vec<usize> {
        positions.iter().map(|&p| self.order[p]).collect()
    }

    /// Crossing of the edges `{p1,p2}` and `{p3,p4}` given by positions.
    #[inline]
    pub fn cross_at(&self, p1: usize, p2: usize, p3: usize, p4: usize) -> bool {
        let o = &self.order;
        self.base
            .cross_unchecked(Edge::new(o[p1], o[p2]), Edge::new(o[p3], o[p4]))
    }
}

impl Drawing {
    /// Anchored view at `v0`.
    ///
    /// Uses the declared anchor when it names `v0`; otherwise convex and
    /// straight-line families derive one for hull vertices.
    pub fn anchored_view(&self, v0: usize) -> Result<AnchoredDrawing<'_>> {
        if v0 >= self.n() {
            return Err(Error::InvalidSelection(format!("vertex {v0} out of range")));
        }
        if let Some(a) = self.anchor().filter(|a| a.v0 == v0) {
            return AnchoredDrawing::new(self, v0, a.order.clone());
        }
        if self.rotations().is_none() {
            return Err(Error::RotationMissing);
        }
        match family_anchor(self, v0) {
            Some(a) => AnchoredDrawing::new(self, v0, a.order),
            None => Err(Error::AnchorUnavailable(v0)),
        }
    }

    /// Anchored view at the declared anchor.
    pub fn canonical_view(&self) -> Result<AnchoredDrawing<'_>> {
        match self.anchor() {
            Some(a) => AnchoredDrawing::new(self, a.v0, a.order.clone()),
            None if self.rotations().is_none() => Err(Error::RotationMissing),
            None => Err(Error::AnchorUnavailable(0)),
        }
    }
}
