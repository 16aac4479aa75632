//! Constructors for the standard drawing families, with analytic rotation
//! systems and canonical anchors.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drawing::{edge_count, Anchor, Drawing, Edge, Model};
use crate::error::{Error, Result};
use crate::geometry::{ccw_order, find_degeneracy, hull_gap, orient};
use crate::{Point, SpiralParams};

/// Half-plane of a half-circle edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn symbol(self) -> char {
        match self {
            Side::Upper => 'U',
            Side::Lower => 'L',
        }
    }
}

/// One side per edge, indexed by edge rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfCircleSigns {
    n: usize,
    signs: Vec<Side>,
}

impl HalfCircleSigns {
    pub fn new(n: usize, signs: Vec<Side>) -> Result<Self> {
        if signs.len() != edge_count(n) {
            return Err(Error::InvalidSigns {
                expected: edge_count(n),
                got: signs.len(),
            });
        }
        Ok(HalfCircleSigns { n, signs })
    }

    /// Independent fair coin per edge from a seeded ChaCha stream.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let signs = (0..edge_count(n))
            .map(|_| {
                if rng.gen::<bool>() {
                    Side::Upper
                } else {
                    Side::Lower
                }
            })
            .collect();
        HalfCircleSigns { n, signs }
    }

    pub fn uniform(n: usize, side: Side) -> Self {
        HalfCircleSigns {
            n,
            signs: vec![side; edge_count(n)],
        }
    }

    /// Parses a `U`/`L` string in edge-rank order.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                'U' => Ok(Side::Upper),
                'L' => Ok(Side::Lower),
                other => Err(Error::Validation(format!("invalid sign symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        HalfCircleSigns::new(n, signs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Side of the edge `{a, b}`.
    pub fn get(&self, a: usize, b: usize) -> Side {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.signs[a * (2 * self.n - a - 1) / 2 + (b - a - 1)]
    }
}

impl fmt::Display for HalfCircleSigns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

/// Radii of the spiral realization of the twisted graph. Vertex `i` sits on
/// the positive x-axis at radius `r_i`; the edge `{i, j}` (`i < j`) is the
/// arc that sweeps one full counterclockwise turn while its radius grows
/// linearly from `r_i` to `r_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiralTwistedParams<R> {
    radii: Vec<R>,
}

impl<R> SpiralTwistedParams<R>
where
    R: Clone + PartialOrd + Signed + ToPrimitive + fmt::Display,
{
    pub fn new(radii: Vec<R>) -> Result<Self> {
        if let Some(r) = radii.first() {
            if !r.is_positive() {
                return Err(Error::Validation(format!("radius {r} is not positive")));
            }
        }
        if let Some(w) = radii.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Validation(format!(
                "radii must increase strictly ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(SpiralTwistedParams { radii })
    }

    pub fn radii(&self) -> &[R] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// The radius difference of two arcs is linear in the swept angle, so
    /// they cross exactly when it changes sign between the start and the end
    /// of the turn.
    pub fn arcs_cross(&self, e1: Edge, e2: Edge) -> bool {
        let r = &self.radii;
        let start = r[e1.0].clone() - r[e2.0].clone();
        let end = r[e1.1].clone() - r[e2.1].clone();
        (start.is_positive() && end.is_negative()) || (start.is_negative() && end.is_positive())
    }

    /// Point of the arc `e` at parameter `s` in `[0, 1]`.
    pub fn arc_point(&self, e: Edge, s: f64) -> (f64, f64) {
        let ra = self.radii[e.0].to_f64().unwrap_or(f64::NAN);
        let rb = self.radii[e.1].to_f64().unwrap_or(f64::NAN);
        let theta = std::f64::consts::TAU * s;
        let r = ra + (rb - ra) * s;
        (r * theta.cos(), r * theta.sin())
    }
}

impl SpiralParams {
    /// Radii `1, 2, ..., m`.
    pub fn standard(m: usize) -> Self {
        SpiralTwistedParams {
            radii: (1..=m as i64).map(crate::Rational::from_integer).collect(),
        }
    }
}

impl<R: FromStr> SpiralTwistedParams<R> {
    pub fn parse(items: &[String]) -> Result<Vec<R>> {
        items
            .iter()
            .map(|s| R::from_str(s).map_err(|_| Error::Validation(format!("invalid radius {s:?}"))))
            .collect()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Validation(format!(
            "need at least 2 vertices, got {n}"
        )));
    }
    Ok(())
}

/// Rotation of the regular polygon at `q`: `q+1, q+2, ..., q-1`.
fn convex_rotations(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|q| (1..n).map(|s| (q + s) % n).collect())
        .collect()
}

/// Complete convex geometric graph on a regular `n`-gon, vertices in
/// counterclockwise order, anchored at vertex 0.
pub fn gen_convex(n: usize) -> Result<Drawing> {
    check_n(n)?;
    let rotations = convex_rotations(n);
    let anchor = Anchor::from_gap(0, &rotations[0], n - 2);
    Drawing::new(n, Model::Convex, Some(rotations), Some(anchor))
}

/// Twisted graph with radii `1..=m`.
pub fn gen_twisted(m: usize) -> Result<Drawing> {
    check_n(m)?;
    gen_twisted_with(SpiralParams::standard(m))
}

/// Twisted graph from explicit spiral radii.
///
/// At vertex `k` the arcs to larger vertices leave above the axis, flatter
/// for larger targets; arcs to smaller vertices arrive from below, steeper
/// for larger sources. Counterclockwise this gives
/// `m-1, m-2, ..., k+1, 0, 1, ..., k-1`. The outermost vertex `m-1` touches
/// the unbounded cell through the outward radial direction, which follows
/// `m-2` in its rotation.
pub fn gen_twisted_with(params: SpiralParams) -> Result<Drawing> {
    let m = params.len();
    check_n(m)?;
    let rotations: Vec<Vec<usize>> = (0..m)
        .map(|k| (k + 1..m).rev().chain(0..k).collect())
        .collect();
    let anchor = Anchor::from_gap(m - 1, &rotations[m - 1], m - 2);
    Drawing::new(m, Model::Twisted(params), Some(rotations), Some(anchor))
}

/// Half-circle rotation at `v`.
///
/// Every upper arc leaves vertically upwards and every lower arc vertically
/// downwards. Near `v` an arc of radius `r` deviates from the vertical by the
/// angle `asin(eps / 2r)`, so sharper arcs (shorter edges) sit further from
/// the vertical. Counterclockwise from the positive axis: upper arcs to the
/// right by increasing target, upper arcs to the left by increasing source,
/// lower arcs to the left by decreasing source, lower arcs to the right by
/// decreasing target.
fn halfcircle_rotation(signs: &HalfCircleSigns, v: usize) -> Vec<usize> {
    let n = signs.n();
    let up = |u: usize| signs.get(u, v) == Side::Upper;
    let mut rot = Vec::with_capacity(n - 1);
    rot.extend((v + 1..n).filter(|&j| up(j)));
    rot.extend((0..v).filter(|&i| up(i)));
    rot.extend((0..v).rev().filter(|&i| !up(i)));
    rot.extend((v + 1..n).rev().filter(|&j| !up(j)));
    rot
}

/// Half-circle drawing with the given sides, anchored at the leftmost vertex.
pub fn gen_halfcircle(signs: HalfCircleSigns) -> Result<Drawing> {
    let n = signs.n();
    check_n(n)?;
    let rotations: Vec<Vec<usize>> = (0..n).map(|v| halfcircle_rotation(&signs, v)).collect();
    // the leftward axis direction at vertex 0 is unbounded; it follows the
    // last upper arc counterclockwise
    let uppers = (1..n).filter(|&j| signs.get(0, j) == Side::Upper).count();
    let gap = if uppers == 0 { n - 2 } else { uppers - 1 };
    let anchor = Anchor::from_gap(0, &rotations[0], gap);
    Drawing::new(n, Model::HalfCircle(signs), Some(rotations), Some(anchor))
}

/// Half-circle drawing with sides drawn from `seed`.
pub fn gen_halfcircle_seeded(n: usize, seed: u64) -> Result<Drawing> {
    check_n(n)?;
    gen_halfcircle(HalfCircleSigns::random(n, seed))
}

/// Straight-line drawing of integer points in general position, anchored at
/// the lowest (then leftmost) point.
pub fn gen_straightline(points: Vec<Point>) -> Result<Drawing> {
    let n = points.len();
    check_n(n)?;
    if let Some(bad) = find_degeneracy(&points) {
        let desc: Vec<String> = bad.iter().map(|&i| format!("#{i} {}", points[i])).collect();
        let what = if bad.len() == 2 {
            "duplicate points"
        } else {
            "collinear points"
        };
        return Err(Error::DegenerateInput(format!(
            "{what}: {}",
            desc.join(", ")
        )));
    }
    let rotations: Vec<Vec<usize>> = (0..n).map(|v| ccw_order(&points, v)).collect();
    let v0 = (0..n)
        .min_by(|&a, &b| (points[a].y, points[a].x).cmp(&(points[b].y, points[b].x)))
        .expect("n >= 2");
    let gap = hull_gap(&points, v0, &rotations[v0]).ok_or_else(|| {
        Error::InternalInvariantBroken("lowest point is not a hull vertex".into())
    })?;
    let anchor = Anchor::from_gap(v0, &rotations[v0], gap);
    Drawing::new(n, Model::Points(points), Some(rotations), Some(anchor))
}

/// Horton set of `2^k` points: the odd-indexed points form a translated copy
/// of the even-indexed ones, lifted high enough that each half lies entirely
/// above (resp. below) every line through two points of the other.
pub fn gen_horton(k: u32) -> Result<Vec<Point>> {
    if k > 12 {
        return Err(Error::SizeLimit(format!(
            "Horton sets are limited to 2^12 points, got 2^{k}"
        )));
    }
    let mut heights: Vec<i128> = vec![0];
    for level in 1..=k {
        let range = heights.iter().copied().max().unwrap_or(0);
        let lift = range * ((1i128 << level) + 2) + 1;
        heights = (0..1usize << level)
            .map(|i| heights[i / 2] + if i % 2 == 1 { lift } else { 0 })
            .collect();
    }
    Ok(heights
        .into_iter()
        .enumerate()
        .map(|(i, h)| Point::new(i as i128, h))
        .collect())
}

/// The anchor a family designates for `v0`, if any.
pub(crate) fn family_anchor(d: &Drawing, v0: usize) -> Option<Anchor> {
    let n = d.n();
    match d.model() {
        Model::Convex => {
            let rot: Vec<usize> = (1..n).map(|s| (v0 + s) % n).collect();
            Some(Anchor::from_gap(v0, &rot, n - 2))
        }
        Model::Points(points) => {
            let rot = ccw_order(points, v0);
            hull_gap(points, v0, &rot).map(|g| Anchor::from_gap(v0, &rot, g))
        }
        _ => None,
    }
}

/// `n` random integer points in general position, coordinates below
/// `2^32`, drawn from a seeded ChaCha stream. Candidates that repeat a point
/// or are collinear with two earlier points are redrawn.
pub fn gen_random_points(n: usize, seed: u64) -> Result<Vec<Point>> {
    if n > 1024 {
        return Err(Error::SizeLimit(format!(
            "random point sets are limited to 1024 points, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(rng.gen_range(0..1i128 << 32), rng.gen_range(0..1i128 << 32));
        let bad = pts.iter().enumerate().any(|(i, a)| {
            *a == p
                || pts[i + 1..]
                    .iter()
                    .any(|b| orient(a, b, &p) == std::cmp::Ordering::Equal)
        });
        if !bad {
            pts.push(p);
        }
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{max_convex_subset, segments_cross};

    #[test]
    fn convex_small_counts() {
        assert_eq!(gen_convex(3).unwrap().crossing_pairs().len(), 0);
        let c4 = gen_convex(4).unwrap();
        let pairs = c4.crossing_pairs();
        assert_eq!(
            pairs,
            vec![(
                crate::drawing::edge_index(0, 2, 4).unwrap(),
                crate::drawing::edge_index(1, 3, 4).unwrap()
            )]
        );
        assert_eq!(gen_convex(5).unwrap().crossing_pairs().len(), 5);
    }

    #[test]
    fn convex_four_matches_square_segments() {
        let sq = [
            Point::new(0, 0),
            Point::new(2, 0),
            Point::new(2, 2),
            Point::new(0, 2),
        ];
        let c4 = gen_convex(4).unwrap();
        for (a, b, c, d) in [(0, 2, 1, 3), (0, 1, 2, 3), (0, 3, 1, 2)] {
            assert_eq!(
                c4.cross(Edge(a, b), Edge(c, d)).unwrap(),
                segments_cross(&sq[a], &sq[b], &sq[c], &sq[d])
            );
        }
    }

    #[test]
    fn twisted_small_counts() {
        // one nested pair per 4-subset
        assert_eq!(gen_twisted(2).unwrap().crossing_pairs().len(), 0);
        assert_eq!(gen_twisted(4).unwrap().crossing_pairs().len(), 1);
        assert_eq!(gen_twisted(5).unwrap().crossing_pairs().len(), 5);
        let t5 = gen_twisted(5).unwrap();
        assert!(t5.cross(Edge(0, 4), Edge(1, 3)).unwrap());
        assert!(!t5.cross(Edge(0, 2), Edge(1, 3)).unwrap());
    }

    #[test]
    fn twisted_four_by_enumeration() {
        let t4 = gen_twisted(4).unwrap();
        let mut crossing = Vec::new();
        for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
            if t4.cross(Edge(a, b), Edge(c, d)).unwrap() {
                crossing.push((a, b, c, d));
            }
        }
        assert_eq!(crossing, vec![(0, 3, 1, 2)]);
    }

    #[test]
    fn spiral_radii_validation() {
        use crate::Rational;
        assert!(
            SpiralParams::new(vec![Rational::from_integer(1), Rational::from_integer(1)]).is_err()
        );
        assert!(
            SpiralParams::new(vec![Rational::from_integer(0), Rational::from_integer(1)]).is_err()
        );
        assert!(SpiralParams::new(vec![Rational::new(1, 2), Rational::new(2, 3)]).is_ok());
    }

    #[test]
    fn halfcircle_examples() {
        // 1-based {1,3},{2,4} -> 0-based {0,2},{1,3}
        let n = 4;
        let mut signs = HalfCircleSigns::uniform(n, Side::Upper);
        let d = gen_halfcircle(signs.clone()).unwrap();
        assert!(d.cross(Edge(0, 2), Edge(1, 3)).unwrap());
        assert!(!d.cross(Edge(0, 3), Edge(1, 2)).unwrap());
        signs.signs[crate::drawing::edge_index(1, 3, n).unwrap()] = Side::Lower;
        let d = gen_halfcircle(signs).unwrap();
        assert!(!d.cross(Edge(0, 2), Edge(1, 3)).unwrap());
    }

    #[test]
    fn halfcircle_sign_length_checked() {
        assert!(matches!(
            HalfCircleSigns::new(4, vec![Side::Upper; 5]),
            Err(Error::InvalidSigns {
                expected: 6,
                got: 5
            })
        ));
        assert!(HalfCircleSigns::parse(3, "ULX").is_err());
        let s = HalfCircleSigns::parse(3, "ULU").unwrap();
        assert_eq!(s.to_string(), "ULU");
    }

    #[test]
    fn halfcircle_anchor_order() {
        let d = gen_halfcircle_seeded(9, 3).unwrap();
        let Model::HalfCircle(signs) = d.model() else {
            unreachable!()
        };
        let up: Vec<usize> = (1..9)
            .rev()
            .filter(|&j| signs.get(0, j) == Side::Upper)
            .collect();
        let low: Vec<usize> = (1..9).filter(|&j| signs.get(0, j) == Side::Lower).collect();
        let expected: Vec<usize> = up.into_iter().chain(low).collect();
        assert_eq!(d.anchor().unwrap().order, expected);
        assert_eq!(d.anchor().unwrap().v0, 0);
    }

    #[test]
    fn seeded_halfcircle_is_reproducible() {
        let a = gen_halfcircle_seeded(20, 42).unwrap();
        let b = gen_halfcircle_seeded(20, 42).unwrap();
        let c = gen_halfcircle_seeded(20, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn straightline_examples() {
        let sq = vec![
            Point::new(0, 0),
            Point::new(2, 0),
            Point::new(2, 2),
            Point::new(0, 2),
        ];
        let d = gen_straightline(sq).unwrap();
        assert!(d.same_crossings(&gen_convex(4).unwrap()));

        let tri = vec![
            Point::new(0, 0),
            Point::new(10, 0),
            Point::new(0, 10),
            Point::new(2, 3),
        ];
        assert_eq!(gen_straightline(tri).unwrap().crossing_pairs().len(), 0);

        let col = vec![Point::new(0, 0), Point::new(1, 1), Point::new(2, 2)];
        assert!(matches!(
            gen_straightline(col),
            Err(Error::DegenerateInput(_))
        ));
        let dup = vec![Point::new(0, 0), Point::new(1, 1), Point::new(0, 0)];
        assert!(matches!(
            gen_straightline(dup),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn horton_examples() {
        assert_eq!(gen_horton(0).unwrap().len(), 1);
        assert_eq!(gen_horton(1).unwrap().len(), 2);
        let h3 = gen_horton(3).unwrap();
        assert_eq!(h3.len(), 8);
        assert!(max_convex_subset(&h3) <= 6);
        assert!(matches!(gen_horton(13), Err(Error::SizeLimit(_))));
        for k in 1..=10 {
            let pts = gen_horton(k).unwrap();
            assert_eq!(find_degeneracy(&pts), None, "k={k}");
        }
    }

    #[test]
    fn family_anchor_for_convex_vertices() {
        let d = gen_convex(6).unwrap();
        assert_eq!(family_anchor(&d, 2).unwrap().order, vec![1, 0, 5, 4, 3]);
    }

    #[test]
    fn random_points_are_in_general_position() {
        let pts = gen_random_points(60, 3).unwrap();
        assert_eq!(pts.len(), 60);
        assert_eq!(find_degeneracy(&pts), None);
        assert_eq!(pts, gen_random_points(60, 3).unwrap());
        assert!(gen_straightline(pts).is_ok());
    }
}
