//! Exact planar predicates over integer coordinates.
//!
//! Everything here is generic over the coordinate type. Native arithmetic is
//! used while it cannot overflow; on overflow the computation is redone in
//! arbitrary precision, so every predicate is exact for every `Coord`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{PrimInt, Signed};

/// Signed primitive integer usable as an exact coordinate.
pub trait Coord: PrimInt + Signed + Into<BigInt> + fmt::Debug + fmt::Display {}

impl<T> Coord for T where T: PrimInt + Signed + Into<BigInt> + fmt::Debug + fmt::Display {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub const fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl<T> From<[T; 2]> for Point<T> {
    fn from([x, y]: [T; 2]) -> Self {
        Point { x, y }
    }
}

impl<T> From<Point<T>> for [T; 2] {
    fn from(p: Point<T>) -> Self {
        [p.x, p.y]
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<T: Coord> Point<T> {
    /// Lossy conversion for rendering and numeric cross-checks.
    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }
}

fn det_native<T: Coord>(ax: T, ay: T, bx: T, by: T) -> Option<Ordering> {
    let l = ax.checked_mul(&by)?;
    let r = ay.checked_mul(&bx)?;
    Some(l.cmp(&r))
}

/// Sign of the cross product `(b - a) x (c - a)`; `Greater` means a
/// counterclockwise turn.
pub fn orient<T: Coord>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> Ordering {
    let native = (|| {
        let ux = b.x.checked_sub(&a.x)?;
        let uy = b.y.checked_sub(&a.y)?;
        let vx = c.x.checked_sub(&a.x)?;
        let vy = c.y.checked_sub(&a.y)?;
        det_native(ux, uy, vx, vy)
    })();
    match native {
        Some(o) => o,
        None => {
            let (ax, ay): (BigInt, BigInt) = (a.x.into(), a.y.into());
            let ux = Into::<BigInt>::into(b.x) - &ax;
            let uy = Into::<BigInt>::into(b.y) - &ay;
            let vx = Into::<BigInt>::into(c.x) - &ax;
            let vy = Into::<BigInt>::into(c.y) - &ay;
            (ux * vy).cmp(&(uy * vx))
        }
    }
}

/// Proper crossing of segments `ab` and `cd` with four distinct endpoints,
/// assuming no three of them are collinear.
pub fn segments_cross<T: Coord>(a: &Point<T>, b: &Point<T>, c: &Point<T>, d: &Point<T>) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o3 != Ordering::Equal
}

// 0 for directions in [0, pi), 1 for [pi, 2pi)
fn half<T: Coord>(center: &Point<T>, q: &Point<T>) -> u8 {
    if q.y > center.y || (q.y == center.y && q.x > center.x) {
        0
    } else {
        1
    }
}

/// Compares `p` and `q` by the counterclockwise angle of `p - center` and
/// `q - center`, measured from the positive x-axis.
pub fn angular_cmp<T: Coord>(center: &Point<T>, p: &Point<T>, q: &Point<T>) -> Ordering {
    half(center, p)
        .cmp(&half(center, q))
        .then_with(|| orient(center, q, p))
}

/// Compares the undirected lines through `center`; equal means `center`, `p`
/// and `q` are collinear.
fn line_cmp<T: Coord>(center: &Point<T>, p: &Point<T>, q: &Point<T>) -> Ordering {
    let flip = half(center, p) != half(center, q);
    let o = orient(center, q, p);
    if flip {
        o.reverse()
    } else {
        o
    }
}

/// Indices of `points` other than `center_idx`, sorted counterclockwise
/// around `points[center_idx]` starting from the positive x-axis.
pub fn ccw_order<T: Coord>(points: &[Point<T>], center_idx: usize) -> Vec<usize> {
    let c = &points[center_idx];
    let mut others: Vec<usize> = (0..points.len()).filter(|&i| i != center_idx).collect();
    others.sort_by(|&i, &j| angular_cmp(c, &points[i], &points[j]));
    others
}

/// Finds a triple of collinear points (or a duplicated point) in
/// `O(n^2 log n)` time.
pub fn find_degeneracy<T: Coord>(points: &[Point<T>]) -> Option<Vec<usize>> {
    let mut seen: Vec<usize> = (0..points.len()).collect();
    seen.sort_by(|&i, &j| points[i].cmp(&points[j]));
    for w in seen.windows(2) {
        if points[w[0]] == points[w[1]] {
            return Some(vec![w[0], w[1]]);
        }
    }
    for (ci, c) in points.iter().enumerate() {
        let mut others: Vec<usize> = (0..points.len()).filter(|&i| i != ci).collect();
        others.sort_by(|&i, &j| line_cmp(c, &points[i], &points[j]));
        for w in others.windows(2) {
            if line_cmp(c, &points[w[0]], &points[w[1]]) == Ordering::Equal {
                let mut t = vec![ci, w[0], w[1]];
                t.sort_unstable();
                return Some(t);
            }
        }
    }
    None
}

/// For a point of a set in general position, returns the index (into the
/// counterclockwise order `ccw`) of the neighbour that precedes the reflex
/// angular gap, i.e. the gap that opens to the outside of the convex hull.
/// `None` if the point is not a hull vertex.
pub fn hull_gap<T: Coord>(points: &[Point<T>], center_idx: usize, ccw: &[usize]) -> Option<usize> {
    let c = &points[center_idx];
    match ccw.len() {
        0 => None,
        1 => Some(0),
        len => (0..len).find(|&i| {
            let p = &points[ccw[i]];
            let q = &points[ccw[(i + 1) % len]];
            orient(c, p, q) == Ordering::Less
        }),
    }
}

/// Size of the largest subset in convex position, by exhaustive search.
/// Intended for tiny sets only.
pub fn max_convex_subset<T: Coord>(points: &[Point<T>]) -> usize {
    let n = points.len();
    assert!(
        n <= 20,
        "exhaustive convex-position search is limited to 20 points"
    );
    let mut best = n.min(3);
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if in_convex_position(points, &idx) {
            best = size;
        }
    }
    best
}

fn in_convex_position<T: Coord>(points: &[Point<T>], idx: &[usize]) -> bool {
    // a point is redundant iff it lies inside a triangle of three others
    for &p in idx {
        for (a_i, &a) in idx.iter().enumerate() {
            for (b_i, &b) in idx.iter().enumerate().skip(a_i + 1) {
                for &c in idx.iter().skip(b_i + 1) {
                    if p == a || p == b || p == c {
                        continue;
                    }
                    let (pa, pb, pc) = (&points[a], &points[b], &points[c]);
                    let o1 = orient(pa, pb, &points[p]);
                    let o2 = orient(pb, pc, &points[p]);
                    let o3 = orient(pc, pa, &points[p]);
                    if o1 == o2 && o2 == o3 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point<i64> {
        Point::new(x, y)
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), Ordering::Greater);
        assert_eq!(orient(&p(0, 0), &p(0, 1), &p(1, 0)), Ordering::Less);
        assert_eq!(orient(&p(0, 0), &p(1, 1), &p(2, 2)), Ordering::Equal);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let a = p(-big, -big);
        let b = p(big, -big + 1);
        let c = p(big, big);
        assert_eq!(orient(&a, &b, &c), Ordering::Greater);
        let a = Point::new(i128::MIN / 4, 0i128);
        let b = Point::new(i128::MAX / 4, 1);
        let c = Point::new(i128::MAX / 4, 2);
        assert_eq!(orient(&a, &b, &c), Ordering::Greater);
    }

    #[test]
    fn square_diagonals_cross() {
        let pts = [p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
        assert!(segments_cross(&pts[0], &pts[2], &pts[1], &pts[3]));
        assert!(!segments_cross(&pts[0], &pts[1], &pts[2], &pts[3]));
    }

    #[test]
    fn angular_sort_and_hull_gap() {
        let pts = [p(0, 0), p(1, 0), p(0, 1), p(-1, 0), p(0, -1)];
        let ccw = ccw_order(&pts, 0);
        assert_eq!(ccw, vec![1, 2, 3, 4]);
        assert_eq!(hull_gap(&pts, 0, &ccw), None);
        let ccw = ccw_order(&pts, 1);
        assert!(hull_gap(&pts, 1, &ccw).is_some());
    }

    #[test]
    fn degeneracies_are_found() {
        assert_eq!(
            find_degeneracy(&[p(0, 0), p(1, 1), p(3, 3), p(0, 5)]),
            Some(vec![0, 1, 2])
        );
        assert_eq!(
            find_degeneracy(&[p(0, 0), p(1, 1), p(0, 0)]),
            Some(vec![0, 2])
        );
        assert_eq!(find_degeneracy(&[p(0, 0), p(1, 0), p(0, 1), p(5, 7)]), None);
        // opposite directions through the centre are collinear too
        assert!(find_degeneracy(&[p(0, 0), p(1, 0), p(-1, 0), p(3, 7)]).is_some());
    }

    #[test]
    fn convex_subset_of_triangle_with_centre() {
        let pts = [p(0, 0), p(10, 0), p(0, 10), p(2, 3)];
        assert_eq!(max_convex_subset(&pts), 3);
        let pts = [p(0, 0), p(10, 0), p(10, 10), p(0, 10)];
        assert_eq!(max_convex_subset(&pts), 4);
    }
}
