//! Exhaustive ground truth for small drawings.
//!
//! Every search carries a budget; a result whose search was cut short is
//! marked inexact and is then only a lower bound.

use std::time::{Duration, Instant};

use crate::curves::{arc_point, min_vertex_distance, vertex_position};
use crate::drawing::{Drawing, Edge};
use crate::error::{Error, Result};
use crate::extraction::PatternKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub time: Duration,
    pub nodes: u64,
}

impl OracleBudget {
    pub fn new(time: Duration, nodes: u64) -> Result<Self> {
        if time.is_zero() || nodes == 0 {
            return Err(Error::Validation("oracle budgets must be positive".into()));
        }
        Ok(OracleBudget { time, nodes })
    }

    pub fn seconds(s: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Validation(format!("invalid time budget {s}")));
        }
        OracleBudget::new(Duration::from_secs_f64(s), u64::MAX)
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            time: Duration::from_secs(60),
            nodes: u64::MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub size: usize,
    pub witness: Vec<usize>,
    pub nodes: u64,
    /// `false` when the budget ran out; `size` is then a lower bound.
    pub exact: bool,
}

impl OracleResult {
    pub fn to_text(&self) -> String {
        let vs: Vec<String> = self.witness.iter().map(|v| v.to_string()).collect();
        format!(
            "size {}\nwitness {}\nnodes {}\n{}\n",
            self.size,
            vs.join(" "),
            self.nodes,
            if self.exact { "exact" } else { "lower-bound" }
        )
    }
}

struct Meter {
    start: Instant,
    budget: OracleBudget,
    nodes: u64,
    stopped: bool,
}

impl Meter {
    fn new(budget: OracleBudget) -> Self {
        Meter {
            start: Instant::now(),
            budget,
            nodes: 0,
            stopped: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes >= self.budget.nodes
            || (self.nodes.is_multiple_of(1024) && self.start.elapsed() >= self.budget.time)
        {
            self.stopped = true;
        }
        !self.stopped
    }
}

#[inline]
fn cr(d: &Drawing, a: usize, b: usize, c: usize, e: usize) -> bool {
    d.cross_unchecked(Edge::new(a, b), Edge::new(c, e))
}

/// Whether `a, b, c, x` in this order realise the pattern on four vertices.
fn fits(d: &Drawing, kind: PatternKind, a: usize, b: usize, c: usize, x: usize) -> bool {
    let inter = cr(d, a, c, b, x);
    let nest = cr(d, a, x, b, c);
    let side = cr(d, a, b, c, x);
    match kind {
        PatternKind::Convex => inter && !nest && !side,
        PatternKind::Twisted => nest && !inter && !side,
    }
}

struct PatternSearch<'a> {
    d: &'a Drawing,
    kind: PatternKind,
    best: Vec<usize>,
    meter: Meter,
}

impl PatternSearch<'_> {
    fn dfs(&mut self, seq: &mut Vec<usize>, cands: &[usize]) {
        if !self.meter.tick() {
            return;
        }
        if seq.len() > self.best.len() {
            self.best = seq.clone();
        }
        if seq.len() + cands.len() <= self.best.len() {
            return;
        }
        for &x in cands {
            let next: Vec<usize> = cands
                .iter()
                .copied()
                .filter(|&y| {
                    y != x
                        && (0..seq.len()).all(|i| {
                            (i + 1..seq.len())
                                .all(|j| fits(self.d, self.kind, seq[i], seq[j], x, y))
                        })
                })
                .collect();
            seq.push(x);
            self.dfs(seq, &next);
            seq.pop();
            if self.meter.stopped || seq.len() + cands.len() <= self.best.len() {
                return;
            }
        }
    }
}

/// Largest `k` such that some ordered `k`-subset realises the pattern,
/// by branch and bound over ordered sequences. Every new vertex must fit
/// with all triples already chosen, so candidate lists shrink with depth.
/// Convex sequences start at their smallest vertex, which loses nothing
/// because the convex pattern is invariant under rotation.
pub fn max_pattern_exact(d: &Drawing, kind: PatternKind, budget: OracleBudget) -> OracleResult {
    let n = d.n();
    let mut search = PatternSearch {
        d,
        kind,
        best: vec![0],
        meter: Meter::new(budget),
    };
    let mut seq = Vec::new();
    for x in 0..n {
        let cands: Vec<usize> = match kind {
            PatternKind::Convex => (x + 1..n).collect(),
            PatternKind::Twisted => (0..n).filter(|&y| y != x).collect(),
        };
        if cands.len() < search.best.len() {
            continue;
        }
        seq.push(x);
        search.dfs(&mut seq, &cands);
        seq.pop();
        if search.meter.stopped {
            break;
        }
    }
    OracleResult {
        size: search.best.len(),
        witness: search.best,
        nodes: search.meter.nodes,
        exact: !search.meter.stopped,
    }
}

struct PathSearch<'a> {
    d: &'a Drawing,
    best: Vec<usize>,
    goal: usize,
    meter: Meter,
}

impl PathSearch<'_> {
    fn dfs(&mut self, path: &mut Vec<usize>, free: &mut Vec<usize>) {
        if !self.meter.tick() {
            return;
        }
        if path.len() > self.best.len() {
            self.best = path.clone();
        }
        if self.best.len() >= self.goal || path.len() + free.len() <= self.best.len() {
            return;
        }
        let last = *path.last().expect("non-empty path");
        for idx in 0..free.len() {
            let y = free[idx];
            let ok = path.windows(2).all(|w| {
                let (a, b) = (w[0], w[1]);
                a == y || b == y || a == last || b == last || !cr(self.d, a, b, last, y)
            });
            if !ok {
                continue;
            }
            free.swap_remove(idx);
            path.push(y);
            self.dfs(path, free);
            path.pop();
            free.push(y);
            let l = free.len() - 1;
            free.swap(idx, l);
            if self.meter.stopped
                || self.best.len() >= self.goal
                || path.len() + free.len() <= self.best.len()
            {
                return;
            }
        }
    }
}

/// Longest path with pairwise non-crossing edges.
pub fn longest_plane_path_exact(d: &Drawing, budget: OracleBudget) -> OracleResult {
    let all: Vec<usize> = (0..d.n()).collect();
    longest_plane_path_within(d, &all, None, budget)
}

/// Longest plane path using only `vertices`; stops early once a path of
/// `goal` vertices is found (the result is then exact only if `goal` is the
/// number of vertices).
pub fn longest_plane_path_within(
    d: &Drawing,
    vertices: &[usize],
    goal: Option<usize>,
    budget: OracleBudget,
) -> OracleResult {
    let goal = goal.unwrap_or(vertices.len()).min(vertices.len());
    let mut search = PathSearch {
        d,
        best: Vec::new(),
        goal,
        meter: Meter::new(budget),
    };
    for &v in vertices {
        let mut free: Vec<usize> = vertices.iter().copied().filter(|&u| u != v).collect();
        let mut path = vec![v];
        search.dfs(&mut path, &mut free);
        if search.meter.stopped || search.best.len() >= goal {
            break;
        }
    }
    let hit_goal = search.best.len() >= goal;
    OracleResult {
        size: search.best.len(),
        witness: search.best,
        nodes: search.meter.nodes,
        exact: !search.meter.stopped && (goal == vertices.len() || !hit_goal),
    }
}

const MAX_HALVINGS: u32 = 30;
const ANGLE_TOL: f64 = 1e-11;

/// Rotation system measured from the drawn curves.
///
/// Around every vertex each incident arc is followed until it is at
/// distance `eps` from the vertex, and the arcs are sorted by the angle of
/// that point. `eps` starts at a thousandth of the smallest vertex distance:
/// segments (convex, points) never need less; half-circles of radius `r`
/// deviate from the vertical by `asin(eps / 2r)`, distinct for the radii
/// `1/2, 1, ..., (n-1)/2`; spiral arcs leave with slopes set by the radius
/// gaps. When two germs are within `1e-11` rad, `eps` is halved, at most 30
/// times.
pub fn numeric_rotation_oracle(d: &Drawing) -> Result<Vec<Vec<usize>>> {
    let feature = min_vertex_distance(d)?;
    if !(feature > 0.0) {
        return Err(Error::DegenerateInput(
            "two vertices share a position".into(),
        ));
    }
    (0..d.n())
        .map(|v| numeric_rotation_at(d, v, feature * 1e-3))
        .collect()
}

fn numeric_rotation_at(d: &Drawing, v: usize, eps0: f64) -> Result<Vec<usize>> {
    let center = vertex_position(d, v)?;
    let mut eps = eps0;
    for _ in 0..=MAX_HALVINGS {
        let mut germs = Vec::with_capacity(d.n() - 1);
        for u in (0..d.n()).filter(|&u| u != v) {
            let e = Edge::new(u, v);
            let from_v = e.0 == v;
            let at = |t: f64| arc_point(d, e, if from_v { t } else { 1.0 - t });
            let dist = |t: f64| -> Result<f64> {
                let p = at(t)?;
                Ok((p.0 - center.0).hypot(p.1 - center.1))
            };
            let (mut lo, mut hi) = (0.0f64, 0.5f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if dist(mid)? < eps {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let p = at(hi)?;
            let mut ang = (p.1 - center.1).atan2(p.0 - center.0);
            if ang < 0.0 {
                ang += std::f64::consts::TAU;
            }
            germs.push((ang, u));
        }
        germs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let tied = germs.windows(2).any(|w| w[1].0 - w[0].0 < ANGLE_TOL)
            || (germs.len() > 1
                && germs[0].0 + std::f64::consts::TAU - germs[germs.len() - 1].0 < ANGLE_TOL);
        if !tied {
            return Ok(germs.into_iter().map(|(_, u)| u).collect());
        }
        eps *= 0.5;
    }
    Err(Error::DegenerateInput(format!(
        "arcs at vertex {v} cannot be separated numerically"
    )))
}

/// Equality of cyclic sequences.
pub fn same_cyclic_order(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        Some(s) => (0..a.len()).all(|i| a[i] == b[(s + i) % b.len()]),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{verify_certificate, Certificate, CertificateKind};
    use crate::drawing::Model;
    use crate::generators::{gen_convex, gen_halfcircle_seeded, gen_straightline, gen_twisted};
    use crate::Point;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn pattern_examples() {
        let c6 = gen_convex(6).unwrap();
        assert_eq!(
            max_pattern_exact(&c6, PatternKind::Convex, budget()).size,
            6
        );
        let t6 = gen_twisted(6).unwrap();
        let r = max_pattern_exact(&t6, PatternKind::Convex, budget());
        assert_eq!(r.size, 4);
        assert!(r.exact);
        let cert = Certificate::new(CertificateKind::Convex, r.witness.clone());
        assert!(verify_certificate(&t6, &cert).unwrap().is_pass());
        assert_eq!(
            max_pattern_exact(&t6, PatternKind::Twisted, budget()).size,
            6
        );
        // relabelling matters: 0,1,3,2 is convex in T6 although 0,1,2,3 is not
        let cert = Certificate::new(CertificateKind::Convex, vec![0, 1, 3, 2]);
        assert!(verify_certificate(&t6, &cert).unwrap().is_pass());
    }

    #[test]
    fn pattern_budget_marks_lower_bounds() {
        let c = gen_convex(12).unwrap();
        let r = max_pattern_exact(
            &c,
            PatternKind::Twisted,
            OracleBudget::new(Duration::from_secs(10), 5).unwrap(),
        );
        assert!(!r.exact);
    }

    #[test]
    fn plane_path_examples() {
        let r = longest_plane_path_exact(&gen_convex(5).unwrap(), budget());
        assert_eq!(r.size, 5);
        let r = longest_plane_path_exact(&gen_twisted(5).unwrap(), budget());
        assert_eq!(r.size, 5);
        let r = longest_plane_path_exact(&gen_convex(2).unwrap(), budget());
        assert_eq!(r.size, 2);
        for seed in 0..5 {
            let d = gen_halfcircle_seeded(9, seed).unwrap();
            let r = longest_plane_path_exact(&d, budget());
            let cert = Certificate::new(CertificateKind::PlanePath, r.witness.clone());
            assert!(verify_certificate(&d, &cert).unwrap().is_pass());
        }
    }

    #[test]
    fn rotations_match_analytic() {
        for n in 3..10 {
            let d = gen_convex(n).unwrap();
            let num = numeric_rotation_oracle(&d).unwrap();
            for v in 0..n {
                assert!(
                    same_cyclic_order(&num[v], &d.rotations().unwrap()[v]),
                    "convex n={n} v={v}"
                );
            }
        }
        for seed in 0..5 {
            let d = gen_halfcircle_seeded(6, seed).unwrap();
            let num = numeric_rotation_oracle(&d).unwrap();
            for v in 0..6 {
                assert!(
                    same_cyclic_order(&num[v], &d.rotations().unwrap()[v]),
                    "halfcircle seed={seed} v={v}"
                );
            }
        }
        let d = gen_twisted(8).unwrap();
        let num = numeric_rotation_oracle(&d).unwrap();
        for v in 0..8 {
            assert!(
                same_cyclic_order(&num[v], &d.rotations().unwrap()[v]),
                "twisted v={v}"
            );
        }
        let pts = vec![
            Point::new(0, 0),
            Point::new(7, 1),
            Point::new(3, 9),
            Point::new(2, 2),
        ];
        let d = gen_straightline(pts).unwrap();
        let num = numeric_rotation_oracle(&d).unwrap();
        assert_eq!(num, d.rotations().unwrap());
    }

    #[test]
    fn duplicate_points_are_degenerate() {
        let pts = vec![Point::new(0, 0), Point::new(1, 0), Point::new(0, 0)];
        let d = Drawing::new(3, Model::Points(pts), None, None).unwrap();
        assert!(matches!(
            numeric_rotation_oracle(&d),
            Err(Error::DegenerateInput(_))
        ));
        let e = Drawing::explicit(3, &[]).unwrap();
        assert_eq!(numeric_rotation_oracle(&e), Err(Error::GeometryMissing));
    }

    #[test]
    fn cyclic_equality() {
        assert!(same_cyclic_order(&[1, 2, 3], &[3, 1, 2]));
        assert!(!same_cyclic_order(&[1, 2, 3], &[3, 2, 1]));
        assert!(!same_cyclic_order(&[1, 2], &[1, 2, 3]));
    }
}
