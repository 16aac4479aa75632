//! Plane paths from the rotation system: angular sequences `theta`, the
//! plane `K_{2,m^2}` branch and the decreasing-subsequence construction.

use std::fmt;

use crate::anchored::AnchoredDrawing;
use crate::certificate::{verify_certificate, Certificate, CertificateKind, Verdict};
use crate::chromatics::{chi, TripleColor};
use crate::error::{Error, Result};
use crate::oracles::{longest_plane_path_within, OracleBudget};

/// Successors of position `i`, in the counterclockwise order of their
/// edges around `v_i`, starting right after the edge to `v0`.
pub fn theta(ad: &AnchoredDrawing<'_>, i: usize) -> Result<Vec<usize>> {
    let rot = ad.base().rotations().ok_or(Error::RotationMissing)?;
    if i == 0 || i >= ad.len() {
        return Err(Error::InvalidSelection(format!(
            "position {i} out of range"
        )));
    }
    let r = &rot[ad.vertex(i)];
    let start = r
        .iter()
        .position(|&u| u == ad.v0())
        .ok_or_else(|| Error::Validation("rotation misses the anchor".into()))?;
    Ok(r[start + 1..]
        .iter()
        .chain(&r[..start])
        .map(|&u| ad.position(u))
        .filter(|&p| p > i)
        .collect())
}

/// Longest chain under `before` with the earliest possible elements.
fn longest_chain(seq: &[usize], before: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let len = seq.len();
    if len == 0 {
        return Vec::new();
    }
    // from[i]: longest chain starting at index i; tails[l] holds the best
    // (for prepending) first element of a chain of length l + 1
    let mut from = vec![1usize; len];
    let mut tails: Vec<usize> = Vec::new();
    for i in (0..len).rev() {
        let x = seq[i];
        // tails is ordered so that chains can be extended by x exactly for
        // a prefix of it
        let l = tails.partition_point(|&t| before(x, t));
        from[i] = l + 1;
        if l == tails.len() {
            tails.push(x);
        } else if before(tails[l], x) {
            tails[l] = x;
        }
    }
    let best = *from.iter().max().expect("non-empty");
    let mut out = Vec::with_capacity(best);
    let mut need = best;
    let mut last: Option<usize> = None;
    for i in 0..len {
        if from[i] == need && last.is_none_or(|p| before(p, seq[i])) {
            out.push(seq[i]);
            last = Some(seq[i]);
            need -= 1;
            if need == 0 {
                break;
            }
        }
    }
    out
}

/// Longest increasing and longest decreasing subsequences, each the
/// lexicographically earliest by index among those of maximum length.
pub fn lis_lds(seq: &[usize]) -> (Vec<usize>, Vec<usize>) {
    (
        longest_chain(seq, |a, b| a < b),
        longest_chain(seq, |a, b| a > b),
    )
}

/// Plane `K_{2,m^2}` with centres `v0` and the first `v_i` whose `theta`
/// has an increasing subsequence of `m^2` terms; the leaves are that
/// subsequence.
pub fn find_plane_k2m2(ad: &AnchoredDrawing<'_>, m: usize) -> Result<Option<Certificate>> {
    let need = m * m;
    for i in 1..ad.len() {
        let th = theta(ad, i)?;
        if th.len() < need {
            continue;
        }
        let (lis, _) = lis_lds(&th);
        if lis.len() >= need {
            let mut vs = vec![ad.v0(), ad.vertex(i)];
            vs.extend(ad.vertices(&lis[..need]));
            let cert = Certificate::new(CertificateKind::PlaneBipartite, vs);
            return match verify_certificate(ad.base(), &cert)? {
                Verdict::Pass => Ok(Some(cert)),
                Verdict::Fail(v) => Err(Error::InternalInvariantBroken(format!(
                    "star pair from an increasing angular sequence crosses: {v}"
                ))),
            };
        }
    }
    Ok(None)
}

/// Whether `v` lies in the region bounded by `v0 a`, `a b` and `b v0`,
/// decided by the colour of the triple: inside exactly when the edge
/// `v0 v` crosses `a b`.
pub fn inside_delta(ad: &AnchoredDrawing<'_>, a: usize, b: usize, v: usize) -> Result<bool> {
    Ok(chi(ad, a, b, v)? == TripleColor::C001)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// The target length was at most 1; a single edge at the anchor.
    Trivial,
    /// A plane `K_{2,m^2}` was found.
    Bipartite,
    /// The decreasing-subsequence construction ran.
    Decreasing,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Trivial => "trivial",
            Branch::Bipartite => "bipartite",
            Branch::Decreasing => "decreasing",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathStep {
    /// Candidates before the step.
    pub candidates: usize,
    pub lis: usize,
    pub lds: usize,
    /// Position appended to the path.
    pub vertex: usize,
    pub inside: bool,
    pub kept: usize,
}

#[derive(Clone, Debug)]
pub struct PlanePathOptions {
    pub m_override: Option<usize>,
    /// Keep extending after the candidate set drops to `m^2`, until it is
    /// empty.
    pub drain: bool,
    /// Length at which the bipartite-branch search stops; `m` when unset.
    pub search_target: Option<usize>,
    pub search_budget: OracleBudget,
}

impl Default for PlanePathOptions {
    fn default() -> Self {
        PlanePathOptions {
            m_override: None,
            drain: true,
            search_target: None,
            search_budget: OracleBudget::seconds(5.0).expect("positive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanePathReport {
    pub m: usize,
    pub branch: Branch,
    pub path: Certificate,
    pub bipartite: Option<Certificate>,
    pub steps: Vec<PathStep>,
    /// Path length (vertices) when the candidate set first had at most
    /// `m^2` elements.
    pub threshold_len: Option<usize>,
    /// Whether the bipartite-branch search finished within its budget.
    pub search_exact: Option<bool>,
}

impl PlanePathReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("m {}\nbranch {}\n", self.m, self.branch);
        for s in &self.steps {
            out.push_str(&format!(
                "step candidates {} lis {} lds {} vertex {} {} kept {}\n",
                s.candidates,
                s.lis,
                s.lds,
                s.vertex,
                if s.inside { "inside" } else { "outside" },
                s.kept
            ));
        }
        if let Some(t) = self.threshold_len {
            out.push_str(&format!("threshold reached at length {t}\n"));
        }
        if let Some(b) = &self.bipartite {
            out.push_str(&format!("bipartite leaves {}\n", b.vertex_count()));
        }
        out.push_str(&format!(
            "path vertices {} edges {}\n",
            self.path.vertex_count(),
            self.path.edge_count()
        ));
        out
    }
}

/// `floor(log2 n / (2 log2 log2 n))`, at least 1.
pub fn default_m(n: usize) -> usize {
    let l = (n as f64).log2();
    if l <= 2.0 {
        return 1;
    }
    ((l / (2.0 * l.log2())).floor() as usize).max(1)
}

fn broken(msg: String) -> Error {
    Error::InternalInvariantBroken(msg)
}

pub fn extract_plane_path(
    ad: &AnchoredDrawing<'_>,
    opts: &PlanePathOptions,
) -> Result<PlanePathReport> {
    let n = ad.len();
    if n < 3 {
        return Err(Error::Validation(format!(
            "need at least 3 vertices, got {n}"
        )));
    }
    if ad.base().rotations().is_none() {
        return Err(Error::RotationMissing);
    }
    let m = opts.m_override.unwrap_or_else(|| default_m(n)).max(1);
    let mut report = PlanePathReport {
        m,
        branch: Branch::Trivial,
        path: Certificate::new(CertificateKind::PlanePath, vec![ad.v0(), ad.vertex(1)]),
        bipartite: None,
        steps: Vec::new(),
        threshold_len: None,
        search_exact: None,
    };
    if m <= 1 {
        return Ok(report);
    }

    if let Some(star) = find_plane_k2m2(ad, m)? {
        let target = opts.search_target.unwrap_or(m).max(2);
        let r =
            longest_plane_path_within(ad.base(), &star.vertices, Some(target), opts.search_budget);
        let path = Certificate::new(CertificateKind::PlanePath, r.witness);
        if !verify_certificate(ad.base(), &path)?.is_pass() {
            return Err(broken("searched path is not plane".into()));
        }
        report.branch = Branch::Bipartite;
        report.path = path;
        report.bipartite = Some(star);
        report.search_exact = Some(r.exact);
        return Ok(report);
    }

    report.branch = Branch::Decreasing;
    let sq = m * m;
    let mut u = vec![1usize];
    let mut s: Vec<usize> = (2..n).collect();
    let mut live = vec![false; n];
    while !s.is_empty() {
        if s.len() <= sq && report.threshold_len.is_none() {
            report.threshold_len = Some(u.len());
            if !opts.drain {
                break;
            }
        }
        let last = *u.last().expect("non-empty");
        for &v in &s {
            live[v] = true;
        }
        let filtered: Vec<usize> = theta(ad, last)?.into_iter().filter(|&p| live[p]).collect();
        for &v in &s {
            live[v] = false;
        }
        let (lis, lds) = lis_lds(&filtered);
        if lis.len() >= sq {
            return Err(broken(format!(
                "increasing run of {} after the bipartite branch failed",
                lis.len()
            )));
        }
        if lds.len() * sq < s.len() {
            return Err(broken(format!(
                "decreasing run {} too short for {} candidates",
                lds.len(),
                s.len()
            )));
        }
        let next = *lds.iter().min().expect("non-empty");
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for &v in lds.iter().filter(|&&v| v != next) {
            if inside_delta(ad, last, next, v)? {
                inside.push(v);
            } else {
                outside.push(v);
            }
        }
        let rest = inside.len() + outside.len();
        let keep_inside = inside.len() >= outside.len();
        let mut kept = if keep_inside { inside } else { outside };
        if kept.len() * 2 < rest {
            return Err(broken("kept the smaller side".into()));
        }
        if s.len() > sq && kept.len() * 4 * sq < s.len() {
            return Err(broken(format!(
                "candidates fell from {} to {} with m = {m}",
                s.len(),
                kept.len()
            )));
        }
        kept.sort_unstable();
        report.steps.push(PathStep {
            candidates: s.len(),
            lis: lis.len(),
            lds: lds.len(),
            vertex: next,
            inside: keep_inside,
            kept: kept.len(),
        });
        u.push(next);
        s = kept;
    }
    if report.threshold_len.is_none() {
        report.threshold_len = Some(u.len());
    }

    check_path_invariants(ad, &u)?;
    let path = Certificate::new(CertificateKind::PlanePath, ad.vertices(&u));
    match verify_certificate(ad.base(), &path)? {
        Verdict::Pass => {}
        Verdict::Fail(v) => return Err(broken(format!("constructed path is not plane: {v}"))),
    }
    report.path = path;
    Ok(report)
}

/// Later path vertices lie on one side of every consecutive triangle, and
/// no anchor edge `v0 u_i` crosses a later path chord `u_j u_k`.
fn check_path_invariants(ad: &AnchoredDrawing<'_>, u: &[usize]) -> Result<()> {
    for i in 0..u.len().saturating_sub(3) {
        let side = inside_delta(ad, u[i], u[i + 1], u[i + 2])?;
        for &w in &u[i + 3..] {
            if inside_delta(ad, u[i], u[i + 1], w)? != side {
                return Err(broken(format!(
                    "positions {} and {w} on different sides of the triangle at ({}, {})",
                    u[i + 2],
                    u[i],
                    u[i + 1]
                )));
            }
        }
    }
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            for k in j + 1..u.len() {
                if ad.cross_at(0, u[i], u[j], u[k]) {
                    return Err(broken(format!(
                        "anchor edge to {} crosses chord ({}, {})",
                        u[i], u[j], u[k]
                    )));
                }
            }
        }
    }
    Ok(())
}
