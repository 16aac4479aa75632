//! Convex or twisted sub-patterns from an anchored drawing, the threshold
//! arithmetic behind them, and plane embeddings of trees into the patterns.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::anchored::AnchoredDrawing;
use crate::certificate::{verify_certificate, verify_plane_edges, Certificate, CertificateKind};
use crate::chromatics::{chi_bits, PhiOracle, PhiValue};
use crate::drawing::Edge;
use crate::error::{Error, Result};
use crate::ramsey::{Builder, Color, GameState, HalvingPainter, NaiveBuilder, Painter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternKind {
    Convex,
    Twisted,
}

impl PatternKind {
    pub fn certificate_kind(self) -> CertificateKind {
        match self {
            PatternKind::Convex => CertificateKind::Convex,
            PatternKind::Twisted => CertificateKind::Twisted,
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternKind::Convex => "convex",
            PatternKind::Twisted => "twisted",
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExtractOptions {
    /// Re-check the class and candidate invariants after every stage.
    pub audit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(Certificate),
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: usize,
    /// Anchored position of the stage vertex.
    pub vertex: usize,
    pub class: PhiValue,
    pub candidates_before: usize,
    pub class_size: usize,
    pub edges: usize,
    pub candidates_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractReport {
    pub m1: usize,
    pub m2: usize,
    pub outcome: Outcome,
    pub stages: Vec<StageRecord>,
    /// Final size of every class that received a vertex.
    pub classes: BTreeMap<PhiValue, usize>,
    pub zero_edge_stages: usize,
}

impl ExtractReport {
    pub fn total_edges(&self) -> usize {
        self.stages.iter().map(|s| s.edges).sum()
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.outcome {
            Outcome::Found(c) => Some(c),
            Outcome::Exhausted => None,
        }
    }

    /// Human-readable run summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("m1 {}\nm2 {}\n", self.m1, self.m2));
        out.push_str(&format!("stages {}\n", self.stages.len()));
        out.push_str(&format!("edges {}\n", self.total_edges()));
        out.push_str(&format!("zero-edge stages {}\n", self.zero_edge_stages));
        for (c, size) in &self.classes {
            out.push_str(&format!("class {} {} {size}\n", c.a, c.b));
        }
        match &self.outcome {
            Outcome::Found(c) => {
                out.push_str(&format!("outcome {} {}\n", c.kind, c.vertices.len()))
            }
            Outcome::Exhausted => out.push_str("outcome exhausted\n"),
        }
        out
    }
}

struct Class {
    positions: Vec<usize>,
    game: GameState,
}

/// Runs the stage construction on `ad` until a twisted pattern of `m2` or a
/// convex pattern of `m1` vertices is certified, or the candidates run out.
pub fn extract_pattern(ad: &AnchoredDrawing<'_>, m1: usize, m2: usize) -> Result<ExtractReport> {
    extract_pattern_with(ad, m1, m2, &ExtractOptions::default())
}

pub fn extract_pattern_with(
    ad: &AnchoredDrawing<'_>,
    m1: usize,
    m2: usize,
    opts: &ExtractOptions,
) -> Result<ExtractReport> {
    if m1 < 2 || m2 < 2 {
        return Err(Error::Validation(format!(
            "pattern sizes must be at least 2, got m1={m1}, m2={m2}"
        )));
    }
    let mut phi = PhiOracle::new(ad);
    let mut s: Vec<usize> = (1..ad.len()).collect();
    let mut classes: BTreeMap<PhiValue, Class> = BTreeMap::new();
    let mut report = ExtractReport {
        m1,
        m2,
        outcome: Outcome::Exhausted,
        stages: Vec::new(),
        classes: BTreeMap::new(),
        zero_edge_stages: 0,
    };
    let class_count = ((m2 - 2) * (m2 - 2)) as u128;

    while let Some(&w) = s.first() {
        let rest = &s[1..];
        let stage = report.stages.len() + 1;

        let mut by_phi: BTreeMap<PhiValue, Vec<usize>> = BTreeMap::new();
        for &u in rest {
            let v = phi.phi(w, u)?;
            for (len, hundred) in [(v.a, true), (v.b, false)] {
                if len >= m2 {
                    let path = phi.witness(w, u, hundred)?;
                    let cert = twisted_certificate(ad, &path[path.len() - m2..])?;
                    report.outcome = Outcome::Found(cert);
                    report.classes = classes
                        .iter()
                        .map(|(k, c)| (*k, c.positions.len()))
                        .collect();
                    return Ok(report);
                }
            }
            by_phi.entry(v).or_default().push(u);
        }

        // largest class, smallest (a, b) on ties
        let chosen = by_phi.iter().fold(
            None::<(&PhiValue, &Vec<usize>)>,
            |best, (k, v)| match best {
                Some((_, bv)) if bv.len() >= v.len() => best,
                _ => Some((k, v)),
            },
        );
        let (key, s0) = match chosen {
            Some((k, v)) => (*k, v.clone()),
            None => {
                // last candidate: every class is consistent with it
                let k = classes
                    .iter()
                    .fold(None::<(&PhiValue, usize)>, |best, (k, c)| match best {
                        Some((_, b)) if b >= c.positions.len() => best,
                        _ => Some((k, c.positions.len())),
                    })
                    .map(|(k, _)| *k)
                    .unwrap_or(PhiValue { a: 2, b: 2 });
                (k, Vec::new())
            }
        };
        if (s0.len() as u128) * class_count < rest.len() as u128 {
            return Err(Error::InternalInvariantBroken(format!(
                "stage {stage}: largest class has {} of {} candidates",
                s0.len(),
                rest.len()
            )));
        }

        let class = classes.entry(key).or_insert_with(|| Class {
            positions: Vec::new(),
            game: GameState::new(),
        });
        let mut painter = HalvingPainter::new(ad);
        for &p in &class.positions {
            painter.push_label(p);
        }
        painter.push_label(w);
        painter.set_candidates(s0);
        class.positions.push(w);
        let gw = class
            .game
            .add_vertex()
            .map_err(|e| Error::InternalInvariantBroken(e.to_string()))?;
        let mut builder = NaiveBuilder;
        while let Some(u) = builder.next_edge(&class.game) {
            let color = painter.color(&class.game, u, gw)?;
            class
                .game
                .add_edge(u, color)
                .map_err(|e| Error::InternalInvariantBroken(e.to_string()))?;
        }
        let edges = class.game.stage_edges()[gw];
        let next = painter.take_candidates();

        if edges == 0 {
            report.zero_edge_stages += 1;
            if report.zero_edge_stages > ((m2 - 2) * (m2 - 2)).max(1) {
                return Err(Error::InternalInvariantBroken(format!(
                    "{} stages without edges for {} classes",
                    report.zero_edge_stages,
                    (m2 - 2) * (m2 - 2)
                )));
            }
        }
        check_stage_bound(s.len(), next.len(), m2, edges, stage)?;

        report.stages.push(StageRecord {
            stage,
            vertex: w,
            class: key,
            candidates_before: s.len(),
            class_size: class.positions.len(),
            edges,
            candidates_after: next.len(),
        });
        s = next;

        let class = &classes[&key];
        for color in [Color::Red, Color::Blue] {
            if class.game.longest(color) >= m1 {
                let end = (0..class.positions.len())
                    .find(|&v| class.game.longest_at(v, color) >= m1)
                    .expect("a path of the target length ends somewhere");
                let path = class.game.path_to(end, color);
                let w_star: Vec<usize> = path[path.len() - m1..]
                    .iter()
                    .map(|&g| class.positions[g])
                    .collect();
                let cert = convex_certificate(ad, &w_star)?;
                report.outcome = Outcome::Found(cert);
                report.classes = classes
                    .iter()
                    .map(|(k, c)| (*k, c.positions.len()))
                    .collect();
                return Ok(report);
            }
        }

        if opts.audit {
            audit(ad, &mut phi, &classes, &s)?;
        }
    }
    report.classes = classes
        .iter()
        .map(|(k, c)| (*k, c.positions.len()))
        .collect();
    Ok(report)
}

/// `|S_{t+1}| * m2^2 * 2^e >= |S_t| - 1`, in exact integers.
fn check_stage_bound(before: usize, after: usize, m2: usize, e: usize, stage: usize) -> Result<()> {
    let need = before.saturating_sub(1) as u128;
    let ok = if after == 0 {
        need == 0
    } else if e >= 100 {
        true
    } else {
        let lhs = (after as u128)
            .saturating_mul((m2 * m2) as u128)
            .saturating_mul(1u128 << e);
        lhs >= need
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InternalInvariantBroken(format!(
            "stage {stage}: candidates fell from {before} to {after} with {e} edges"
        )))
    }
}

fn twisted_certificate(ad: &AnchoredDrawing<'_>, positions: &[usize]) -> Result<Certificate> {
    let vertices = ad.vertices(positions);
    let cert = Certificate::new(CertificateKind::Twisted, vertices.clone());
    if verify_certificate(ad.base(), &cert)?.is_pass() {
        return Ok(cert);
    }
    let reversed = Certificate::new(
        CertificateKind::Twisted,
        vertices.into_iter().rev().collect(),
    );
    if verify_certificate(ad.base(), &reversed)?.is_pass() {
        return Ok(reversed);
    }
    Err(Error::InternalInvariantBroken(format!(
        "monochromatic 3-path on positions {positions:?} is not twisted in either order"
    )))
}

fn convex_certificate(ad: &AnchoredDrawing<'_>, positions: &[usize]) -> Result<Certificate> {
    let mut color = None;
    for (a, &i) in positions.iter().enumerate() {
        for (b, &j) in positions.iter().enumerate().skip(a + 1) {
            for &k in &positions[b + 1..] {
                let bits = chi_bits(ad, i, j, k);
                if (bits != 0b000 && bits != 0b010) || color.is_some_and(|c| c != bits) {
                    return Err(Error::InternalInvariantBroken(format!(
                        "triple ({i}, {j}, {k}) of the convex witness has colour {bits:03b}"
                    )));
                }
                color = Some(bits);
            }
        }
    }
    let cert = Certificate::new(CertificateKind::Convex, ad.vertices(positions));
    match verify_certificate(ad.base(), &cert)? {
        crate::certificate::Verdict::Pass => Ok(cert),
        crate::certificate::Verdict::Fail(v) => Err(Error::InternalInvariantBroken(format!(
            "convex witness fails verification: {v}"
        ))),
    }
}

fn audit(
    ad: &AnchoredDrawing<'_>,
    phi: &mut PhiOracle<'_, '_>,
    classes: &BTreeMap<PhiValue, Class>,
    s: &[usize],
) -> Result<()> {
    for (key, class) in classes {
        let pos = &class.positions;
        if let (Some(&last), Some(&first)) = (pos.last(), s.first()) {
            if last >= first {
                return Err(Error::InternalInvariantBroken(
                    "a class does not precede the candidates".into(),
                ));
            }
        }
        for (x, &u1) in pos.iter().enumerate() {
            for &u2 in pos[x + 1..].iter().chain(s) {
                if phi.phi(u1, u2)? != *key {
                    return Err(Error::InternalInvariantBroken(format!(
                        "pair ({u1}, {u2}) left class {key}"
                    )));
                }
            }
        }
        for mv in class.game.moves() {
            let (p1, p2) = (pos[mv.u], pos[mv.w]);
            let want = if mv.color == Color::Red { 0b000 } else { 0b010 };
            for &u3 in pos[mv.w + 1..].iter().chain(s) {
                if chi_bits(ad, p1, p2, u3) != want {
                    return Err(Error::InternalInvariantBroken(format!(
                        "edge ({p1}, {p2}) coloured {want:03b} but triple with {u3} disagrees"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Upper bound on the cost of the online Ramsey game for paths of `m`
/// vertices.
pub trait RamseyBound {
    fn r(&self, m: usize) -> f64;

    /// A closed form for the whole threshold exponent, if the bound comes
    /// with one.
    fn closed_form(&self, _m1: usize, _m2: usize) -> Option<f64> {
        None
    }
}

/// `r(m) <= 2 m^2 log2 m`, with the closed form
/// `9 (m1 m2)^2 log2 m1 log2 m2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SquareLogBound;

impl RamseyBound for SquareLogBound {
    fn r(&self, m: usize) -> f64 {
        let m = m as f64;
        2.0 * m * m * m.log2()
    }

    fn closed_form(&self, m1: usize, m2: usize) -> Option<f64> {
        let p = (m1 * m2) as f64;
        Some(9.0 * p * p * (m1 as f64).log2() * (m2 as f64).log2())
    }
}

/// What the naive builder guarantees: all pairs among `(m-1)^2 + 1`
/// vertices.
#[derive(Clone, Copy, Debug, Default)]
pub struct NaiveBound;

impl RamseyBound for NaiveBound {
    fn r(&self, m: usize) -> f64 {
        crate::ramsey::naive_bound(m) as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Threshold {
    /// Total edge bound `m2^2 r(m1)`.
    pub edges: f64,
    /// Stage bound `m2^2 + edges`.
    pub stages: f64,
    /// Exponent from the candidate-set recurrence:
    /// `2 stages log2 m2 + edges + stages`.
    pub chain: f64,
    pub closed_form: Option<f64>,
}

impl Threshold {
    /// `n > 2^exponent` suffices. The closed form when the bound has one,
    /// the recurrence exponent otherwise.
    pub fn exponent(&self) -> f64 {
        self.closed_form.unwrap_or(self.chain)
    }
}

pub fn required_n(m1: usize, m2: usize, bound: &dyn RamseyBound) -> Threshold {
    assert!(m1 >= 2 && m2 >= 2, "pattern sizes must be at least 2");
    let sq = (m2 * m2) as f64;
    let edges = sq * bound.r(m1);
    let stages = sq + edges;
    let chain = 2.0 * stages * (m2 as f64).log2() + edges + stages;
    Threshold {
        edges,
        stages,
        chain,
        closed_form: bound.closed_form(m1, m2),
    }
}

/// Largest `m` with `9 m^4 (log2 m)^2 < log2 n`, at least 1.
pub fn guaranteed_m(log2_n: f64) -> usize {
    let f = |m: usize| {
        let x = m as f64;
        9.0 * x.powi(4) * x.log2().powi(2)
    };
    let mut m = 1;
    while f(m + 1) < log2_n {
        m += 1;
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEmbedding {
    /// `assignment[t]` is the pattern vertex of tree vertex `t`.
    pub assignment: Vec<usize>,
    /// Tree edges mapped into the pattern.
    pub edges: Vec<Edge>,
}

fn tree_edges(tree: &[Vec<usize>]) -> Result<Vec<(usize, usize)>> {
    let k = tree.len();
    if k == 0 {
        return Err(Error::NotATree("empty tree".into()));
    }
    let mut edges = Vec::new();
    for (v, adj) in tree.iter().enumerate() {
        for &u in adj {
            if u >= k || u == v {
                return Err(Error::NotATree(format!("bad neighbour {u} of {v}")));
            }
            if !tree[u].contains(&v) {
                return Err(Error::NotATree(format!("edge {v}-{u} listed one way only")));
            }
            if v < u {
                edges.push((v, u));
            }
        }
    }
    edges.sort_unstable();
    if edges.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NotATree("repeated edge".into()));
    }
    if edges.len() != k - 1 {
        return Err(Error::NotATree(format!(
            "{} edges on {k} vertices",
            edges.len()
        )));
    }
    Ok(edges)
}

/// Labels a tree so that its edges are pairwise non-crossing in the pattern
/// of `m` vertices: depth-first preorder for convex (edge intervals nest or
/// are disjoint), breadth-first order for twisted (intervals never nest).
pub fn embed_tree(kind: PatternKind, m: usize, tree: &[Vec<usize>]) -> Result<TreeEmbedding> {
    let edges = tree_edges(tree)?;
    let k = tree.len();
    if k > m {
        return Err(Error::InvalidSelection(format!(
            "a tree on {k} vertices does not fit into {m}"
        )));
    }
    let mut order = Vec::with_capacity(k);
    let mut seen = vec![false; k];
    match kind {
        PatternKind::Convex => {
            let mut stack = vec![0];
            while let Some(v) = stack.pop() {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                order.push(v);
                for &u in tree[v].iter().rev() {
                    if !seen[u] {
                        stack.push(u);
                    }
                }
            }
        }
        PatternKind::Twisted => {
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &u in &tree[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    if order.len() != k {
        return Err(Error::NotATree("not connected".into()));
    }
    let mut assignment = vec![0; k];
    for (p, &v) in order.iter().enumerate() {
        assignment[v] = p;
    }
    let edges = edges
        .into_iter()
        .map(|(a, b)| Edge::new(assignment[a], assignment[b]))
        .collect();
    Ok(TreeEmbedding { assignment, edges })
}

/// Embeds into the generated pattern and verifies the image is plane.
pub fn embed_and_verify(
    kind: PatternKind,
    m: usize,
    tree: &[Vec<usize>],
) -> Result<(TreeEmbedding, bool)> {
    let emb = embed_tree(kind, m, tree)?;
    let d = match kind {
        PatternKind::Convex => crate::generators::gen_convex(m)?,
        PatternKind::Twisted => crate::generators::gen_twisted(m)?,
    };
    let ok = verify_plane_edges(&d, &emb.edges)?.is_pass();
    Ok((emb, ok))
}
