//! The vertex online Ramsey game for monotone paths.
//!
//! Each stage adds a vertex; builder then creates edges from the new vertex
//! to earlier vertices and painter colours every edge as soon as it exists.
//! The game ends when some colour contains a monotone path of `m` vertices.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::anchored::AnchoredDrawing;
use crate::chromatics::chi_bits;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    fn idx(self) -> usize {
        match self {
            Color::Red => 0,
            Color::Blue => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }

    pub fn parse(s: &str) -> Option<Color> {
        match s {
            "red" => Some(Color::Red),
            "blue" => Some(Color::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One coloured edge `{u, w}`, `w` being the vertex of its stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub stage: usize,
    pub u: usize,
    pub w: usize,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameError {
    /// Builder broke a rule; the message says which.
    RuleViolation(String),
    /// The edge budget ran out before a path of the target length appeared.
    BudgetExhausted(Box<GameTranscript>),
    /// A painter could not colour an edge.
    Painter(Error),
}

impl fmt::Display for GameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameError::RuleViolation(m) => write!(f, "rule violation: {m}"),
            GameError::BudgetExhausted(t) => {
                write!(f, "budget exhausted after {} edges", t.moves.len())
            }
            GameError::Painter(e) => write!(f, "painter failed: {e}"),
        }
    }
}

impl std::error::Error for GameError {}

/// Vertices, coloured edges and, per vertex and colour, the longest
/// monochromatic monotone path ending there.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GameState {
    stage_edges: Vec<usize>,
    moves: Vec<Move>,
    adjacent: Vec<Vec<bool>>,
    best: Vec<[usize; 2]>,
    pred: Vec<[usize; 2]>,
}

impl GameState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of vertices, which is also the current stage.
    pub fn stage(&self) -> usize {
        self.stage_edges.len()
    }

    pub fn vertices(&self) -> usize {
        self.stage_edges.len()
    }

    pub fn newest(&self) -> Option<usize> {
        self.stage_edges.len().checked_sub(1)
    }

    pub fn edge_count(&self) -> usize {
        self.moves.len()
    }

    /// Edges built in each stage, `e_1, e_2, ...`.
    pub fn stage_edges(&self) -> &[usize] {
        &self.stage_edges
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        let (u, w) = if u < w { (u, w) } else { (w, u) };
        w < self.adjacent.len() && self.adjacent[w][u]
    }

    /// Starts a stage with a fresh vertex. Fails if the previous stage (not
    /// the first) built no edge.
    pub fn add_vertex(&mut self) -> std::result::Result<usize, GameError> {
        self.check_stage_closed()?;
        let w = self.stage_edges.len();
        self.stage_edges.push(0);
        self.adjacent.push(vec![false; w]);
        self.best.push([1, 1]);
        self.pred.push([usize::MAX; 2]);
        Ok(w)
    }

    /// The rule that every stage after the first builds an edge.
    pub fn check_stage_closed(&self) -> std::result::Result<(), GameError> {
        match self.stage_edges.last() {
            Some(0) if self.stage_edges.len() >= 2 => Err(GameError::RuleViolation(format!(
                "stage {} ended without an edge",
                self.stage_edges.len()
            ))),
            _ => Ok(()),
        }
    }

    /// Records the coloured edge `{u, newest}`.
    pub fn add_edge(&mut self, u: usize, color: Color) -> std::result::Result<(), GameError> {
        let w = self
            .newest()
            .ok_or_else(|| GameError::RuleViolation("no vertex yet".into()))?;
        if u >= w {
            return Err(GameError::RuleViolation(format!(
                "edge {{{u}, {w}}} does not join the newest vertex to an earlier one"
            )));
        }
        if self.adjacent[w][u] {
            return Err(GameError::RuleViolation(format!(
                "edge {{{u}, {w}}} built twice"
            )));
        }
        self.adjacent[w][u] = true;
        *self.stage_edges.last_mut().expect("vertex exists") += 1;
        self.moves.push(Move {
            stage: w + 1,
            u,
            w,
            color,
        });
        let c = color.idx();
        if self.best[u][c] + 1 > self.best[w][c] {
            self.best[w][c] = self.best[u][c] + 1;
            self.pred[w][c] = u;
        }
        Ok(())
    }

    /// Longest monochromatic monotone path in `color` (vertices).
    pub fn longest(&self, color: Color) -> usize {
        self.best.iter().map(|b| b[color.idx()]).max().unwrap_or(0)
    }

    /// Longest path ending at `v` in `color`.
    pub fn longest_at(&self, v: usize, color: Color) -> usize {
        self.best[v][color.idx()]
    }

    /// Longest monochromatic path over both colours, preferring red on ties.
    pub fn best_path(&self) -> Option<(Color, Vec<usize>)> {
        let mut best: Option<(usize, Color, usize)> = None;
        for color in [Color::Red, Color::Blue] {
            for (v, b) in self.best.iter().enumerate() {
                let len = b[color.idx()];
                if best.is_none_or(|(l, _, _)| len > l) {
                    best = Some((len, color, v));
                }
            }
        }
        best.map(|(_, color, v)| (color, self.path_to(v, color)))
    }

    /// A longest monochromatic monotone path ending at `v`.
    pub fn path_to(&self, v: usize, color: Color) -> Vec<usize> {
        let mut path = vec![v];
        let mut x = v;
        while self.pred[x][color.idx()] != usize::MAX {
            x = self.pred[x][color.idx()];
            path.push(x);
        }
        path.reverse();
        path
    }

    fn color_of(&self, u: usize, w: usize) -> Option<Color> {
        self.moves
            .iter()
            .find(|m| (m.u, m.w) == (u.min(w), u.max(w)))
            .map(|m| m.color)
    }
}

pub trait Builder {
    /// The earlier vertex to join to the newest one next, or `None` to end
    /// the stage.
    fn next_edge(&mut self, state: &GameState) -> Option<usize>;
}

pub trait Painter {
    /// Colour of the freshly built edge `{u, w}` (`w` newest).
    fn color(&mut self, state: &GameState, u: usize, w: usize) -> Result<Color>;
}

/// Joins every new vertex to all earlier vertices in increasing order.
#[derive(Clone, Debug, Default)]
pub struct NaiveBuilder;

impl Builder for NaiveBuilder {
    fn next_edge(&mut self, state: &GameState) -> Option<usize> {
        let w = state.newest()?;
        (0..w).find(|&u| !state.has_edge(u, w))
    }
}

/// Colours each edge so that the longest monochromatic path ending at it
/// is as short as possible; red on ties.
#[derive(Clone, Debug, Default)]
pub struct AdversarialPainter;

impl Painter for AdversarialPainter {
    fn color(&mut self, state: &GameState, u: usize, w: usize) -> Result<Color> {
        let after = |c: Color| state.longest_at(w, c).max(state.longest_at(u, c) + 1);
        Ok(if after(Color::Blue) < after(Color::Red) {
            Color::Blue
        } else {
            Color::Red
        })
    }
}

/// Fair coin per edge from a seeded stream.
#[derive(Clone, Debug)]
pub struct RandomPainter {
    rng: ChaCha8Rng,
}

impl RandomPainter {
    pub fn new(seed: u64) -> Self {
        RandomPainter {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Painter for RandomPainter {
    fn color(&mut self, _: &GameState, _: usize, _: usize) -> Result<Color> {
        Ok(if self.rng.gen::<bool>() {
            Color::Red
        } else {
            Color::Blue
        })
    }
}

/// Painter used inside pattern extraction.
///
/// Game vertices are labelled with anchored positions. For the edge
/// `{u, w}` the live candidate set is split by the colour of the triples
/// `(u, w, v)`, which must be 000 or 010; the larger part survives (000 on
/// ties) and its colour becomes the colour of the edge: 000 is red, 010 is
/// blue.
pub struct HalvingPainter<'a, 'd> {
    ad: &'a AnchoredDrawing<'d>,
    labels: Vec<usize>,
    candidates: Vec<usize>,
}

impl<'a, 'd> HalvingPainter<'a, 'd> {
    pub fn new(ad: &'a AnchoredDrawing<'d>) -> Self {
        HalvingPainter {
            ad,
            labels: Vec::new(),
            candidates: Vec::new(),
        }
    }

    /// Labels the next game vertex with an anchored position.
    pub fn push_label(&mut self, position: usize) {
        self.labels.push(position);
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn set_candidates(&mut self, s: Vec<usize>) {
        self.candidates = s;
    }

    pub fn candidates(&self) -> &[usize] {
        &self.candidates
    }

    pub fn take_candidates(&mut self) -> Vec<usize> {
        std::mem::take(&mut self.candidates)
    }
}

impl Painter for HalvingPainter<'_, '_> {
    fn color(&mut self, _: &GameState, u: usize, w: usize) -> Result<Color> {
        let (pu, pw) = (self.labels[u], self.labels[w]);
        let mut zero = Vec::new();
        let mut one = Vec::new();
        for &v in &self.candidates {
            match chi_bits(self.ad, pu, pw, v) {
                0b000 => zero.push(v),
                0b010 => one.push(v),
                bits => {
                    return Err(Error::InternalInvariantBroken(format!(
                        "triple ({pu}, {pw}, {v}) has colour {bits:03b}, expected 000 or 010"
                    )))
                }
            }
        }
        if zero.len() >= one.len() {
            self.candidates = zero;
            Ok(Color::Red)
        } else {
            self.candidates = one;
            Ok(Color::Blue)
        }
    }
}

/// Log of a game plus the terminal witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTranscript {
    pub target: usize,
    pub stage_edges: Vec<usize>,
    pub moves: Vec<Move>,
    pub witness: Option<(Color, Vec<usize>)>,
}

impl GameTranscript {
    fn from_state(target: usize, state: &GameState, finished: bool) -> Self {
        let witness = if finished {
            state.best_path().map(|(c, p)| {
                let start = p.len().saturating_sub(target);
                (c, p[start..].to_vec())
            })
        } else {
            None
        };
        GameTranscript {
            target,
            stage_edges: state.stage_edges.clone(),
            moves: state.moves.clone(),
            witness,
        }
    }

    pub fn edges(&self) -> usize {
        self.moves.len()
    }

    pub fn stages(&self) -> usize {
        self.stage_edges.len()
    }

    /// Rebuilds the final state from the log.
    pub fn replay(&self) -> std::result::Result<GameState, GameError> {
        let mut state = GameState::new();
        let mut next = self.moves.iter().peekable();
        for (stage, &count) in self.stage_edges.iter().enumerate() {
            let w = state.add_vertex()?;
            for _ in 0..count {
                let m = next.next().ok_or_else(|| {
                    GameError::RuleViolation("log is shorter than its stage counts".into())
                })?;
                if m.w != w || m.stage != stage + 1 {
                    return Err(GameError::RuleViolation(format!(
                        "move {m:?} logged in the wrong stage"
                    )));
                }
                state.add_edge(m.u, m.color)?;
            }
        }
        if next.peek().is_some() {
            return Err(GameError::RuleViolation(
                "log is longer than its stage counts".into(),
            ));
        }
        Ok(state)
    }

    /// Re-checks the witness against the logged colours.
    pub fn witness_is_valid(&self) -> bool {
        let Some((color, path)) = &self.witness else {
            return false;
        };
        let Ok(state) = self.replay() else {
            return false;
        };
        path.len() >= self.target
            && path
                .windows(2)
                .all(|p| p[0] < p[1] && state.color_of(p[0], p[1]) == Some(*color))
    }

    /// One line per event plus a summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut moves = self.moves.iter();
        for (stage, &count) in self.stage_edges.iter().enumerate() {
            out.push_str(&format!("stage {}\n", stage + 1));
            for m in moves.by_ref().take(count) {
                out.push_str(&format!("edge {} {} {}\n", m.u, m.w, m.color));
            }
        }
        out.push_str(&format!("# target {}\n", self.target));
        out.push_str(&format!("# edges {}\n", self.moves.len()));
        out.push_str(&format!("# stages {}\n", self.stage_edges.len()));
        match &self.witness {
            Some((c, p)) => {
                let vs: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("# witness {c} {}\n", vs.join(" ")));
            }
            None => out.push_str("# witness none\n"),
        }
        out
    }
}

/// Plays until some colour has a monotone path of `m` vertices or
/// `budget` edges have been built.
pub fn run_game(
    m: usize,
    builder: &mut dyn Builder,
    painter: &mut dyn Painter,
    budget: usize,
) -> std::result::Result<GameTranscript, GameError> {
    if m < 2 || budget < 1 {
        return Err(GameError::RuleViolation(format!(
            "need m >= 2 and budget >= 1, got m={m}, budget={budget}"
        )));
    }
    let mut state = GameState::new();
    state.add_vertex()?;
    loop {
        let w = state.add_vertex()?;
        while let Some(u) = builder.next_edge(&state) {
            if state.edge_count() >= budget {
                return Err(GameError::BudgetExhausted(Box::new(
                    GameTranscript::from_state(m, &state, false),
                )));
            }
            if u >= w || state.has_edge(u, w) {
                return Err(GameError::RuleViolation(format!(
                    "builder proposed invalid edge {{{u}, {w}}}"
                )));
            }
            let color = painter.color(&state, u, w).map_err(GameError::Painter)?;
            state.add_edge(u, color)?;
            if state.longest(color) >= m {
                return Ok(GameTranscript::from_state(m, &state, true));
            }
        }
        state.check_stage_closed()?;
    }
}

/// The asymptotic reference `m^2 log2 m` for the optimal builder's cost.
pub fn reference_cost(m: usize) -> f64 {
    let m = m as f64;
    m * m * m.log2()
}

/// Edge count after which the naive builder always wins: all pairs among
/// `(m-1)^2 + 1` vertices.
pub fn naive_bound(m: usize) -> usize {
    let v = (m - 1) * (m - 1) + 1;
    v * (v - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_two_ends_after_one_edge() {
        let t = run_game(2, &mut NaiveBuilder, &mut AdversarialPainter, 10).unwrap();
        assert_eq!((t.edges(), t.stages()), (1, 2));
        assert_eq!(t.witness, Some((Color::Red, vec![0, 1])));
        assert!(t.witness_is_valid());
    }

    #[test]
    fn single_edge_is_red() {
        let mut s = GameState::new();
        s.add_vertex().unwrap();
        s.add_vertex().unwrap();
        assert_eq!(AdversarialPainter.color(&s, 0, 1).unwrap(), Color::Red);
    }

    #[test]
    fn naive_builder_proposes_all_prior_vertices() {
        let mut s = GameState::new();
        for _ in 0..4 {
            s.add_vertex().unwrap();
            while let Some(u) = NaiveBuilder.next_edge(&s) {
                s.add_edge(u, Color::Blue).unwrap();
            }
        }
        assert_eq!(s.stage_edges(), &[0, 1, 2, 3]);
        assert_eq!(s.longest(Color::Blue), 4);
        assert_eq!(s.path_to(3, Color::Blue), vec![0, 1, 2, 3]);
    }

    #[test]
    fn rules_are_enforced() {
        let mut s = GameState::new();
        s.add_vertex().unwrap();
        s.add_vertex().unwrap();
        assert!(matches!(s.add_vertex(), Err(GameError::RuleViolation(_))));
        let mut s = GameState::new();
        s.add_vertex().unwrap();
        s.add_vertex().unwrap();
        assert!(matches!(
            s.add_edge(1, Color::Red),
            Err(GameError::RuleViolation(_))
        ));
        s.add_edge(0, Color::Red).unwrap();
        assert!(matches!(
            s.add_edge(0, Color::Red),
            Err(GameError::RuleViolation(_))
        ));

        struct Lazy;
        impl Builder for Lazy {
            fn next_edge(&mut self, _: &GameState) -> Option<usize> {
                None
            }
        }
        assert!(matches!(
            run_game(3, &mut Lazy, &mut AdversarialPainter, 10),
            Err(GameError::RuleViolation(_))
        ));
    }

    #[test]
    fn budget_exhaustion_keeps_the_log() {
        match run_game(4, &mut NaiveBuilder, &mut AdversarialPainter, 3) {
            Err(GameError::BudgetExhausted(t)) => {
                assert_eq!(t.edges(), 3);
                assert!(t.witness.is_none());
                assert!(t.replay().is_ok());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn naive_bound_holds_for_every_tested_painter() {
        for m in 2..=8 {
            let bound = naive_bound(m);
            let t = run_game(m, &mut NaiveBuilder, &mut AdversarialPainter, bound).unwrap();
            assert!(t.edges() <= bound && t.witness_is_valid(), "m={m}");
            assert!(t.stages() <= (m - 1) * (m - 1) + 1);
            for seed in 0..100 {
                let t =
                    run_game(m, &mut NaiveBuilder, &mut RandomPainter::new(seed), bound).unwrap();
                assert!(
                    t.edges() <= bound && t.witness_is_valid(),
                    "m={m} seed={seed}"
                );
            }
        }
    }

    #[test]
    fn replay_reproduces_state() {
        let t = run_game(5, &mut NaiveBuilder, &mut RandomPainter::new(3), 1000).unwrap();
        let s = t.replay().unwrap();
        assert_eq!(s.moves(), &t.moves[..]);
        assert_eq!(s.stage_edges(), &t.stage_edges[..]);
        let text = t.to_text();
        assert!(text.starts_with("stage 1\nstage 2\nedge 0 1 "));
        assert!(text.contains(&format!("# edges {}\n", t.edges())));
    }

    // Optimal play against the naive builder for m = 3: the painter wants
    // to maximise the number of vertices before a monochromatic path of 3
    // appears.
    fn survive(state: &GameState, m: usize) -> usize {
        let w = state.newest().unwrap();
        let next = (0..w).find(|&u| !state.has_edge(u, w));
        match next {
            None => {
                let mut s = state.clone();
                s.add_vertex().unwrap();
                survive(&s, m)
            }
            Some(u) => [Color::Red, Color::Blue]
                .into_iter()
                .map(|c| {
                    let mut s = state.clone();
                    s.add_edge(u, c).unwrap();
                    if s.longest(c) >= m {
                        s.vertices()
                    } else {
                        survive(&s, m)
                    }
                })
                .max()
                .unwrap(),
        }
    }

    #[test]
    fn game_tree_for_three() {
        let mut s = GameState::new();
        s.add_vertex().unwrap();
        s.add_vertex().unwrap();
        assert_eq!(survive(&s, 3), 5);
        let t = run_game(3, &mut NaiveBuilder, &mut AdversarialPainter, 100).unwrap();
        assert!(t.stages() >= 4);
    }
}
