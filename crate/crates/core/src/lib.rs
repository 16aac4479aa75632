//! Unavoidable patterns in complete simple topological graphs.
//!
//! The crate models drawings at the level of weak isomorphism (a crossing
//! oracle plus optional rotation system), generates the standard families,
//! and extracts convex or twisted sub-patterns and plane paths together with
//! certificates that are checked against the drawing. Small instances can be
//! cross-checked with the exhaustive oracles in [`oracles`].

pub mod anchored;
pub mod certificate;
pub mod chromatics;
pub mod codec;
pub mod curves;
pub mod drawing;
pub mod error;
pub mod extraction;
pub mod generators;
pub mod geometry;
pub mod oracles;
pub mod plane_path;
pub mod ramsey;

/// Exact rational used for spiral radii.
pub type Rational = num_rational::Rational64;
/// Integer point of a straight-line drawing.
pub type Point = geometry::Point<i128>;
/// Spiral radii of a twisted drawing.
pub type SpiralParams = generators::SpiralTwistedParams<Rational>;

pub use anchored::AnchoredDrawing;
pub use certificate::{
    verify_certificate, verify_plane_edges, Certificate, CertificateKind, Verdict, Violation,
};
pub use chromatics::{chi, phi_table, validate_observation, PhiOracle, PhiValue, TripleColor};
pub use drawing::{
    edge_count, edge_from_index, edge_index, Anchor, CrossingTable, Drawing, Edge, Model,
};
pub use error::{Error, Result};
pub use extraction::{
    embed_tree, extract_pattern, guaranteed_m, required_n, ExtractReport, Outcome, PatternKind,
    SquareLogBound,
};
pub use generators::{
    gen_convex, gen_halfcircle, gen_halfcircle_seeded, gen_horton, gen_random_points,
    gen_straightline, gen_twisted, gen_twisted_with, HalfCircleSigns, Side,
};
pub use oracles::{
    longest_plane_path_exact, max_pattern_exact, numeric_rotation_oracle, OracleBudget,
    OracleResult,
};
pub use plane_path::{extract_plane_path, find_plane_k2m2, lis_lds, theta, PlanePathReport};
pub use ramsey::{
    run_game, AdversarialPainter, Color, GameState, GameTranscript, HalvingPainter, NaiveBuilder,
};
