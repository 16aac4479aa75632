//! Command-line front end for the `cstg` library.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failed, 3 invalid
//! drawing, 4 budget exhausted.

pub mod svg;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use cstg::codec::{decode_certificate, decode_drawing, encode_certificate, encode_drawing};
use cstg::extraction::ExtractOptions;
use cstg::oracles::same_cyclic_order;
use cstg::plane_path::PlanePathOptions;
use cstg::{
    AnchoredDrawing, Drawing, Edge, Error, Model, OracleBudget, Outcome, PatternKind, Verdict,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    InvalidDrawing(String),
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::InvalidDrawing(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m)
            | CliError::Verification(m)
            | CliError::InvalidDrawing(m)
            | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. }
            | Error::Validation(_)
            | Error::ObservationViolated(..)
            | Error::DegenerateInput(_)
            | Error::InvalidSigns { .. }
            | Error::RotationMissing
            | Error::AnchorUnavailable(_) => CliError::InvalidDrawing(msg),
            Error::InvalidCertificate(_) => CliError::Verification(msg),
            _ => CliError::Usage(msg),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "cstg",
    version,
    about = "Convex and twisted patterns and plane paths in simple drawings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the document of a generated drawing.
    Generate(FamilyArgs),
    /// Extract a pattern or a plane path from a drawing.
    #[command(subcommand)]
    Extract(ExtractCommand),
    /// Check a certificate against a drawing, or the drawing itself.
    Verify(VerifyArgs),
    /// Exhaustive ground truth on small drawings.
    Oracle(OracleArgs),
    /// Run seeded trials in parallel and write a CSV summary.
    Bench(BenchArgs),
    /// Draw a geometric drawing as SVG.
    Render(RenderArgs),
    /// Write the triple or pair colouring as CSV.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Convex,
    Twisted,
    Halfcircle,
    Points,
    Horton,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ExtractCommand {
    /// Convex or twisted pattern.
    Pattern {
        input: PathBuf,
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
        /// Anchor vertex; the declared anchor when omitted.
        #[arg(long)]
        v0: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plane path.
    Planepath {
        input: PathBuf,
        #[arg(long)]
        m_override: Option<usize>,
        #[arg(long, default_value_t = 5.0)]
        budget_seconds: f64,
        #[arg(long)]
        v0: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    drawing: PathBuf,
    certificate: Option<PathBuf>,
    /// Check the drawing against its own geometry and anchor.
    #[arg(long = "self")]
    self_check: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Maxconvex,
    Maxtwisted,
    Planepath,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(value_enum)]
    kind: OracleKind,
    input: PathBuf,
    #[arg(long, default_value_t = 60.0)]
    budget_seconds: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// First seed; trial `t` uses `seed + t`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    trials: u64,
    #[arg(long, default_value_t = 4)]
    m1: usize,
    #[arg(long, default_value_t = 4)]
    m2: usize,
    #[arg(long)]
    m_override: Option<usize>,
    #[arg(long, default_value_t = 5.0)]
    budget_seconds: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Certificate whose edges are highlighted.
    #[arg(long)]
    overlay: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Chi,
    Phi,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(value_enum)]
    kind: TableKind,
    input: PathBuf,
    #[arg(long)]
    v0: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Runs `argv` (including the program name) and returns the exit code.
pub fn dispatch<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let text = e.render().to_string();
            let line = text.lines().next().unwrap_or("usage error");
            let _ = writeln!(stderr, "{line}");
            return 1;
        }
    };
    match run(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code()
        }
    }
}

fn run(cmd: Command, stdout: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Generate(a) => {
            let d = build_family(a.family, a.n, a.seed)?;
            emit(a.out.as_deref(), &encode_drawing(&d), stdout)
        }
        Command::Extract(ExtractCommand::Pattern {
            input,
            m1,
            m2,
            v0,
            out,
        }) => extract_pattern(&input, m1, m2, v0, out.as_deref(), stdout),
        Command::Extract(ExtractCommand::Planepath {
            input,
            m_override,
            budget_seconds,
            v0,
            out,
        }) => extract_path(
            &input,
            m_override,
            budget_seconds,
            v0,
            out.as_deref(),
            stdout,
        ),
        Command::Verify(a) => verify(&a, stdout),
        Command::Oracle(a) => oracle(&a, stdout),
        Command::Bench(a) => bench(&a, stdout),
        Command::Render(a) => {
            let d = load_drawing(&a.input)?;
            let overlay = match &a.overlay {
                Some(p) => Some(decode_certificate(&read(p)?)?),
                None => None,
            };
            if let Some(c) = &overlay {
                if let Some(&v) = c.vertices.iter().find(|&&v| v >= d.n()) {
                    return Err(CliError::Usage(format!("overlay vertex {v} out of range")));
                }
            }
            emit(
                a.out.as_deref(),
                &svg::render_svg(&d, overlay.as_ref())?,
                stdout,
            )
        }
        Command::Table(a) => {
            let d = load_drawing(&a.input)?;
            let ad = anchored(&d, a.v0)?;
            let text = match a.kind {
                TableKind::Chi => cstg::chromatics::chi_csv(&ad)?,
                TableKind::Phi => cstg::phi_table(&ad)?.to_csv(),
            };
            emit(a.out.as_deref(), &text, stdout)
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

fn load_drawing(path: &Path) -> CliResult<Drawing> {
    Ok(decode_drawing(&read(path)?)?)
}

fn anchored(d: &Drawing, v0: Option<usize>) -> CliResult<AnchoredDrawing<'_>> {
    Ok(match v0 {
        Some(v) => d.anchored_view(v)?,
        None => d.canonical_view()?,
    })
}

fn budget(seconds: f64) -> CliResult<OracleBudget> {
    OracleBudget::seconds(seconds).map_err(|e| CliError::Usage(e.to_string()))
}

fn build_family(family: Family, n: usize, seed: u64) -> CliResult<Drawing> {
    let d = match family {
        Family::Convex => cstg::gen_convex(n)?,
        Family::Twisted => cstg::gen_twisted(n)?,
        Family::Halfcircle => cstg::gen_halfcircle_seeded(n, seed)?,
        Family::Points => cstg::gen_straightline(cstg::gen_random_points(n, seed)?)?,
        Family::Horton => {
            if !n.is_power_of_two() || n < 2 {
                return Err(CliError::Usage(format!(
                    "horton sets need a power of two, got {n}"
                )));
            }
            cstg::gen_straightline(cstg::gen_horton(n.trailing_zeros())?)?
        }
    };
    Ok(d)
}

fn extract_pattern(
    input: &Path,
    m1: usize,
    m2: usize,
    v0: Option<usize>,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> CliResult {
    if m1 < 2 || m2 < 2 {
        return Err(CliError::Usage("--m1 and --m2 must be at least 2".into()));
    }
    let d = load_drawing(input)?;
    let ad = anchored(&d, v0)?;
    let report = cstg::extraction::extract_pattern_with(&ad, m1, m2, &ExtractOptions::default())?;
    match &report.outcome {
        Outcome::Found(c) => {
            check_pass(&d, c)?;
            let doc = encode_certificate(c);
            match out {
                Some(p) => {
                    emit(Some(p), &doc, stdout)?;
                    emit(None, &report.to_text(), stdout)
                }
                None => emit(None, &doc, stdout),
            }
        }
        Outcome::Exhausted => {
            emit(None, &report.to_text(), stdout)?;
            Err(CliError::Budget(format!(
                "candidates exhausted before a pattern of {m1} or {m2} vertices was certified"
            )))
        }
    }
}

fn check_pass(d: &Drawing, c: &cstg::Certificate) -> CliResult {
    match cstg::verify_certificate(d, c)? {
        Verdict::Pass => Ok(()),
        Verdict::Fail(v) => Err(CliError::Verification(format!("certificate fails: {v}"))),
    }
}

fn extract_path(
    input: &Path,
    m_override: Option<usize>,
    seconds: f64,
    v0: Option<usize>,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> CliResult {
    let d = load_drawing(input)?;
    let ad = anchored(&d, v0)?;
    let opts = PlanePathOptions {
        m_override,
        search_budget: budget(seconds)?,
        ..Default::default()
    };
    let report = cstg::extract_plane_path(&ad, &opts)?;
    check_pass(&d, &report.path)?;
    let doc = encode_certificate(&report.path);
    match out {
        Some(p) => {
            emit(Some(p), &doc, stdout)?;
            emit(None, &report.to_text(), stdout)
        }
        None => emit(None, &doc, stdout),
    }
}

fn nested(e: Edge, f: Edge) -> bool {
    (e.0 < f.0 && f.1 < e.1) || (f.0 < e.0 && e.1 < f.1)
}

fn verify(a: &VerifyArgs, stdout: &mut dyn Write) -> CliResult {
    let d = load_drawing(&a.drawing)?;
    if a.certificate.is_none() && !a.self_check {
        return Err(CliError::Usage("give a certificate or --self".into()));
    }
    if a.self_check {
        self_check(&d, stdout)?;
    }
    if let Some(p) = &a.certificate {
        let c = decode_certificate(&read(p)?)?;
        match cstg::verify_certificate(&d, &c)? {
            Verdict::Pass => emit(
                None,
                &format!("pass {} {}\n", c.kind, c.vertex_count()),
                stdout,
            )?,
            Verdict::Fail(v) => {
                emit(None, &format!("fail {v}\n"), stdout)?;
                return Err(CliError::Verification(format!("certificate fails: {v}")));
            }
        }
    }
    Ok(())
}

/// Observation check under the declared anchor, analytic against numeric
/// rotations (up to 64 vertices) and spiral against index crossings.
fn self_check(d: &Drawing, stdout: &mut dyn Write) -> CliResult {
    if d.anchor().is_some() {
        let ad = d.canonical_view()?;
        if let Some(v) = cstg::validate_observation(&ad).violation {
            let [i, j, k] = v.positions;
            return Err(Error::ObservationViolated(i, j, k, v.bits).into());
        }
        emit(None, "pass observation\n", stdout)?;
    }
    if let (Some(rot), true) = (d.rotations(), d.model().is_geometric() && d.n() <= 64) {
        let numeric = cstg::numeric_rotation_oracle(d)?;
        if let Some(v) = (0..d.n()).find(|&v| !same_cyclic_order(&rot[v], &numeric[v])) {
            return Err(CliError::Verification(format!(
                "rotation at {v} differs from the picture"
            )));
        }
        emit(None, "pass rotations\n", stdout)?;
    }
    if let Model::Twisted(p) = d.model() {
        let n = d.n();
        for a in 0..n {
            for b in a + 1..n {
                for c in a + 1..n {
                    for e in c + 1..n {
                        if c == b || e == b {
                            continue;
                        }
                        let (e1, e2) = (Edge(a, b), Edge(c, e));
                        if p.arcs_cross(e1, e2) != nested(e1, e2) {
                            return Err(CliError::Verification(format!(
                                "spiral arcs {e1} and {e2} disagree with the index rule"
                            )));
                        }
                    }
                }
            }
        }
        emit(None, "pass spiral\n", stdout)?;
    }
    emit(None, "pass\n", stdout)
}

fn oracle(a: &OracleArgs, stdout: &mut dyn Write) -> CliResult {
    let d = load_drawing(&a.input)?;
    let b = budget(a.budget_seconds)?;
    let r = match a.kind {
        OracleKind::Maxconvex => cstg::max_pattern_exact(&d, PatternKind::Convex, b),
        OracleKind::Maxtwisted => cstg::max_pattern_exact(&d, PatternKind::Twisted, b),
        OracleKind::Planepath => cstg::longest_plane_path_exact(&d, b),
    };
    emit(a.out.as_deref(), &r.to_text(), stdout)?;
    if !r.exact {
        return Err(CliError::Budget(format!(
            "budget exhausted; {} is only a lower bound",
            r.size
        )));
    }
    Ok(())
}

pub const BENCH_HEADER: &str = "# cstg-bench v1\n\
trial,seed,n,m1,m2,pattern,pattern_vertices,game_edges,stages,path_m,path_branch,path_vertices,reference\n";

/// `ceil(8 log2 n)`.
pub fn reference_size(n: usize) -> usize {
    (8.0 * (n as f64).log2()).ceil() as usize
}

fn bench_row(a: &BenchArgs, trial: u64) -> CliResult<String> {
    let seed = a.seed + trial;
    let d = build_family(a.family, a.n, seed)?;
    let ad = d.canonical_view()?;
    let report = cstg::extract_pattern(&ad, a.m1, a.m2)?;
    let (kind, size) = match &report.outcome {
        Outcome::Found(c) => {
            check_pass(&d, c)?;
            (c.kind.to_string(), c.vertex_count())
        }
        Outcome::Exhausted => ("none".to_string(), 0),
    };
    let opts = PlanePathOptions {
        m_override: a.m_override,
        search_budget: budget(a.budget_seconds)?,
        ..Default::default()
    };
    let path = cstg::extract_plane_path(&ad, &opts)?;
    check_pass(&d, &path.path)?;
    Ok(format!(
        "{trial},{seed},{},{},{},{kind},{size},{},{},{},{},{},{}\n",
        a.n,
        a.m1,
        a.m2,
        report.total_edges(),
        report.stages.len(),
        path.m,
        path.branch,
        path.path.vertex_count(),
        reference_size(a.n)
    ))
}

fn bench(a: &BenchArgs, stdout: &mut dyn Write) -> CliResult {
    if a.m1 < 2 || a.m2 < 2 {
        return Err(CliError::Usage("--m1 and --m2 must be at least 2".into()));
    }
    let rows: Vec<CliResult<String>> = (0..a.trials)
        .into_par_iter()
        .map(|t| bench_row(a, t))
        .collect();
    let mut text = String::from(BENCH_HEADER);
    for r in rows {
        text.push_str(&r?);
    }
    emit(a.out.as_deref(), &text, stdout)
}
