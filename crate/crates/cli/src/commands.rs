//! Subcommands. Each returns its stdout text and exit code.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use singlink::corpus::{generate, generate_armed, generate_trapezoids, CorpusSpec};
use singlink::diagram::{d_minimal, structure_class};
use singlink::invariants::invariants;
use singlink::inverse::{forward_orbifold, invert, realizable};
use singlink::oka::oka_graph;
use singlink::resgraph::{is_negative_definite, minimize, orbifold, OrbifoldDiagram, ResolutionGraph};
use singlink::{Error, NewtonDiagram};

use crate::formats::{parse_input, to_json, Big, DiagramJson, GraphJson, Input, OrbifoldJson};
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "singlink", version, about = "Newton diagrams, Oka's resolution graphs and their inverse")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args, Debug)]
pub struct FileArgs {
    /// Input file: support text, diagram JSON, graph JSON or orbifold JSON; `-` reads stdin.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    /// Uniform supports in the coordinate box.
    Uniform,
    /// Points concentrated near the axes, giving long arms.
    Armed,
    /// A central trapezoid plus points near the axes.
    Trapezoid,
}

#[derive(Args, Debug)]
pub struct RoundtripArgs {
    #[arg(long, default_value_t = 8)]
    pub bound: i64,
    #[arg(long, default_value_t = 6)]
    pub max_support: usize,
    #[arg(long, default_value_t = 500)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "uniform")]
    pub generator: Generator,
    /// Directory receiving one JSON bundle per failure.
    #[arg(long)]
    pub bundle_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a support: isolatedness, rational homology sphere link, structure class.
    Check { input: PathBuf },
    /// d-minimal diagram of a diagram, or good minimal graph of a resolution graph.
    Minimize(FileArgs),
    /// Milnor number, geometric genus and multiplicity of a diagram.
    Invariants(FileArgs),
    /// Resolution graph of a diagram by Oka's algorithm.
    Oka {
        #[command(flatten)]
        file: FileArgs,
        /// Blow down to the good minimal graph.
        #[arg(long)]
        minimize: bool,
    },
    /// Orbifold diagram of a diagram or of a resolution graph.
    Orbifold(FileArgs),
    /// Reconstruct the d-minimal diagram from an orbifold diagram.
    Invert(FileArgs),
    /// Decide whether a resolution graph comes from a non-degenerate Newton principal part.
    Realizable(FileArgs),
    /// Generate a corpus and check the round trip diagram -> orbifold diagram -> diagram.
    Roundtrip(RoundtripArgs),
}

/// Captured result of a command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

/// Failure of a command with its exit code.
#[derive(Debug)]
pub struct CommandError {
    pub code: i32,
    pub error: anyhow::Error,
    /// Report printed on stdout despite the failure.
    pub stdout: String,
}

fn input_error(e: impl Into<anyhow::Error>) -> CommandError {
    CommandError { code: EXIT_INPUT, error: e.into(), stdout: String::new() }
}

/// Library errors raised while processing valid input count as input errors, except for
/// failed reconstructions, which are negative answers.
fn lib_error(e: Error) -> CommandError {
    let code = match e {
        Error::NotRealizable { .. } | Error::Inconsistent(_) => EXIT_NEGATIVE,
        _ => EXIT_INPUT,
    };
    CommandError { code, error: e.into(), stdout: String::new() }
}

fn read_input(path: &Path) -> std::result::Result<Input, CommandError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
    .map_err(input_error)?;
    parse_input(&text).with_context(|| format!("parsing {}", path.display())).map_err(input_error)
}

fn want_diagram(input: Input) -> std::result::Result<NewtonDiagram, CommandError> {
    match input {
        Input::Diagram(g) => Ok(g),
        other => Err(input_error(anyhow!("expected a diagram, got a {}", other.kind()))),
    }
}

fn diagram_out(g: &NewtonDiagram, format: Format) -> String {
    match format {
        Format::Json => to_json(&DiagramJson::from_diagram(g)),
        Format::Dot => render::diagram_dot(g),
        Format::Text => render::diagram_text(g),
    }
}

fn graph_out(g: &ResolutionGraph, format: Format) -> String {
    match format {
        Format::Json => to_json(&GraphJson::from_graph(g)),
        Format::Dot => render::graph_dot(g),
        Format::Text => render::graph_text(g),
    }
}

fn orbifold_out(go: &OrbifoldDiagram, format: Format) -> String {
    match format {
        Format::Json => to_json(&OrbifoldJson::from_orbifold(go)),
        Format::Dot => render::orbifold_dot(go),
        Format::Text => render::orbifold_text(go),
    }
}

fn valid_diagram(g: &NewtonDiagram) -> std::result::Result<(), CommandError> {
    let report = g.check_isolated();
    if !report.ok {
        return Err(input_error(anyhow!("the diagram is not isolated: {}", report.failures.join("; "))));
    }
    if let Some(p) = g.positive_lattice_point() {
        return Err(input_error(anyhow!("the link is not a rational homology sphere: {p} lies on the diagram")));
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckReport {
    isolated: bool,
    isolated_failures: Vec<String>,
    qhs: bool,
    positive_point: Option<[Big; 3]>,
    valid: bool,
    structure_class: Option<String>,
}

fn check(path: &Path) -> std::result::Result<Outcome, CommandError> {
    let g = want_diagram(read_input(path)?)?;
    let iso = g.check_isolated();
    let pos = g.positive_lattice_point();
    let valid = iso.ok && pos.is_none();
    let class = if valid { Some(structure_class(&d_minimal(&g).map_err(lib_error)?).to_string()) } else { None };
    let report = CheckReport {
        isolated: iso.ok,
        isolated_failures: iso.failures,
        qhs: pos.is_none(),
        positive_point: pos.map(|p| [Big(p.x), Big(p.y), Big(p.z)]),
        valid,
        structure_class: class,
    };
    Ok(Outcome { stdout: to_json(&report), code: if valid { EXIT_OK } else { EXIT_NEGATIVE } })
}

fn minimize_cmd(a: &FileArgs) -> std::result::Result<Outcome, CommandError> {
    match read_input(&a.input)? {
        Input::Diagram(g) => {
            valid_diagram(&g)?;
            Ok(Outcome::ok(diagram_out(&d_minimal(&g).map_err(lib_error)?, a.format)))
        }
        Input::Graph(g) => Ok(Outcome::ok(graph_out(&minimize(&g).map_err(lib_error)?, a.format))),
        other => Err(input_error(anyhow!("cannot minimize a {}", other.kind()))),
    }
}

#[derive(Serialize)]
struct InvariantsJson {
    milnor: Big,
    geometric_genus: Big,
    multiplicity: Big,
}

fn invariants_cmd(a: &FileArgs) -> std::result::Result<Outcome, CommandError> {
    let g = want_diagram(read_input(&a.input)?)?;
    valid_diagram(&g)?;
    let r = invariants(&g).map_err(lib_error)?;
    let out = match a.format {
        Format::Json => to_json(&InvariantsJson {
            milnor: Big(r.milnor),
            geometric_genus: Big(r.geometric_genus),
            multiplicity: Big(r.multiplicity),
        }),
        Format::Text => {
            format!("milnor {}\ngeometric_genus {}\nmultiplicity {}\n", r.milnor, r.geometric_genus, r.multiplicity)
        }
        Format::Dot => return Err(input_error(anyhow!("invariants have no DOT rendering"))),
    };
    Ok(Outcome::ok(out))
}

fn oka_cmd(a: &FileArgs, minimal: bool) -> std::result::Result<Outcome, CommandError> {
    let g = want_diagram(read_input(&a.input)?)?;
    valid_diagram(&g)?;
    let mut graph = oka_graph(&g).map_err(lib_error)?;
    if minimal {
        graph = minimize(&graph).map_err(lib_error)?;
    }
    Ok(Outcome::ok(graph_out(&graph, a.format)))
}

fn orbifold_cmd(a: &FileArgs) -> std::result::Result<Outcome, CommandError> {
    let go = match read_input(&a.input)? {
        Input::Diagram(g) => {
            valid_diagram(&g)?;
            forward_orbifold(&g).map_err(lib_error)?
        }
        Input::Graph(g) => {
            if !g.is_tree() || !is_negative_definite(&g) {
                return Err(input_error(anyhow!("the graph is not a negative definite tree")));
            }
            orbifold(&minimize(&g).map_err(lib_error)?).map_err(lib_error)?
        }
        Input::Orbifold(go) => go,
    };
    Ok(Outcome::ok(orbifold_out(&go, a.format)))
}

fn invert_cmd(a: &FileArgs) -> std::result::Result<Outcome, CommandError> {
    let go = match read_input(&a.input)? {
        Input::Orbifold(go) => go,
        other => return Err(input_error(anyhow!("expected an orbifold diagram, got a {}", other.kind()))),
    };
    let inv = invert(&go).map_err(lib_error)?;
    log::info!("route: {}", inv.route);
    Ok(Outcome::ok(diagram_out(&inv.diagram, a.format)))
}

#[derive(Serialize)]
struct RealizableReport {
    realizable: bool,
    route: Option<String>,
    stage: Option<String>,
    reason: Option<String>,
    diagram: Option<DiagramJson>,
}

fn realizable_cmd(a: &FileArgs) -> std::result::Result<Outcome, CommandError> {
    let g = match read_input(&a.input)? {
        Input::Graph(g) => g,
        other => return Err(input_error(anyhow!("expected a resolution graph, got a {}", other.kind()))),
    };
    let (report, found) = match realizable(&g) {
        Ok(inv) => (
            RealizableReport {
                realizable: true,
                route: Some(inv.route.to_string()),
                stage: None,
                reason: None,
                diagram: Some(DiagramJson::from_diagram(&inv.diagram)),
            },
            Some(inv.diagram),
        ),
        Err(Error::NotRealizable { stage, reason }) => (
            RealizableReport {
                realizable: false,
                route: None,
                stage: Some(stage),
                reason: Some(reason),
                diagram: None,
            },
            None,
        ),
        Err(Error::Inconsistent(reason)) => (
            RealizableReport {
                realizable: false,
                route: None,
                stage: Some("consistency".into()),
                reason: Some(reason),
                diagram: None,
            },
            None,
        ),
        Err(e) => return Err(lib_error(e)),
    };
    let code = if report.realizable { EXIT_OK } else { EXIT_NEGATIVE };
    let out = match a.format {
        Format::Json => to_json(&report),
        Format::Text => match (&found, &report.route) {
            (Some(d), Some(route)) => format!("realizable via {route}\n{}", render::diagram_text(d)),
            _ => format!(
                "not realizable ({}): {}\n",
                report.stage.as_deref().unwrap_or(""),
                report.reason.as_deref().unwrap_or("")
            ),
        },
        Format::Dot => return Err(input_error(anyhow!("the realizability report has no DOT rendering"))),
    };
    Ok(Outcome { stdout: out, code })
}

/// Everything needed to reproduce one round-trip failure.
#[derive(Serialize)]
pub struct FailureBundle {
    pub input: DiagramJson,
    pub d_minimal: Option<DiagramJson>,
    pub structure_class: Option<String>,
    pub orbifold: Option<OrbifoldJson>,
    pub inverted: Option<DiagramJson>,
    pub stage: String,
    pub error: String,
}

#[derive(Serialize)]
pub struct RoundtripSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Structure class of the d-minimal diagram to `[total, passed]`.
    pub by_class: BTreeMap<String, [usize; 2]>,
}

fn roundtrip_one(g: &NewtonDiagram) -> (String, Option<FailureBundle>) {
    let mut bundle = FailureBundle {
        input: DiagramJson::from_diagram(g),
        d_minimal: None,
        structure_class: None,
        orbifold: None,
        inverted: None,
        stage: String::new(),
        error: String::new(),
    };
    let fail = |mut b: FailureBundle, stage: &str, error: String| {
        b.stage = stage.into();
        b.error = error;
        Some(b)
    };
    let d = match d_minimal(g) {
        Ok(d) => d,
        Err(e) => return ("unclassified".into(), fail(bundle, "d_minimal", e.to_string())),
    };
    let class = structure_class(&d).to_string();
    bundle.d_minimal = Some(DiagramJson::from_diagram(&d));
    bundle.structure_class = Some(class.clone());
    let go = match forward_orbifold(&d) {
        Ok(go) => go,
        Err(e) => return (class, fail(bundle, "forward", e.to_string())),
    };
    bundle.orbifold = Some(OrbifoldJson::from_orbifold(&go));
    match invert(&go) {
        Ok(inv) if inv.diagram.same_up_to_permutation(&d) => (class, None),
        Ok(inv) => {
            bundle.inverted = Some(DiagramJson::from_diagram(&inv.diagram));
            (class, fail(bundle, "compare", format!("inverse via {} differs from the d-minimal diagram", inv.route)))
        }
        Err(e) => (class, fail(bundle, "invert", e.to_string())),
    }
}

pub fn roundtrip_cmd(a: &RoundtripArgs) -> std::result::Result<(RoundtripSummary, Vec<FailureBundle>), CommandError> {
    let spec = CorpusSpec { bound: a.bound, max_support: a.max_support, count: a.count, seed: a.seed };
    let corpus = match a.generator {
        Generator::Uniform => generate(&spec),
        Generator::Armed => generate_armed(&spec),
        Generator::Trapezoid => generate_trapezoids(&spec),
    }
    .map_err(lib_error)?;
    let results: Vec<(String, Option<FailureBundle>)> = corpus.par_iter().map(roundtrip_one).collect();
    let mut by_class: BTreeMap<String, [usize; 2]> = BTreeMap::new();
    let mut failures = Vec::new();
    for (class, failure) in results {
        let entry = by_class.entry(class).or_default();
        entry[0] += 1;
        match failure {
            Some(b) => failures.push(b),
            None => entry[1] += 1,
        }
    }
    let summary = RoundtripSummary {
        total: corpus.len(),
        passed: corpus.len() - failures.len(),
        failed: failures.len(),
        by_class,
    };
    Ok((summary, failures))
}

fn roundtrip(a: &RoundtripArgs) -> std::result::Result<Outcome, CommandError> {
    let (summary, failures) = roundtrip_cmd(a)?;
    if let Some(dir) = &a.bundle_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display())).map_err(input_error)?;
        for (i, b) in failures.iter().enumerate() {
            let path = dir.join(format!("failure-{i:04}.json"));
            std::fs::write(&path, to_json(b))
                .with_context(|| format!("writing {}", path.display()))
                .map_err(input_error)?;
        }
    }
    for b in failures.iter().take(20) {
        log::warn!("round trip failed at {}: {}", b.stage, b.error);
    }
    let code = if summary.failed == 0 { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Outcome { stdout: to_json(&summary), code })
}

pub fn run(cmd: &Command) -> std::result::Result<Outcome, CommandError> {
    match cmd {
        Command::Check { input } => check(input),
        Command::Minimize(a) => minimize_cmd(a),
        Command::Invariants(a) => invariants_cmd(a),
        Command::Oka { file, minimize } => oka_cmd(file, *minimize),
        Command::Orbifold(a) => orbifold_cmd(a),
        Command::Invert(a) => invert_cmd(a),
        Command::Realizable(a) => realizable_cmd(a),
        Command::Roundtrip(a) => roundtrip(a),
    }
}

/// Run and fold failures into an outcome, with the error message for stderr.
pub fn execute(cmd: &Command) -> (Outcome, Option<String>) {
    match run(cmd) {
        Ok(o) => (o, None),
        Err(e) => (Outcome { stdout: e.stdout, code: e.code }, Some(format!("{:#}", e.error))),
    }
}

/// Parse a command line and execute it.
pub fn execute_args<I, T>(args: I) -> Result<(Outcome, Option<String>)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| anyhow!("{e}"))?;
    Ok(execute(&cli.command))
}
