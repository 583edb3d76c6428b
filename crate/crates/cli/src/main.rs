use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cmk_core::geometry::orbit::points_from_file;
use cmk_core::geometry::{characteristic, fmt_q, lift, parse_q, project, OrbitFile, Params, Point};
use cmk_core::homology::{conley_index, poincare_polynomial};
use cmk_core::io::{parse_system, set_to_json};
use cmk_core::morse::ConleyMorseGraph;
use cmk_core::verify::{run_property_suite, SampleConfig};
use cmk_core::{BiSequence, Coefficients, Error, Loaded, SolutionSeq, System};

#[derive(Parser)]
#[command(
    name = "cmk",
    version,
    about = "Conley-Morse analysis of combinatorial vector fields"
)]
struct Cli {
    /// Leave the timestamp out of run manifests.
    #[arg(long, global = true)]
    reproducible: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the input describes a simplicial complex with a vector field.
    Validate {
        input: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Minimal Morse sets, their order and Conley indices.
    Morse {
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Analyse these sets instead of the minimal Morse sets (repeatable).
        #[arg(long = "set")]
        sets: Vec<String>,
        #[arg(long, default_value = "gf2", value_parser = parse_field)]
        field: Coefficients,
    },
    /// Conley index of one isolated invariant set.
    Index {
        input: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "gf2", value_parser = parse_field)]
        field: Coefficients,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the geometric property suite.
    CheckGeometry {
        input: PathBuf,
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        levels: Levels,
        /// Image grids use denominator `cap * L`.
        #[arg(long, default_value_t = 2)]
        cap: i64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Lift a solution of the flow to an orbit of F.
    Lift {
        input: PathBuf,
        #[arg(long)]
        solution: String,
        #[arg(long, default_value_t = 64)]
        cap: i64,
        #[command(flatten)]
        levels: Levels,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project an orbit of F to a solution of the flow.
    Project {
        input: PathBuf,
        #[arg(long)]
        orbit_file: PathBuf,
        #[command(flatten)]
        levels: Levels,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Overrides for the level constants, as rationals `p/q`.
#[derive(Args, Clone)]
struct Levels {
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long = "delta-prime")]
    delta_prime: Option<String>,
}

fn parse_field(s: &str) -> Result<Coefficients, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Serialize)]
struct RunManifest {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input: String,
    overrides: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

impl RunManifest {
    fn new(cli: &Cli, command: &'static str, input: &Path) -> Self {
        let timestamp = (!cli.reproducible).then(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            input: input.display().to_string(),
            overrides: BTreeMap::new(),
            seed: None,
            outputs: Vec::new(),
            timestamp,
        }
    }

    fn output(&mut self, path: &Option<PathBuf>) {
        if let Some(p) = path {
            self.outputs.push(p.display().to_string());
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn analysis(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

/// Malformed arguments and unreadable files are usage errors; everything
/// else is a finding about the input.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownVertex(_)
        | Error::EmptySimplex
        | Error::NotASimplex(_)
        | Error::Syntax { .. }
        | Error::InvalidParams(_)
        | Error::InvalidPoint(_)
        | Error::Json(_) => 2,
        _ => 1,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn write_json(path: &Option<PathBuf>, value: &impl Serialize) -> Result<(), Failure> {
    if let Some(p) = path {
        let text =
            serde_json::to_string_pretty(value).map_err(|e| Failure::analysis(e.to_string()))?;
        write(p, &(text + "\n"))?;
    }
    Ok(())
}

/// JSON syntax errors exit with 2, structural problems of the system with 1.
fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = read(path)?;
    parse_system(&text).map_err(|e| match e {
        Error::Json(e) => Failure::usage(format!("{}: {e}", path.display())),
        e => Failure::analysis(format!("{}: {e}", path.display())),
    })
}

/// Argument-level errors keep their usage exit code even when the error kind
/// would otherwise count as an analysis failure.
fn arg<T>(what: &str, r: cmk_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::usage(format!("{what}: {e}")))
}

fn params_for(
    sys: &System,
    levels: &Levels,
    manifest: &mut RunManifest,
) -> Result<Params, Failure> {
    let mut p = Params::default_for(sys.complex.dim());
    let slots = [
        ("eps", &levels.eps, &mut p.eps),
        ("gamma", &levels.gamma, &mut p.gamma),
        ("delta", &levels.delta, &mut p.delta),
        ("delta-prime", &levels.delta_prime, &mut p.delta_prime),
    ];
    for (name, value, slot) in slots {
        if let Some(v) = value {
            *slot = arg(&format!("--{name}"), parse_q(v))?;
            manifest.overrides.insert(name.to_string(), fmt_q(slot));
        }
    }
    p.validate(sys.complex.dim())?;
    Ok(p)
}

fn cmd_validate(cli: &Cli, input: &Path, json: &Option<PathBuf>) -> Outcome {
    let mut manifest = RunManifest::new(cli, "validate", input);
    manifest.output(json);
    let text = read(input)?;
    let (code, summary, diagnostics) = match parse_system(&text) {
        Ok(loaded) => {
            let sys = &loaded.system;
            let k = &sys.complex;
            let summary = format!(
                "valid: {} vertices, {} simplices (dimension {}), {} vectors, {} critical",
                k.num_vertices(),
                k.len(),
                k.dim(),
                sys.field.vectors().len(),
                sys.field.critical().len()
            );
            (0, summary, Vec::new())
        }
        Err(Error::Json(e)) => return Err(Failure::usage(format!("{}: {e}", input.display()))),
        Err(Error::InvalidField(violations)) => {
            let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            (
                1,
                format!("invalid: {} vector field violations", lines.len()),
                lines,
            )
        }
        Err(e) => (1, "invalid".to_string(), vec![e.to_string()]),
    };
    println!("{summary}");
    for d in &diagnostics {
        println!("  {d}");
    }
    #[derive(Serialize)]
    struct Out<'a> {
        manifest: &'a RunManifest,
        valid: bool,
        summary: &'a str,
        diagnostics: &'a [String],
    }
    write_json(
        json,
        &Out {
            manifest: &manifest,
            valid: code == 0,
            summary: &summary,
            diagnostics: &diagnostics,
        },
    )?;
    Ok(code)
}

fn cmd_morse(
    cli: &Cli,
    input: &Path,
    dot: &Option<PathBuf>,
    json: &Option<PathBuf>,
    sets: &[String],
    field: Coefficients,
) -> Outcome {
    let mut manifest = RunManifest::new(cli, "morse", input);
    manifest.output(dot);
    manifest.output(json);
    for (i, s) in sets.iter().enumerate() {
        manifest.overrides.insert(format!("set{i}"), s.clone());
    }
    let loaded = load(input)?;
    let sys = &loaded.system;
    let graph = if sets.is_empty() {
        ConleyMorseGraph::build(sys, None, field)?
    } else {
        let family = sets
            .iter()
            .map(|s| arg("--set", loaded.resolve_set(s)))
            .collect::<Result<Vec<_>, _>>()?;
        ConleyMorseGraph::for_sets(sys, &family, field)?
    };
    println!("{} Morse sets", graph.nodes.len());
    for n in &graph.nodes {
        let betti: Vec<String> = n.betti.iter().map(|b| b.to_string()).collect();
        println!(
            "  m{} {} betti ({}) P(t)={}",
            n.id,
            graph.node_name(n.id),
            betti.join(","),
            n.poincare
        );
    }
    for (a, b) in &graph.edges {
        println!("  m{a} -> m{b}");
    }
    if let Some(p) = dot {
        write(p, &graph.to_dot())?;
    }
    #[derive(Serialize)]
    struct Out<'a> {
        manifest: &'a RunManifest,
        graph: &'a ConleyMorseGraph,
    }
    write_json(
        json,
        &Out {
            manifest: &manifest,
            graph: &graph,
        },
    )?;
    Ok(0)
}

fn cmd_index(
    cli: &Cli,
    input: &Path,
    set: &str,
    field: Coefficients,
    json: &Option<PathBuf>,
) -> Outcome {
    let mut manifest = RunManifest::new(cli, "index", input);
    manifest.output(json);
    manifest.overrides.insert("set".into(), set.to_string());
    let loaded = load(input)?;
    let sys = &loaded.system;
    let k = &sys.complex;
    let s = arg("--set", loaded.resolve_set(set))?;
    let report = sys.isolation_report(&s)?;
    if !report.isolated {
        return Err(Failure::analysis(format!(
            "{} is not an isolated invariant set: {}",
            k.set_name(&s),
            report.summary()
        )));
    }
    let exit = k.exit_set(&s);
    let betti = conley_index(sys, &s, field)?;
    let poly = poincare_polynomial(&betti);
    let betti_text: Vec<String> = betti.iter().map(|b| b.to_string()).collect();
    println!(
        "S={} ({} {})",
        k.set_name(&s),
        s.len(),
        if s.len() == 1 { "simplex" } else { "simplices" }
    );
    println!("Exit={}, P(t)={}", k.set_name(&exit), poly);
    println!("Betti=({})", betti_text.join(","));
    #[derive(Serialize)]
    struct Out<'a> {
        manifest: &'a RunManifest,
        set: Vec<Vec<String>>,
        exit: Vec<Vec<String>>,
        betti: &'a [usize],
        poincare: &'a str,
    }
    write_json(
        json,
        &Out {
            manifest: &manifest,
            set: set_to_json(k, &s),
            exit: set_to_json(k, &exit),
            betti: &betti,
            poincare: &poly,
        },
    )?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_check_geometry(
    cli: &Cli,
    input: &Path,
    set: &Option<String>,
    samples: usize,
    seed: u64,
    levels: &Levels,
    cap: i64,
    json: &Option<PathBuf>,
) -> Outcome {
    let mut manifest = RunManifest::new(cli, "check-geometry", input);
    manifest.output(json);
    manifest.seed = Some(seed);
    manifest
        .overrides
        .insert("samples".into(), samples.to_string());
    manifest.overrides.insert("cap".into(), cap.to_string());
    if cap < 1 {
        return Err(Failure::usage("--cap must be at least 1"));
    }
    let loaded = load(input)?;
    let sys = &loaded.system;
    let params = params_for(sys, levels, &mut manifest)?;
    let s = match set {
        Some(a) => {
            manifest.overrides.insert("set".into(), a.clone());
            Some(arg("--set", loaded.resolve_set(a))?)
        }
        None => None,
    };
    let config = SampleConfig {
        count: samples,
        seed,
        grid_multiplier: cap,
        ..SampleConfig::default()
    };
    let report = run_property_suite(sys, s.as_ref(), &params, &config)?;
    print!("{}", report.to_text());
    #[derive(Serialize)]
    struct Out<'a> {
        manifest: &'a RunManifest,
        report: &'a cmk_core::verify::PropertyReport,
    }
    write_json(
        json,
        &Out {
            manifest: &manifest,
            report: &report,
        },
    )?;
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn describe_points(
    sys: &System,
    points: &BiSequence<Point>,
    params: &Params,
) -> Result<String, Failure> {
    let k = &sys.complex;
    let periodic =
        points.middle.is_empty() && points.left == points.right && !points.left.is_empty();
    let blocks: Vec<(&str, &[Point])> = if periodic {
        vec![("period", &points.left)]
    } else {
        vec![
            ("repeats into the past", &points.left),
            ("once", &points.middle),
            ("repeats into the future", &points.right),
        ]
    };
    let mut out = String::new();
    let mut i = 0;
    for (label, block) in blocks {
        if block.is_empty() {
            continue;
        }
        out.push_str(&format!("  {label}:\n"));
        for p in block {
            let cell = characteristic(k, p, params.eps)?.max;
            out.push_str(&format!(
                "    x{i} = {}  in the open eps-cell of {}\n",
                p.display(k),
                k.name(cell)
            ));
            i += 1;
        }
    }
    Ok(out)
}

fn cmd_lift(
    cli: &Cli,
    input: &Path,
    solution: &str,
    cap: i64,
    levels: &Levels,
    out: &Option<PathBuf>,
) -> Outcome {
    let mut manifest = RunManifest::new(cli, "lift", input);
    manifest.output(out);
    manifest
        .overrides
        .insert("solution".into(), solution.to_string());
    manifest.overrides.insert("cap".into(), cap.to_string());
    if cap < 1 {
        return Err(Failure::usage("--cap must be at least 1"));
    }
    let loaded = load(input)?;
    let sys = &loaded.system;
    let params = params_for(sys, levels, &mut manifest)?;
    let rho = arg("--solution", SolutionSeq::parse(&sys.complex, solution))?;
    let lifted = lift(sys, &rho, &params, cap)?;
    let window = lifted.points.window();
    let pairs: BTreeSet<(&Point, &Point)> = window.windows(2).map(|w| (w[0], w[1])).collect();
    println!("reduced solution {}", lifted.reduced.display(&sys.complex));
    print!("{}", describe_points(sys, &lifted.points, &params)?);
    println!(
        "verified x(k+1) in F(x(k)) on {} distinct consecutive pairs",
        pairs.len()
    );
    #[derive(Serialize)]
    struct Out<'a> {
        manifest: &'a RunManifest,
        #[serde(flatten)]
        orbit: OrbitFile,
    }
    write_json(
        out,
        &Out {
            manifest: &manifest,
            orbit: lifted.to_file(sys),
        },
    )?;
    Ok(0)
}

fn cmd_project(
    cli: &Cli,
    input: &Path,
    orbit_file: &Path,
    levels: &Levels,
    json: &Option<PathBuf>,
) -> Outcome {
    let mut manifest = RunManifest::new(cli, "project", input);
    manifest.output(json);
    manifest
        .overrides
        .insert("orbit-file".into(), orbit_file.display().to_string());
    let loaded = load(input)?;
    let sys = &loaded.system;
    let params = params_for(sys, levels, &mut manifest)?;
    let text = read(orbit_file)?;
    let file: OrbitFile = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", orbit_file.display())))?;
    let points = arg("orbit file", points_from_file(sys, &file))?;
    let rho = project(sys, &points, &params)?;
    let shown = rho.display(&sys.complex);
    println!("{shown}");
    #[derive(Serialize)]
    struct Out<'a> {
        manifest: &'a RunManifest,
        solution: &'a str,
    }
    write_json(
        json,
        &Out {
            manifest: &manifest,
            solution: &shown,
        },
    )?;
    Ok(0)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { input, json } => cmd_validate(cli, input, json),
        Command::Morse {
            input,
            dot,
            json,
            sets,
            field,
        } => cmd_morse(cli, input, dot, json, sets, *field),
        Command::Index {
            input,
            set,
            field,
            json,
        } => cmd_index(cli, input, set, *field, json),
        Command::CheckGeometry {
            input,
            set,
            samples,
            seed,
            levels,
            cap,
            json,
        } => cmd_check_geometry(cli, input, set, *samples, *seed, levels, *cap, json),
        Command::Lift {
            input,
            solution,
            cap,
            levels,
            out,
        } => cmd_lift(cli, input, solution, *cap, levels, out),
        Command::Project {
            input,
            orbit_file,
            levels,
            json,
        } => cmd_project(cli, input, orbit_file, levels, json),
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("CMK_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| {
        Failure::usage(format!("CMK_THREADS must be a positive integer, got `{v}`"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot configure {n} threads: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(&cli)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
