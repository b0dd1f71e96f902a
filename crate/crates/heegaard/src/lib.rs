//! Command-line front end for `heegaard-core`.
//!
//! [`run`] parses arguments, runs one subcommand and returns a
//! [`CommandOutcome`]; the binary prints it and exits with its code.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use heegaard_core::cover::{
    cover_basis, lift_diagram, lift_system, lift_word, lifts, CoverContext, CyclicHom, LiftResult,
};
use heegaard_core::diagram::{compress, dualize, retain_curves, stabilization_report, HeegaardDiagram};
use heegaard_core::factor::{mha_check, mha_check_with, run_job, MhaJob, MhaOverall, MhaReport};
use heegaard_core::freegroup::{homology, Basis, CurveSystem};
use heegaard_core::pretzel::{
    component_count, filling_diagram, filling_words, pretzel_diagram, pretzel_words, theorem1_pipeline,
    theorem1_pipeline_with, PretzelParams, Status,
};
use heegaard_core::whitehead::{build_graph, decide_separability, to_dot, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

pub mod fixtures;
pub mod io;
pub mod text;

use io::{InputError, Result, SystemFile};

/// Version header recorded in JSON and DOT output.
pub const GENERATOR: &str = concat!("heegaard ", env!("CARGO_PKG_VERSION"));

/// Exit code for success or a positive verdict.
pub const EXIT_OK: i32 = 0;
/// Exit code for a negative verdict.
pub const EXIT_NEGATIVE: i32 = 1;
/// Exit code for bad input.
pub const EXIT_INPUT: i32 = 2;
/// Exit code for an inconclusive check.
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    /// Process exit code.
    pub code: i32,
    /// Text for standard output.
    pub stdout: String,
    /// Text for standard error.
    pub stderr: String,
    /// JSON report file written, if any.
    pub json_path: Option<PathBuf>,
    /// DOT files written.
    pub dot_paths: Vec<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(
    name = "heegaard",
    version,
    about = "Whitehead graphs, handle addition and Heegaard diagrams of pretzel knot exteriors"
)]
struct Cli {
    /// Emit the JSON report; with `=PATH`, write it to PATH.
    #[arg(long, global = true, num_args = 0..=1, require_equals = true, value_name = "PATH")]
    json: Option<Option<PathBuf>>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct SystemArgs {
    /// Curve system file.
    #[arg(long, value_name = "FILE")]
    system: Option<PathBuf>,
    /// Free group rank for `--word`.
    #[arg(long)]
    rank: Option<usize>,
    /// Generator names for `--word`, comma separated.
    #[arg(long, value_name = "NAMES")]
    basis: Option<String>,
    /// A curve word; repeat for several curves.
    #[arg(long = "word", value_name = "WORD", allow_hyphen_values = true)]
    words: Vec<String>,
    /// Use the pretzel words D1, D2, lambda.
    #[arg(long, value_name = "P,Q,R", allow_hyphen_values = true)]
    pretzel: Option<String>,
}

#[derive(Args, Debug)]
struct PretzelArg {
    /// Pretzel parameters.
    #[arg(long, value_name = "P,Q,R", allow_hyphen_values = true)]
    pretzel: String,
}

#[derive(Args, Debug, Default)]
struct CoverArgs {
    /// Number of sheets.
    #[arg(long, value_name = "N", default_value_t = 3)]
    cover_order: usize,
    /// Generator whose lifts span the tree; defaults to y when possible.
    #[arg(long, value_name = "GEN")]
    tree: Option<String>,
    /// Values of the map to Z/N on the generators, comma separated; defaults to all 1.
    #[arg(long, value_name = "V,..", allow_hyphen_values = true)]
    hom: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pretzel words D1, D2, lambda and, with a slope, the filling curve.
    Words {
        #[command(flatten)]
        pretzel: PretzelArg,
        /// Cover slope M/N.
        #[arg(long, value_name = "M/N", allow_hyphen_values = true)]
        slope: Option<String>,
    },
    /// First homology of the group with the given relators.
    Homology {
        #[command(flatten)]
        input: SystemArgs,
    },
    /// Whitehead graph analysis.
    Graph {
        #[command(flatten)]
        input: SystemArgs,
        /// Directory for `whitehead.dot`.
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
    },
    /// Separable or diskbusting.
    Separable {
        #[command(flatten)]
        input: SystemArgs,
    },
    /// Multi-handle addition check.
    Mha {
        #[command(flatten)]
        input: SystemArgs,
        /// Evaluate subsets concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// Lift words or a diagram to a cyclic cover.
    Cover {
        #[command(flatten)]
        input: SystemArgs,
        /// Diagram file to lift instead of words.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["system", "words", "pretzel"])]
        diagram: Option<PathBuf>,
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Swap the roles of disks and curves.
    Dual {
        /// Diagram file.
        #[arg(long, value_name = "FILE")]
        diagram: PathBuf,
        /// Curves that become disks, comma separated; defaults to all.
        #[arg(long, value_name = "NAMES")]
        disks: Option<String>,
    },
    /// Delete disks, splicing curves through them.
    Compress {
        /// Diagram file.
        #[arg(long, value_name = "FILE")]
        diagram: PathBuf,
        /// Disks to delete, comma separated.
        #[arg(long, value_name = "NAMES")]
        disks: String,
    },
    /// Curve/disk pairs meeting once.
    Stabilization {
        /// Diagram file.
        #[arg(long, value_name = "FILE", conflicts_with = "pretzel")]
        diagram: Option<PathBuf>,
        /// Pretzel parameters; the diagram is lifted and reduced to the tunnel lifts.
        #[arg(long, value_name = "P,Q,R", allow_hyphen_values = true)]
        pretzel: Option<String>,
        /// Cover slope M/N for the filled diagram.
        #[arg(long, value_name = "M/N", allow_hyphen_values = true, requires = "pretzel")]
        slope: Option<String>,
        /// Number of sheets for `--pretzel`.
        #[arg(long, value_name = "N", default_value_t = 3)]
        cover_order: usize,
    },
    /// Full certification for a pretzel knot and cover slope.
    Pipeline {
        #[command(flatten)]
        pretzel: PretzelArg,
        /// Cover slope M/N.
        #[arg(long, value_name = "M/N", allow_hyphen_values = true)]
        slope: String,
        /// Evaluate subsets concurrently.
        #[arg(long)]
        parallel: bool,
        /// Directory for the two Whitehead graphs.
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
    },
    /// Number of link components.
    Components {
        /// Tangle parameters.
        #[arg(value_name = "P,Q,..", allow_hyphen_values = true)]
        tangles: String,
    },
}

/// Output of a subcommand before rendering.
struct Report {
    code: i32,
    text: String,
    json: Value,
    dots: Vec<(String, String)>,
    warnings: Vec<String>,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { code: EXIT_OK, text, json, dots: Vec::new(), warnings: Vec::new() }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Parses `argv` (program name first), runs the command and writes any
/// requested files.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), rendered) } else { (rendered, String::new()) };
            return CommandOutcome { code, stdout, stderr, json_path: None, dot_paths: Vec::new() };
        }
    };
    let name = command_name(&cli.command);
    match execute(cli.command).and_then(|r| render(name, cli.json, r)) {
        Ok(o) => o,
        Err(e) => CommandOutcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            json_path: None,
            dot_paths: Vec::new(),
        },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Words { .. } => "words",
        Command::Homology { .. } => "homology",
        Command::Graph { .. } => "graph",
        Command::Separable { .. } => "separable",
        Command::Mha { .. } => "mha",
        Command::Cover { .. } => "cover",
        Command::Dual { .. } => "dual",
        Command::Compress { .. } => "compress",
        Command::Stabilization { .. } => "stabilization",
        Command::Pipeline { .. } => "pipeline",
        Command::Components { .. } => "components",
    }
}

/// JSON document with the generator header first.
pub fn envelope(command: &str, result: Value) -> String {
    let doc = json!({ "generator": GENERATOR, "command": command, "result": result });
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}

fn render(command: &str, json: Option<Option<PathBuf>>, r: Report) -> Result<CommandOutcome> {
    let mut stderr = String::new();
    for w in &r.warnings {
        stderr.push_str(&format!("warning: {w}\n"));
    }
    let mut dot_paths = Vec::new();
    for (path, body) in &r.dots {
        let path = PathBuf::from(path);
        io::write(&path, &format!("// {GENERATOR}\n{body}"))?;
        dot_paths.push(path);
    }
    let (stdout, json_path) = match json {
        None => (r.text, None),
        Some(None) => (envelope(command, r.json), None),
        Some(Some(path)) => {
            io::write(&path, &envelope(command, r.json))?;
            (r.text, Some(path))
        }
    };
    Ok(CommandOutcome { code: r.code, stdout, stderr, json_path, dot_paths })
}

fn load_system(a: &SystemArgs) -> Result<CurveSystem> {
    let sources = a.system.is_some() as u8 + !a.words.is_empty() as u8 + a.pretzel.is_some() as u8;
    if sources != 1 {
        return Err(InputError::Usage("give exactly one of --system, --word or --pretzel".into()));
    }
    if let Some(path) = &a.system {
        return io::read_system(path);
    }
    if let Some(p) = &a.pretzel {
        return Ok(pretzel_words(&PretzelParams::parse(p)?)?);
    }
    let basis = match (&a.basis, a.rank) {
        (Some(names), rank) => {
            let b = Basis::new(io::parse_names(names))?;
            if rank.is_some_and(|r| r != b.rank()) {
                return Err(InputError::Usage(format!("--rank {} does not match --basis {names}", rank.unwrap_or(0))));
            }
            b
        }
        (None, Some(r)) => io::default_basis(r),
        (None, None) => return Err(InputError::Usage("--word needs --rank or --basis".into())),
    };
    io::system_from_words(basis, &a.words)
}

fn mha_parallel(system: &CurveSystem) -> heegaard_core::Result<MhaReport> {
    mha_check_with(system, |jobs: &[MhaJob]| {
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len()).max(1);
        let chunk = jobs.len().div_ceil(workers);
        std::thread::scope(|s| {
            let handles: Vec<_> = jobs
                .chunks(chunk.max(1))
                .map(|part| s.spawn(move || part.iter().map(|j| run_job(system, j)).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        })
    })
}

fn mha_code(o: &MhaOverall) -> i32 {
    match o {
        MhaOverall::Pass => EXIT_OK,
        MhaOverall::Fail { .. } => EXIT_NEGATIVE,
        MhaOverall::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

fn cover_context(base: &Basis, c: &CoverArgs) -> Result<CoverContext> {
    let values = match &c.hom {
        Some(h) => io::parse_ints(h)?,
        None => vec![1; base.rank()],
    };
    let hom = CyclicHom::new(c.cover_order, values)?;
    let tree = match &c.tree {
        Some(name) => {
            base.index_of(name).ok_or_else(|| InputError::Usage(format!("--tree {name} is not a generator")))?
        }
        None => {
            let unit = |g: usize| gcd(hom.values[g], hom.modulus) == 1;
            match base.index_of("y").filter(|&g| unit(g)) {
                Some(g) => g,
                None => (0..base.rank())
                    .find(|&g| unit(g))
                    .ok_or_else(|| InputError::Usage("no generator maps to a unit".into()))?,
            }
        }
    };
    Ok(cover_basis(base, &hom, tree)?)
}

fn diagram_json(d: &HeegaardDiagram) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("json");
    s.push('\n');
    s
}

fn words_text(s: &CurveSystem) -> String {
    s.curves.iter().map(|c| format!("{} = {}\n", c.name, c.word.format(&s.basis))).collect()
}

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Words { pretzel, slope } => {
            let params = PretzelParams::parse(&pretzel.pretzel)?;
            let mut s = pretzel_words(&params)?;
            if let Some(slope) = slope {
                let f = filling_words(&params, io::parse_slope(&slope)?)?;
                s.curves.extend(f.curves.into_iter().skip(2));
            }
            Ok(Report::ok(words_text(&s), to_json(&SystemFile::from_system(&s))))
        }
        Command::Homology { input } => {
            let s = load_system(&input)?;
            let rels: Vec<_> = s.curves.iter().map(|c| c.word.to_word()).collect();
            let h = homology(&rels, &s.basis)?;
            Ok(Report::ok(format!("{}\n", text::homology(&h)), to_json(&h)))
        }
        Command::Graph { input, dot } => {
            let s = load_system(&input)?;
            let g = build_graph(s.basis.rank(), &s.words());
            let a = g.analyze();
            let mut r = Report::ok(text::analysis(&s.basis, &a, g.edges().len()), to_json(&a));
            if let Some(dir) = dot {
                r.dots.push((dir.join("whitehead.dot").display().to_string(), to_dot(&g, &s.basis, &s.names())));
            }
            Ok(r)
        }
        Command::Separable { input } => {
            let s = load_system(&input)?;
            let v = decide_separability(s.basis.rank(), &s.words())?;
            let mut r = Report::ok(text::separability(&s.basis, &v), to_json(&v));
            r.code = if v.verdict == Verdict::Diskbusting { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(r)
        }
        Command::Mha { input, parallel } => {
            let s = load_system(&input)?;
            let m = if parallel { mha_parallel(&s)? } else { mha_check(&s)? };
            let mut r = Report::ok(text::mha(&s.basis, &m), to_json(&m));
            r.code = mha_code(&m.overall);
            Ok(r)
        }
        Command::Cover { input, diagram, cover } => {
            if let Some(path) = diagram {
                let d = io::read_diagram(&path)?;
                let ctx = cover_context(&d.basis()?, &cover)?;
                let lifted = lift_diagram(&d, &ctx)?;
                let text = diagram_json(&lifted);
                return Ok(Report::ok(text, to_json(&lifted)));
            }
            let s = load_system(&input)?;
            let ctx = cover_context(&s.basis, &cover)?;
            let mut text = format!("lifted basis (rank {}): {}\n", ctx.lifted.rank(), ctx.lifted.names().join(" "));
            let mut open = Vec::new();
            for c in &s.curves {
                let start = ctx.start_of_label(1);
                match lift_word(&c.word, &ctx, start)? {
                    LiftResult::Closed(_) => {
                        for l in lifts(&c.name, &c.word, &ctx)? {
                            text.push_str(&format!("{} = {}\n", l.name, l.word.format(&ctx.lifted)));
                        }
                    }
                    LiftResult::Open { end_sheet, .. } => {
                        text.push_str(&format!("{}: open from sheet {start} to sheet {end_sheet}\n", c.name));
                        open.push(c.name.clone());
                    }
                }
            }
            let closed: Vec<&str> =
                s.curves.iter().map(|c| c.name.as_str()).filter(|n| !open.iter().any(|o| o == n)).collect();
            let lifted = lift_system(&s.select(&closed)?, &ctx)?;
            let json = json!({
                "cover": to_json(&ctx),
                "lifted": to_json(&SystemFile::from_system(&lifted)),
                "open": open,
            });
            Ok(Report::ok(text, json))
        }
        Command::Dual { diagram, disks } => {
            let d = io::read_diagram(&diagram)?;
            let names = match disks {
                Some(n) => io::parse_names(&n),
                None => d.curves.clone(),
            };
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let dual = dualize(&d, &refs)?;
            Ok(Report::ok(diagram_json(&dual), to_json(&dual)))
        }
        Command::Compress { diagram, disks } => {
            let d = io::read_diagram(&diagram)?;
            let names = io::parse_names(&disks);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let c = compress(&d, &refs)?;
            let mut r = Report::ok(diagram_json(&c.diagram), to_json(&c.diagram));
            r.warnings = c.warnings;
            Ok(r)
        }
        Command::Stabilization { diagram, pretzel, slope, cover_order } => {
            let d = match (diagram, pretzel) {
                (Some(path), None) => io::read_diagram(&path)?,
                (None, Some(p)) => pretzel_cover_diagram(&p, slope.as_deref(), cover_order)?,
                _ => return Err(InputError::Usage("give one of --diagram or --pretzel".into())),
            };
            let s = stabilization_report(&d)?;
            Ok(Report::ok(text::stabilization(&s), to_json(&s)))
        }
        Command::Pipeline { pretzel, slope, parallel, dot } => {
            let params = PretzelParams::parse(&pretzel.pretzel)?;
            let slope = io::parse_slope(&slope)?;
            let cert = if parallel {
                theorem1_pipeline_with(&params, slope, mha_parallel)?
            } else {
                theorem1_pipeline(&params, slope)?
            };
            let mut r = Report::ok(pipeline_text(&cert), to_json(&cert));
            r.code = match cert.overall {
                Status::Pass => EXIT_OK,
                Status::Fail => EXIT_NEGATIVE,
                Status::Inconclusive => EXIT_INCONCLUSIVE,
            };
            r.warnings = cert.warnings.clone();
            if let Some(dir) = dot {
                for (file, s) in [("h_bar.dot", &cert.h_bar_system), ("c_bar.dot", &cert.c_bar_system)] {
                    let g = build_graph(s.basis.rank(), &s.words());
                    r.dots.push((dir.join(file).display().to_string(), to_dot(&g, &s.basis, &s.names())));
                }
            }
            Ok(r)
        }
        Command::Components { tangles } => {
            let n = component_count(&io::parse_ints(&tangles)?)?;
            Ok(Report::ok(format!("{n}\n"), json!(n)))
        }
    }
}

/// Lifted pretzel diagram restricted to the lifts of `D1` and `D2`.
pub fn pretzel_cover_diagram(pretzel: &str, slope: Option<&str>, order: usize) -> Result<HeegaardDiagram> {
    let params = PretzelParams::parse(pretzel)?;
    let d = match slope {
        Some(s) => filling_diagram(&params, io::parse_slope(s)?)?,
        None => pretzel_diagram(&params)?,
    };
    let ctx = cover_basis(&d.basis()?, &CyclicHom::new(order, vec![1; 3])?, 1)?;
    let lifted = lift_diagram(&d, &ctx)?;
    let tunnels: Vec<String> =
        lifted.curves.iter().filter(|c| c.starts_with("D1_") || c.starts_with("D2_")).cloned().collect();
    let refs: Vec<&str> = tunnels.iter().map(String::as_str).collect();
    Ok(retain_curves(&lifted, &refs)?)
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Inconclusive => "INCONCLUSIVE",
    }
}

fn pipeline_text(c: &heegaard_core::pretzel::Theorem1Certificate) -> String {
    let n = &c.normalized;
    let tangles: Vec<String> = c.params.tangles.iter().map(i64::to_string).collect();
    let mut out = format!("{}\n", status_word(c.overall));
    out.push_str(&format!("pretzel ({}): case {}, i={}, j={}\n", tangles.join(","), n.case, n.i, n.j));
    out.push_str(&format!(
        "cover slope {}/{}, base slope {}/{}, meridian offset {}\n",
        c.cover_slope.0, c.cover_slope.1, c.base_slope.0, c.base_slope.1, c.meridian_offset
    ));
    for w in &c.words {
        out.push_str(&format!("{} = {}\n", w.name, w.word));
    }
    out.push_str(&format!("homology: {}\n", text::homology(&c.homology)));
    out.push_str(&format!("lifted basis: {}\n", c.cover.lifted.names().join(" ")));
    for p in &c.weak_reducibility {
        out.push_str(&format!("weak reducibility: {{{}}} miss {{{}}}\n", p.curves.join(" "), p.disks.join(" ")));
    }
    out.push_str(&format!("stabilization: {} pairs meet once\n", c.stabilization.flagged().count()));
    for (label, s, m) in [("H-bar", &c.h_bar_system, &c.h_bar), ("C-bar", &c.c_bar_system, &c.c_bar)] {
        out.push_str(&format!("{label} over {}:\n", s.basis.names().join(" ")));
        out.push_str(&words_text(s).lines().map(|l| format!("  {l}\n")).collect::<String>());
        out.push_str(&text::mha(&s.basis, m).lines().map(|l| format!("  {l}\n")).collect::<String>());
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
