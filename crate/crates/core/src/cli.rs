//! The `noncross` command-line front end.
//!
//! Structures and reports go to stdout (or `--out`); run summaries with wall
//! times go to stderr, so stdout is reproducible in deterministic mode.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::counting::{
    convex_ham_count, convex_path_count, count_010_avoiding, estimate, pseudotriangle_poly_count,
    pseudotriangle_surround_count, EstimateReport,
};
use crate::error::Error;
use crate::generators::{gen_convex, gen_pseudotriangle, gen_random, FamilySpec};
use crate::geom::PointSet;
use crate::io::parse_points;
use crate::oracle::{cross_check, fixture_table, CrossCheckReport, OracleLimits};
use crate::params::params;
use crate::paths::{
    enumerate_ham_paths, enumerate_paths, par_enumerate_ham_paths, par_enumerate_paths,
};
use crate::structure::{EnumOptions, EnumerationOutcome, Mode, StructureClass};
use crate::surround::{
    enumerate_polygonalizations, enumerate_surrounding, is_surrounding_polygon,
    par_enumerate_polygonalizations, par_enumerate_surrounding,
};
use crate::svg::{render, Overlay};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_TRUNCATED: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "noncross",
    version,
    about = "Enumerate, count and estimate non-crossing paths and polygons of planar point sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Point file: `x y` per line, or JSON `{"points": [[x, y], ...]}`.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Generated instance, e.g. `convex:6`, `grid:3x3`, `random:8,42`.
    #[arg(long = "gen", global = true, value_name = "FAMILY:ARGS")]
    pub generator: Option<FamilySpec>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum number of search-tree nodes per enumeration.
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<u64>,
    /// Single-threaded search with reproducible output order.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Largest point count accepted by the brute-force oracles.
    #[arg(long, global = true, value_name = "N")]
    pub oracle_limit: Option<usize>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Paths,
    Ham,
    Surround,
    Poly,
}

impl Kind {
    fn class(self) -> StructureClass {
        match self {
            Kind::Paths => StructureClass::Path,
            Kind::Ham => StructureClass::Ham,
            Kind::Surround => StructureClass::Surround,
            Kind::Poly => StructureClass::Poly,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    ConvexHam,
    ConvexPath,
    PseudoPoly,
    PseudoSurround,
    Avoid010,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    Convex,
    Pseudotriangle,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print n, offline, inhull, m and the largest collinear subset.
    Params,
    /// List every structure of one kind.
    Enumerate { kind: Kind },
    /// Count structures without listing them (all kinds by default).
    Count { kind: Option<Kind> },
    /// Logarithmic size estimates, with empirical ratios when counting is feasible.
    Estimate,
    /// Compare the search enumerators with brute force.
    Verify {
        /// Check this many random sets instead of the input.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        #[arg(long, default_value_t = 5)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        bound: i64,
    },
    /// Closed-form count tables.
    Formulas {
        #[arg(long, default_value_t = 3)]
        from: usize,
        #[arg(long, default_value_t = 12)]
        to: usize,
        #[arg(long, value_enum)]
        table: Option<Table>,
    },
    /// Draw the point set, optionally with a path or polygon.
    Svg {
        /// Comma-separated vertex indices.
        #[arg(long, conflicts_with = "polygon")]
        path: Option<String>,
        #[arg(long)]
        polygon: Option<String>,
    },
    /// Write brute-force counts for the regression instances as JSON.
    Fixtures,
    /// Nodes visited per structure on growing convex and pseudotriangle sets.
    Sensitivity {
        #[arg(long, value_enum, default_value_t = SweepFamily::Both)]
        family: SweepFamily,
        /// Time budget per family, in seconds.
        #[arg(long, default_value_t = 120.0)]
        seconds: f64,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("I/O error: {e}"))
    }
}

type CmdResult = Result<i32, Failure>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub kind: StructureClass,
    pub structures: Vec<Vec<usize>>,
    pub outcome: EnumerationOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub class: StructureClass,
    pub outcome: EnumerationOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    pub classes: Vec<ClassCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalRatio {
    pub class: StructureClass,
    pub scale: f64,
    /// Exact count, when the budgeted enumeration finished.
    pub count: Option<u64>,
    /// `log2(count) / scale`, when both are positive.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateOutput {
    pub estimate: EstimateReport,
    pub empirical: Vec<EmpiricalRatio>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub source: String,
    pub report: CrossCheckReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaRow {
    pub n: usize,
    pub convex_ham: Option<String>,
    pub convex_path: String,
    pub pseudo_poly: Option<String>,
    pub pseudo_surround: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidRow {
    pub n: usize,
    pub ell: usize,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityRow {
    pub family: String,
    pub class: StructureClass,
    pub n: usize,
    pub count: u64,
    pub nodes_visited: u64,
    /// Nodes visited per emitted structure.
    pub ratio: f64,
    pub seconds: f64,
    pub completed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub seconds_per_family: f64,
    pub rows: Vec<SensitivityRow>,
}

/// Runs the CLI on the process arguments and returns the exit code.
pub fn main() -> i32 {
    run(std::env::args_os())
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    let c = &cli.common;
    if c.format == Format::Svg
        && !matches!(cli.command, Command::Svg { .. } | Command::Enumerate { .. })
    {
        return Err(Failure::Usage(
            "--format svg applies to svg and enumerate only".into(),
        ));
    }
    match &cli.command {
        Command::Params => cmd_params(c),
        Command::Enumerate { kind } => cmd_enumerate(c, *kind),
        Command::Count { kind } => cmd_count(c, *kind),
        Command::Estimate => cmd_estimate(c),
        Command::Verify {
            random,
            min_n,
            max_n,
            seed,
            bound,
        } => cmd_verify(c, *random, *min_n, *max_n, *seed, *bound),
        Command::Formulas { from, to, table } => cmd_formulas(c, *from, *to, *table),
        Command::Svg { path, polygon } => cmd_svg(c, path.as_deref(), polygon.as_deref()),
        Command::Fixtures => cmd_fixtures(c),
        Command::Sensitivity {
            family,
            seconds,
            max_n,
        } => cmd_sensitivity(c, *family, *seconds, *max_n),
    }
}

fn load(c: &Common) -> Result<PointSet, Failure> {
    match (&c.input, &c.generator) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "give either --input or --gen, not both".into(),
        )),
        (None, None) => Err(Failure::Usage(
            "an input is required: --input FILE or --gen FAMILY:ARGS".into(),
        )),
        (None, Some(spec)) => Ok(spec.generate()?),
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            parse_points(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
    }
}

fn output(c: &Common) -> Result<Box<dyn Write + Send>, Failure> {
    Ok(match &c.out {
        Some(path) => {
            Box::new(BufWriter::new(fs::File::create(path).map_err(|e| {
                Failure::Usage(format!("{}: {e}", path.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn write_json<T: Serialize>(c: &Common, value: &T) -> Result<(), Failure> {
    let mut w = output(c)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Failure::Internal(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn write_text(c: &Common, text: &str) -> Result<(), Failure> {
    let mut w = output(c)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn options(c: &Common) -> EnumOptions {
    EnumOptions {
        max_nodes: c.budget,
        mode: if c.deterministic {
            Mode::Deterministic
        } else {
            Mode::Parallel
        },
        ..Default::default()
    }
}

fn joined(v: &[usize]) -> String {
    v.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn summary(outcome: &EnumerationOutcome, elapsed: Duration) {
    eprintln!(
        "count={} nodes={} truncated={} time={:.3}s",
        outcome.count,
        outcome.nodes_visited,
        outcome.truncated,
        elapsed.as_secs_f64()
    );
}

fn cmd_params(c: &Common) -> CmdResult {
    let s = load(c)?;
    let r = params(&s);
    match c.format {
        Format::Json => write_json(c, &r)?,
        _ => {
            let witness = r
                .witness_line
                .map_or("-".into(), |(a, b)| format!("{a},{b}"));
            write_text(
                c,
                &format!(
                    "n {}\noffline_k {}\ninhull_h {}\nm {}\nmax_collinear {}\nwitness_line {}\n",
                    r.n, r.offline_k, r.inhull_h, r.m, r.max_collinear, witness
                ),
            )?
        }
    }
    Ok(EXIT_OK)
}

/// Runs one enumeration, handing each structure to `sink`.
fn run_kind(
    s: &PointSet,
    kind: Kind,
    opts: &EnumOptions,
    sink: &(dyn Fn(&[usize]) + Sync),
) -> Result<EnumerationOutcome, Error> {
    let mut seq = |v: &[usize]| sink(v);
    match (kind, opts.mode) {
        (Kind::Paths, Mode::Deterministic) => Ok(enumerate_paths(s, opts, &mut seq)),
        (Kind::Paths, Mode::Parallel) => Ok(par_enumerate_paths(s, opts, sink)),
        (Kind::Ham, Mode::Deterministic) => Ok(enumerate_ham_paths(s, opts, &mut seq)),
        (Kind::Ham, Mode::Parallel) => Ok(par_enumerate_ham_paths(s, opts, sink)),
        (Kind::Surround, Mode::Deterministic) => enumerate_surrounding(s, opts, &mut seq),
        (Kind::Surround, Mode::Parallel) => par_enumerate_surrounding(s, opts, sink),
        (Kind::Poly, Mode::Deterministic) => enumerate_polygonalizations(s, opts, &mut seq),
        (Kind::Poly, Mode::Parallel) => par_enumerate_polygonalizations(s, opts, sink),
    }
}

fn cmd_enumerate(c: &Common, kind: Kind) -> CmdResult {
    let s = load(c)?;
    let opts = options(c);
    let start = Instant::now();
    let outcome = match c.format {
        Format::Text => {
            let w = Mutex::new((output(c)?, None::<io::Error>));
            let sink = |v: &[usize]| {
                let mut g = w.lock().expect("output lock");
                if g.1.is_none() {
                    if let Err(e) = writeln!(g.0, "{}", joined(v)) {
                        g.1 = Some(e);
                    }
                }
            };
            let outcome = run_kind(&s, kind, &opts, &sink)?;
            let (mut out, err) = w.into_inner().expect("output lock");
            if let Some(e) = err {
                return Err(e.into());
            }
            out.flush()?;
            outcome
        }
        Format::Json | Format::Svg => {
            let items = Mutex::new(Vec::new());
            let sink = |v: &[usize]| items.lock().expect("collector lock").push(v.to_vec());
            let outcome = run_kind(&s, kind, &opts, &sink)?;
            let structures = items.into_inner().expect("collector lock");
            if c.format == Format::Json {
                write_json(
                    c,
                    &EnumerateReport {
                        kind: kind.class(),
                        structures,
                        outcome,
                    },
                )?;
            } else {
                let overlay = structures.first().map(|v| match kind {
                    Kind::Paths | Kind::Ham => Overlay::Path(v.clone()),
                    Kind::Surround | Kind::Poly => Overlay::Polygon(v.clone()),
                });
                write_text(c, &render(&s, overlay.as_ref()))?;
            }
            outcome
        }
    };
    summary(&outcome, start.elapsed());
    Ok(if outcome.truncated {
        EXIT_TRUNCATED
    } else {
        EXIT_OK
    })
}

const ALL_KINDS: [Kind; 4] = [Kind::Paths, Kind::Ham, Kind::Surround, Kind::Poly];

fn cmd_count(c: &Common, kind: Option<Kind>) -> CmdResult {
    let s = load(c)?;
    let opts = options(c);
    let kinds: Vec<Kind> = kind.map_or(ALL_KINDS.to_vec(), |k| vec![k]);
    let mut report = CountReport {
        n: s.len(),
        classes: Vec::new(),
    };
    let start = Instant::now();
    for k in kinds {
        let outcome = run_kind(&s, k, &opts, &|_| {})?;
        report.classes.push(ClassCount {
            class: k.class(),
            outcome,
        });
    }
    let truncated = report.classes.iter().any(|cc| cc.outcome.truncated);
    match c.format {
        Format::Json => write_json(c, &report)?,
        _ => {
            let mut text = String::new();
            for cc in &report.classes {
                let flag = if cc.outcome.truncated {
                    " (truncated, lower bound)"
                } else {
                    ""
                };
                text.push_str(&format!(
                    "{} {} nodes={}{flag}\n",
                    cc.class.name(),
                    cc.outcome.count,
                    cc.outcome.nodes_visited
                ));
            }
            write_text(c, &text)?;
        }
    }
    eprintln!("time={:.3}s", start.elapsed().as_secs_f64());
    Ok(if truncated { EXIT_TRUNCATED } else { EXIT_OK })
}

/// Node budget for the exact counts behind the empirical ratios.
const ESTIMATE_NODE_BUDGET: u64 = 2_000_000;

fn cmd_estimate(c: &Common) -> CmdResult {
    let s = load(c)?;
    let est = estimate(&s)?;
    let mut opts = options(c);
    opts.max_nodes = Some(c.budget.unwrap_or(ESTIMATE_NODE_BUDGET));
    let mut empirical = Vec::new();
    for k in ALL_KINDS {
        let scale = match k {
            Kind::Paths => est.path_scale,
            Kind::Ham => est.ham_scale,
            Kind::Surround | Kind::Poly => est.poly_scale,
        };
        let outcome = run_kind(&s, k, &opts, &|_| {})?;
        let count = (!outcome.truncated).then_some(outcome.count);
        let ratio = count
            .filter(|&n| n > 0 && scale > 0.0)
            .map(|n| (n as f64).log2() / scale);
        empirical.push(EmpiricalRatio {
            class: k.class(),
            scale,
            count,
            ratio,
        });
    }
    let out = EstimateOutput {
        estimate: est,
        empirical,
    };
    match c.format {
        Format::Json => write_json(c, &out)?,
        _ => {
            let e = &out.estimate;
            let mut text = format!(
                "n {}\noffline_k {}\ninhull_h {}\nm {}\npath_scale {:.6}\nham_scale {:.6}\npoly_scale {:.6}\nproven_ham_lower_log2 {:.6}\n",
                e.n, e.offline_k, e.inhull_h, e.m, e.path_scale, e.ham_scale, e.poly_scale, e.proven_ham_lower_log2
            );
            for r in &out.empirical {
                let count = r.count.map_or("budget exceeded".into(), |n| n.to_string());
                let ratio = r.ratio.map_or("-".into(), |x| format!("{x:.4}"));
                text.push_str(&format!(
                    "{} count {} log2/scale {}\n",
                    r.class.name(),
                    count,
                    ratio
                ));
            }
            write_text(c, &text)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    c: &Common,
    random: Option<usize>,
    min_n: usize,
    max_n: usize,
    seed: u64,
    bound: i64,
) -> CmdResult {
    let mut limits = OracleLimits::default();
    if let Some(l) = c.oracle_limit {
        limits = OracleLimits {
            paths: l,
            surround: l,
        };
    }
    let mut sets: Vec<(String, PointSet)> = Vec::new();
    match random {
        Some(count) => {
            if c.input.is_some() || c.generator.is_some() {
                return Err(Failure::Usage("--random replaces --input/--gen".into()));
            }
            if min_n == 0 || min_n > max_n {
                return Err(Failure::Usage("need 1 <= --min-n <= --max-n".into()));
            }
            for i in 0..count {
                let n = min_n + i % (max_n - min_n + 1);
                let spec = FamilySpec::Random {
                    n,
                    seed: seed + i as u64,
                    bound,
                };
                sets.push((spec.to_string(), gen_random(n, seed + i as u64, bound)?));
            }
        }
        None => {
            let name = match (&c.input, &c.generator) {
                (Some(p), _) => p.display().to_string(),
                (_, Some(g)) => g.to_string(),
                _ => String::new(),
            };
            sets.push((name, load(c)?));
        }
    }
    let mut report = VerifyReport {
        entries: Vec::new(),
        mismatches: 0,
    };
    for (source, s) in sets {
        let r = cross_check(&s, limits)?;
        if !r.all_equal() {
            report.mismatches += 1;
        }
        report.entries.push(VerifyEntry { source, report: r });
    }
    match c.format {
        Format::Json => write_json(c, &report)?,
        _ => {
            let mut text = String::new();
            for e in &report.entries {
                if e.report.all_equal() {
                    let counts: Vec<String> = e
                        .report
                        .classes
                        .iter()
                        .map(|cr| format!("{}={}", cr.class.name(), cr.oracle_count))
                        .collect();
                    text.push_str(&format!("{} ok {}\n", e.source, counts.join(" ")));
                }
                for m in e.report.mismatches() {
                    let w = m.witness.as_ref().map_or(String::new(), |w| {
                        format!(" witness {:?} {}", w.kind, joined(&w.vertices))
                    });
                    text.push_str(&format!(
                        "{} MISMATCH {} fast={} oracle={}{w}\n",
                        e.source,
                        m.class.name(),
                        m.fast_count,
                        m.oracle_count
                    ));
                }
            }
            text.push_str(&format!(
                "{} sets checked, {} with mismatches\n",
                report.entries.len(),
                report.mismatches
            ));
            write_text(c, &text)?;
        }
    }
    Ok(if report.mismatches > 0 {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    })
}

fn cmd_formulas(c: &Common, from: usize, to: usize, table: Option<Table>) -> CmdResult {
    if from > to {
        return Err(Failure::Usage("--from must not exceed --to".into()));
    }
    if table == Some(Table::Avoid010) {
        let mut rows = Vec::new();
        for n in from..=to {
            for ell in 0..=n {
                rows.push(AvoidRow {
                    n,
                    ell,
                    count: count_010_avoiding(n, ell)?.to_string(),
                });
            }
        }
        match c.format {
            Format::Json => write_json(c, &rows)?,
            _ => {
                let text: String = rows
                    .iter()
                    .map(|r| format!("{} {} {}\n", r.n, r.ell, r.count))
                    .collect();
                write_text(c, &text)?;
            }
        }
        return Ok(EXIT_OK);
    }
    let rows: Vec<FormulaRow> = (from..=to)
        .map(|n| FormulaRow {
            n,
            convex_ham: convex_ham_count(n).ok().map(|v| v.to_string()),
            convex_path: convex_path_count(n).to_string(),
            pseudo_poly: pseudotriangle_poly_count(n).ok().map(|v| v.to_string()),
            pseudo_surround: pseudotriangle_surround_count(n).ok().map(|v| v.to_string()),
        })
        .collect();
    if c.format == Format::Json {
        write_json(c, &rows)?;
        return Ok(EXIT_OK);
    }
    let dash = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
    let text: String = match table {
        None => {
            let mut t = String::from("n convex_ham convex_path pseudo_poly pseudo_surround\n");
            for r in &rows {
                t.push_str(&format!(
                    "{} {} {} {} {}\n",
                    r.n,
                    dash(&r.convex_ham),
                    r.convex_path,
                    dash(&r.pseudo_poly),
                    dash(&r.pseudo_surround)
                ));
            }
            t
        }
        Some(t) => rows
            .iter()
            .map(|r| {
                let v = match t {
                    Table::ConvexHam => dash(&r.convex_ham),
                    Table::ConvexPath => r.convex_path.clone(),
                    Table::PseudoPoly => dash(&r.pseudo_poly),
                    Table::PseudoSurround => dash(&r.pseudo_surround),
                    Table::Avoid010 => unreachable!("handled above"),
                };
                format!("{} {v}\n", r.n)
            })
            .collect(),
    };
    write_text(c, &text)?;
    Ok(EXIT_OK)
}

fn parse_indices(text: &str, s: &PointSet) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| {
            let i: usize = t
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("invalid index {t:?}")))?;
            s.check_index(i)?;
            Ok(i)
        })
        .collect()
}

fn cmd_svg(c: &Common, path: Option<&str>, polygon: Option<&str>) -> CmdResult {
    let s = load(c)?;
    let overlay = match (path, polygon) {
        (Some(p), _) => {
            let v = parse_indices(p, &s)?;
            if !crate::paths::is_noncrossing_path(&s, &v)? {
                eprintln!("warning: overlay is not a non-crossing path");
            }
            Some(Overlay::Path(v))
        }
        (_, Some(p)) => {
            let v = parse_indices(p, &s)?;
            if !is_surrounding_polygon(&s, &v)? {
                eprintln!("warning: overlay is not a surrounding polygon");
            }
            Some(Overlay::Polygon(v))
        }
        _ => None,
    };
    write_text(c, &render(&s, overlay.as_ref()))?;
    Ok(EXIT_OK)
}

fn cmd_fixtures(c: &Common) -> CmdResult {
    let table = fixture_table()?;
    write_json(c, &table)?;
    Ok(EXIT_OK)
}

/// Deterministic counts on growing members of one family until the time budget is spent.
fn sweep(
    family: SweepFamily,
    seconds: f64,
    max_n: Option<usize>,
) -> Result<Vec<SensitivityRow>, Error> {
    let (name, classes, first_n): (&str, [Kind; 2], usize) = match family {
        SweepFamily::Convex => ("convex", [Kind::Paths, Kind::Ham], 2),
        _ => ("pseudotriangle", [Kind::Surround, Kind::Poly], 3),
    };
    let start = Instant::now();
    let deadline = start + Duration::from_secs_f64(seconds.max(0.0));
    let mut rows = Vec::new();
    let mut n = first_n;
    loop {
        if max_n.is_some_and(|m| n > m) || Instant::now() >= deadline {
            break;
        }
        let s = match family {
            SweepFamily::Convex => gen_convex(n)?,
            _ => gen_pseudotriangle(n)?,
        };
        let opts = EnumOptions {
            deadline: Some(deadline),
            ..Default::default()
        };
        let mut any_truncated = false;
        for k in classes {
            let t = Instant::now();
            let o = run_kind(&s, k, &opts, &|_| {})?;
            rows.push(SensitivityRow {
                family: name.into(),
                class: k.class(),
                n,
                count: o.count,
                nodes_visited: o.nodes_visited,
                ratio: if o.count > 0 {
                    o.nodes_visited as f64 / o.count as f64
                } else {
                    0.0
                },
                seconds: t.elapsed().as_secs_f64(),
                completed: !o.truncated,
            });
            if o.truncated {
                any_truncated = true;
                break;
            }
        }
        if any_truncated {
            break;
        }
        n += 1;
    }
    Ok(rows)
}

fn cmd_sensitivity(
    c: &Common,
    family: SweepFamily,
    seconds: f64,
    max_n: Option<usize>,
) -> CmdResult {
    if !(seconds.is_finite() && seconds >= 0.0) {
        return Err(Failure::Usage(
            "--seconds must be a nonnegative number".into(),
        ));
    }
    let families: Vec<SweepFamily> = match family {
        SweepFamily::Both => vec![SweepFamily::Convex, SweepFamily::Pseudotriangle],
        f => vec![f],
    };
    let results: Vec<Result<Vec<SensitivityRow>, Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = families
            .iter()
            .map(|&f| scope.spawn(move || sweep(f, seconds, max_n)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep thread panicked"))
            .collect()
    });
    let mut report = SensitivityReport {
        seconds_per_family: seconds,
        rows: Vec::new(),
    };
    for r in results {
        report.rows.extend(r?);
    }
    match c.format {
        Format::Json => write_json(c, &report)?,
        _ => {
            let mut text = String::from("family class n count nodes nodes/count seconds status\n");
            for r in &report.rows {
                text.push_str(&format!(
                    "{} {} {} {} {} {:.3} {:.3} {}\n",
                    r.family,
                    r.class.name(),
                    r.n,
                    r.count,
                    r.nodes_visited,
                    r.ratio,
                    r.seconds,
                    if r.completed { "complete" } else { "timeout" }
                ));
            }
            write_text(c, &text)?;
        }
    }
    Ok(EXIT_OK)
}
