//! Command-line front end. `run` is the whole program; the binary only
//! forwards its exit code.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::extension::{
    enumerate_perfect_extensions, enumerate_s_extensions, intersection_of_s_extensions,
    is_unique_extension, s_extend, s_extension_exists, DEFAULT_ENUMERATION_CAP,
};
use crate::oracle::{self, DEFAULT_PREORDER_CAP};
use crate::problem::{ParseError, Problem};
use crate::relation::{render_machine, render_text, Partition, Relation, TotalPreorder, Universe};
use crate::sigma;
use crate::verify::{self, CaseFailure, SweepSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

/// Reproducer files written per verify run, at most.
const MAX_REPRODUCERS: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "order-extension",
    version,
    about = "Extend partial orders to total preorders with a prescribed indifference partition"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report Σ/Σ* membership, maximality, existence and uniqueness.
    Check {
        #[arg(long)]
        file: PathBuf,
    },
    /// Print one extension as ranked blocks, lowest first.
    Extend {
        #[arg(long)]
        file: PathBuf,
        /// Also print the intersection of all extensions.
        #[arg(long)]
        show_intersection: bool,
    },
    /// List every extension in canonical order.
    Enumerate {
        #[arg(long)]
        file: PathBuf,
    },
    /// Intersect all extensions and compare with the closed formula.
    Intersect {
        #[arg(long)]
        file: PathBuf,
    },
    /// Exhaustive sweep against the brute-force oracle.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Where reproducer files go when a check fails.
        #[arg(long, default_value = ".")]
        reproducer_dir: PathBuf,
    },
}

/// Failure of a command, already classified by exit code.
#[derive(Debug)]
enum Failure {
    Parse(ParseError),
    Io(String),
    Domain(Error),
    /// A domain-level negative, already rendered with labels.
    Negative {
        kind: &'static str,
        message: String,
    },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) | Failure::Io(_) => EXIT_INPUT,
            Failure::Negative { .. } => EXIT_NEGATIVE,
            Failure::Domain(e) => match e {
                Error::Capacity { .. } | Error::UniverseTooLarge { .. } => EXIT_CAPACITY,
                Error::NoExtension { .. } | Error::ForcedPairComparable(..) => EXIT_NEGATIVE,
                _ => EXIT_INPUT,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse",
            Failure::Io(_) => "io",
            Failure::Negative { kind, .. } => kind,
            Failure::Domain(e) => match e {
                Error::Capacity { .. } | Error::UniverseTooLarge { .. } => "capacity",
                Error::NoExtension { .. } => "no_extension",
                Error::ForcedPairComparable(..) => "forced_pair",
                _ => "input",
            },
        }
    }
}

struct Ctx<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        out,
    };
    let result = match &cli.command {
        Command::Check { file } => load(file).and_then(|(u, p)| cmd_check(&mut ctx, &u, &p)),
        Command::Extend {
            file,
            show_intersection,
        } => load(file).and_then(|(u, p)| cmd_extend(&mut ctx, &u, &p, *show_intersection)),
        Command::Enumerate { file } => {
            load(file).and_then(|(u, p)| cmd_enumerate(&mut ctx, &u, &p))
        }
        Command::Intersect { file } => {
            load(file).and_then(|(u, p)| cmd_intersect(&mut ctx, &u, &p))
        }
        Command::Verify {
            max_n,
            reproducer_dir,
        } => cmd_verify(&mut ctx, *max_n, reproducer_dir),
    };
    match result {
        Ok(code) => code,
        Err(f) => report_failure(&mut ctx, err, &f),
    }
}

fn report_failure(ctx: &mut Ctx<'_>, err: &mut dyn Write, f: &Failure) -> i32 {
    let code = f.code();
    let message = match f {
        Failure::Parse(e) => e.to_string(),
        Failure::Io(m) => m.clone(),
        Failure::Domain(e) => e.to_string(),
        Failure::Negative { message, .. } => message.clone(),
    };
    let _ = writeln!(err, "error: {message}");
    if ctx.format == Format::Machine {
        let mut rec = format!("record=error kind={} exit={code}", f.kind());
        if let Failure::Parse(e) = f {
            if let Some(line) = e.line {
                rec.push_str(&format!(" line={line}"));
            }
            rec.push_str(&format!(" field={}", e.field));
        }
        ctx.line(rec);
    }
    code
}

fn load(path: &Path) -> Result<(Universe, Problem), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let problem = Problem::parse(&text)?;
    Ok((problem.universe.clone(), problem))
}

/// Rewrites index-based domain errors with the problem's labels.
fn labelled(u: &Universe, e: Error) -> Failure {
    match e {
        Error::NoExtension { certificate } => Failure::Negative {
            kind: "no_extension",
            message: format!("no extension exists; cycle {}", cycle_text(u, &certificate)),
        },
        Error::ForcedPairComparable(a, b) => Failure::Negative {
            kind: "forced_pair",
            message: format!(
                "forced pair {}<{} is already decided by the closed order",
                u.label(a),
                u.label(b)
            ),
        },
        other => Failure::Domain(other),
    }
}

fn require_partition(p: &Problem) -> Result<&Partition, Failure> {
    p.partition.as_ref().ok_or_else(|| {
        Failure::Parse(ParseError {
            line: None,
            field: "partition",
            message: "this command needs a partition line".into(),
        })
    })
}

fn labels(u: &Universe, idx: &[usize], sep: &str) -> String {
    idx.iter()
        .map(|&i| u.label(i))
        .collect::<Vec<_>>()
        .join(sep)
}

fn blocks_text(u: &Universe, blocks: &[Vec<usize>]) -> String {
    let inner: Vec<String> = blocks
        .iter()
        .map(|b| format!("{{{}}}", labels(u, b, ",")))
        .collect();
    format!("[{}]", inner.join(","))
}

fn blocks_machine(u: &Universe, blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| labels(u, b, ","))
        .collect::<Vec<_>>()
        .join("|")
}

fn cycle_text(u: &Universe, cycle: &[usize]) -> String {
    let mut s = labels(u, cycle, " -> ");
    if let Some(&first) = cycle.first() {
        s.push_str(" -> ");
        s.push_str(u.label(first));
    }
    s
}

fn chain_blocks(rel: &Relation) -> Vec<Vec<usize>> {
    let t = TotalPreorder::from_relation(rel.clone()).expect("perfect orders are total preorders");
    t.ranked_blocks()
}

fn emit_blocks(
    ctx: &mut Ctx<'_>,
    u: &Universe,
    record: &str,
    index: Option<usize>,
    blocks: &[Vec<usize>],
) {
    match (ctx.format, index) {
        (Format::Text, None) => ctx.line(format!("blocks: {}", blocks_text(u, blocks))),
        (Format::Text, Some(i)) => ctx.line(format!("{i}: {}", blocks_text(u, blocks))),
        (Format::Machine, None) => ctx.line(format!(
            "record={record} blocks={}",
            blocks_machine(u, blocks)
        )),
        (Format::Machine, Some(i)) => ctx.line(format!(
            "record={record} index={i} blocks={}",
            blocks_machine(u, blocks)
        )),
    }
}

fn emit_certificate(ctx: &mut Ctx<'_>, u: &Universe, cycle: &[usize]) {
    match ctx.format {
        Format::Text => ctx.line(format!("certificate: {}", cycle_text(u, cycle))),
        Format::Machine => ctx.line(format!(
            "record=certificate cycle={}",
            labels(u, cycle, ",")
        )),
    }
}

fn emit_relation(ctx: &mut Ctx<'_>, u: &Universe, name: &str, rel: &Relation) {
    match ctx.format {
        Format::Text => ctx.line(format!("{name}: {}", render_text(u, rel))),
        Format::Machine => ctx.line(format!("record={name} {}", render_machine(u, rel))),
    }
}

fn cmd_check(ctx: &mut Ctx<'_>, u: &Universe, prob: &Problem) -> Result<i32, Failure> {
    let s = require_partition(prob)?;
    let p = &prob.order;
    let m = sigma::membership(p, s)?;
    let report = s_extension_exists(p, s)?;
    let uniq = is_unique_extension(p, s)?;
    let fields: [(&str, String); 7] = [
        ("exists", report.exists.to_string()),
        ("in_sigma", m.in_sigma.to_string()),
        ("in_sigma_star", m.in_sigma_star.to_string()),
        ("maximal_in_sigma", m.maximal_in_sigma.to_string()),
        ("maximal_in_sigma_star", m.maximal_in_sigma_star.to_string()),
        ("unique", uniq.unique().to_string()),
        (
            "uniqueness_failure",
            uniq.failure().map_or("none", |f| f.as_str()).to_string(),
        ),
    ];
    match ctx.format {
        Format::Text => {
            for (k, v) in &fields {
                ctx.line(format!("{k}: {v}"));
            }
            if let Some(c) = &report.certificate {
                ctx.line(format!("certificate: {}", cycle_text(u, c)));
            }
        }
        Format::Machine => {
            let mut rec = String::from("record=check");
            for (k, v) in &fields {
                rec.push_str(&format!(" {k}={v}"));
            }
            if let Some(c) = &report.certificate {
                rec.push_str(&format!(" certificate={}", labels(u, c, ",")));
            }
            ctx.line(rec);
        }
    }
    Ok(if report.exists {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn cmd_extend(
    ctx: &mut Ctx<'_>,
    u: &Universe,
    prob: &Problem,
    show_intersection: bool,
) -> Result<i32, Failure> {
    let n = u.len();
    let s = match &prob.partition {
        Some(s) => s.clone(),
        None => Partition::discrete(n)?,
    };
    let t = match s_extend(&prob.order, &s, prob.forced) {
        Ok(t) => t,
        Err(e) => {
            if let Error::NoExtension { certificate } = &e {
                emit_certificate(ctx, u, certificate);
            }
            return Err(labelled(u, e));
        }
    };
    emit_blocks(ctx, u, "extension", None, &t.ranked_blocks());
    if show_intersection {
        let meet = intersection_of_s_extensions(&prob.order, &s)?;
        emit_relation(ctx, u, "intersection", &meet);
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(ctx: &mut Ctx<'_>, u: &Universe, prob: &Problem) -> Result<i32, Failure> {
    let listing: Vec<Vec<Vec<usize>>> = match &prob.partition {
        Some(s) => {
            let report = s_extension_exists(&prob.order, s)?;
            if let Some(c) = &report.certificate {
                emit_certificate(ctx, u, c);
                return Err(labelled(
                    u,
                    Error::NoExtension {
                        certificate: c.clone(),
                    },
                ));
            }
            enumerate_s_extensions(&prob.order, s, DEFAULT_ENUMERATION_CAP)?
                .iter()
                .map(TotalPreorder::ranked_blocks)
                .collect()
        }
        None => {
            let mut chains: Vec<Vec<Vec<usize>>> =
                enumerate_perfect_extensions(&prob.order, DEFAULT_ENUMERATION_CAP)?
                    .iter()
                    .map(chain_blocks)
                    .collect();
            chains.sort();
            chains
        }
    };
    for (i, blocks) in listing.iter().enumerate() {
        emit_blocks(ctx, u, "extension", Some(i + 1), blocks);
    }
    match ctx.format {
        Format::Text => ctx.line(format!("count: {}", listing.len())),
        Format::Machine => ctx.line(format!("record=summary count={}", listing.len())),
    }
    Ok(EXIT_OK)
}

fn cmd_intersect(ctx: &mut Ctx<'_>, u: &Universe, prob: &Problem) -> Result<i32, Failure> {
    let p = &prob.order;
    let (count, meet, expected) = match &prob.partition {
        Some(s) => {
            let report = s_extension_exists(p, s)?;
            if let Some(c) = &report.certificate {
                emit_certificate(ctx, u, c);
                return Err(labelled(
                    u,
                    Error::NoExtension {
                        certificate: c.clone(),
                    },
                ));
            }
            let all = oracle::enumerate_total_preorders(u.len(), DEFAULT_PREORDER_CAP)?;
            let exts = oracle::filter_s_extensions(p, s, &all);
            let meet = oracle::oracle_intersection(&exts)?;
            (exts.len(), meet, intersection_of_s_extensions(p, s)?)
        }
        None => {
            let chains = enumerate_perfect_extensions(p, DEFAULT_ENUMERATION_CAP)?;
            let mut meet = Relation::full(u.len())?;
            for c in &chains {
                meet = meet.intersect(c)?;
            }
            (chains.len(), meet, p.relation().clone())
        }
    };
    let verdict = if meet == expected { "PASS" } else { "FAIL" };
    match ctx.format {
        Format::Text => {
            ctx.line(format!("extensions: {count}"));
            ctx.line(format!("intersection: {}", render_text(u, &meet)));
            ctx.line(format!("formula: {verdict}"));
        }
        Format::Machine => ctx.line(format!(
            "record=intersection extensions={count} {} formula={verdict}",
            render_machine(u, &meet)
        )),
    }
    Ok(if meet == expected {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn cmd_verify(ctx: &mut Ctx<'_>, max_n: usize, dir: &Path) -> Result<i32, Failure> {
    let summary = verify::run_sweep(max_n)?;
    for level in &summary.levels {
        match ctx.format {
            Format::Text if level.partitions == 0 => ctx.line(format!(
                "n={}: {} partial orders (order suites only), {} checks, {} failures",
                level.n, level.partial_orders, level.checks, level.failures
            )),
            Format::Text => ctx.line(format!(
                "n={}: {} partial orders x {} partitions = {} cases, {} checks, {} failures",
                level.n,
                level.partial_orders,
                level.partitions,
                level.cases,
                level.checks,
                level.failures
            )),
            Format::Machine => ctx.line(format!(
                "record=level n={} partial_orders={} partitions={} cases={} checks={} failures={}",
                level.n,
                level.partial_orders,
                level.partitions,
                level.cases,
                level.checks,
                level.failures
            )),
        }
    }
    let written = if summary.passed() {
        Vec::new()
    } else {
        write_reproducers(dir, &summary)?
    };
    for path in &written {
        match ctx.format {
            Format::Text => ctx.line(format!("reproducer: {}", path.display())),
            Format::Machine => ctx.line(format!("record=reproducer path={}", path.display())),
        }
    }
    let status = if summary.passed() { "PASS" } else { "FAIL" };
    match ctx.format {
        Format::Text => ctx.line(format!(
            "total: {} cases, {} failures: {status}",
            summary.total_cases(),
            summary.failures.len()
        )),
        Format::Machine => ctx.line(format!(
            "record=summary cases={} failures={} status={status}",
            summary.total_cases(),
            summary.failures.len()
        )),
    }
    Ok(if summary.passed() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

/// Serialises a failing case as a problem file, with the check and its
/// detail in comments.
pub fn reproducer_text(f: &CaseFailure) -> String {
    let n = f.order.size();
    let universe = Universe::standard(n).expect("sweep sizes are small");
    let problem = Problem {
        universe,
        order: f.order.clone(),
        partition: f.partition.clone(),
        forced: f.forced,
    };
    let mut text = format!("# check: {}\n", f.check);
    for line in f.detail.lines() {
        text.push_str(&format!("# detail: {line}\n"));
    }
    text.push_str(&problem.to_file().to_text());
    text
}

fn write_reproducers(dir: &Path, summary: &SweepSummary) -> Result<Vec<PathBuf>, Failure> {
    fs::create_dir_all(dir)
        .map_err(|e| Failure::Io(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (k, f) in summary.failures.iter().take(MAX_REPRODUCERS).enumerate() {
        let path = dir.join(format!("reproducer-{:02}-{}.txt", k + 1, f.check));
        fs::write(&path, reproducer_text(f))
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}
