//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (a JSON object
//! `{"error": name, "message": text}` goes to standard error), 2 on a usage
//! error. Output is human-readable unless `--json` is given; `--json PATH`
//! writes the JSON to a file instead of standard output.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::decompose::{decompose_with, SplitStrategy};
use crate::enumerate::{default_workers, enumerate_split_models_with_workers, Enumeration};
use crate::error::Error;
use crate::exactmath::{Poly, PrimeSet};
use crate::fiberprod::{fiber_genus, FiberGenusReport};
use crate::hypermodel::{
    good_reduction_outside, reduction_bijection_check, weierstrass_points, PointedModel,
    ReductionReport, WeierstrassData,
};

#[derive(Debug, Parser)]
#[command(name = "shafdec", version, about = "Exact tools for pointed hyperelliptic models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Emit JSON, to PATH if given, else to standard output.
    #[arg(long, value_name = "PATH", num_args = 0..=1, conflicts_with = "pretty")]
    pub json: Option<Option<PathBuf>>,
    /// Human-readable output (the default).
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discriminant, reduction verdict and Weierstrass points of a model.
    Analyze {
        /// Model JSON file, or `-` for standard input.
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_parser = parse_primes)]
        primes: PrimeSet,
        #[command(flatten)]
        output: Output,
    },
    /// Recursive reversal/splitting into genus-1 pieces.
    Decompose {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_parser = parse_primes)]
        primes: PrimeSet,
        #[arg(long, default_value = "sorted-first-three", value_parser = parse_strategy)]
        strategy: SplitStrategy,
        #[command(flatten)]
        output: Output,
    },
    /// Genus of the fiber product of y^2 = R1 and y^2 = R2.
    FiberGenus {
        /// R1 as an ascending JSON array, or a file holding one.
        r1: String,
        /// R2 as an ascending JSON array, or a file holding one.
        r2: String,
        #[command(flatten)]
        output: Output,
    },
    /// Bounded enumeration of split model classes.
    Enumerate {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_parser = parse_primes)]
        primes: PrimeSet,
        #[arg(long)]
        bound: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Whether reduction mod p is a bijection on Weierstrass points.
    Reduce {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_primes(s: &str) -> Result<PrimeSet, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<SplitStrategy, String> {
    s.parse().map_err(|_| format!("unknown strategy {s:?}; use sorted-first-three or exhaustive"))
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read_input(path: &Path, flag: &str) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("{flag}: cannot read standard input: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{flag}: cannot read {}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<PointedModel, Failure> {
    Ok(PointedModel::from_json(&read_input(path, "--model")?)?)
}

fn load_poly(arg: &str, name: &str) -> Result<Poly, Failure> {
    if arg.trim_start().starts_with('[') {
        return Ok(Poly::from_json(arg)?);
    }
    Ok(Poly::from_json(&read_input(Path::new(arg), name)?)?)
}

#[derive(Serialize)]
struct AnalyzeReport {
    model: PointedModel,
    primes: PrimeSet,
    reduction: ReductionReport,
    weierstrass: WeierstrassData,
}

#[derive(Serialize)]
struct ReduceReport {
    model: PointedModel,
    prime: u64,
    bijection: bool,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn render_reduction(out: &mut String, r: &ReductionReport) {
    let _ = writeln!(out, "discriminant: {}", r.discriminant);
    let mut s_part: Vec<String> = r
        .s_part
        .exponents
        .iter()
        .map(|(p, e)| format!("{p}^{e}"))
        .collect();
    if s_part.is_empty() {
        s_part.push("1".into());
    }
    let sign = if r.s_part.unit_sign < 0 { "-" } else { "" };
    let _ = writeln!(out, "S-part: {sign}{}", s_part.join(" * "));
    if r.good_outside_s {
        let _ = writeln!(out, "good reduction outside S ({})", r.scope);
    } else {
        let _ = writeln!(out, "bad primes outside S: {} ({})", join(&r.bad_primes), r.scope);
    }
}

fn render_analyze(a: &AnalyzeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model: {}", a.model);
    let _ = writeln!(out, "S: {}", a.primes);
    render_reduction(&mut out, &a.reduction);
    let w = &a.weierstrass;
    let roots: Vec<String> = w
        .finite_roots
        .iter()
        .map(|r| if r.multiplicity == 1 { r.root.to_string() } else { format!("{}^{}", r.root, r.multiplicity) })
        .collect();
    let _ = writeln!(out, "rational Weierstrass points: {}", if roots.is_empty() { "none".into() } else { roots.join(", ") });
    if !w.nonrational_degree_profile.is_empty() {
        let _ = writeln!(out, "non-rational part of degree {}", join(&w.nonrational_degree_profile));
    }
    let _ = writeln!(out, "point at infinity: {}", if w.includes_infinity { "yes" } else { "no" });
    let _ = writeln!(out, "total: {}", w.total);
    out
}

fn render_fiber(r: &FiberGenusReport) -> String {
    let b = &r.branch_points;
    let mut out = String::new();
    let _ = writeln!(out, "g1 = {}, g2 = {}, g12 = {}", r.g1, r.g2, r.g12);
    let _ = writeln!(
        out,
        "branch points: {} ({} rational, {} non-rational, infinity {})",
        b.total,
        b.finite_rational,
        b.finite_nonrational,
        if b.infinity_in_r1 || b.infinity_in_r2 { "branched" } else { "unbranched" }
    );
    let _ = writeln!(out, "genus of fiber product: {} (additive route {})", r.g3, r.g3_additive);
    let _ = writeln!(out, "quotient y^2 = {}", r.quotient_model);
    out
}

fn render_enumeration(e: &Enumeration) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "genus {}, S = {}, bound {}: {} {}",
        e.genus,
        e.primes,
        e.bound,
        e.classes.len(),
        e.label
    );
    for (i, c) in e.classes.iter().enumerate() {
        let _ = writeln!(out, "[{}] signature ({})", i + 1, join(&c.class.signature));
        let _ = writeln!(out, "    roots {}", join(&c.roots));
        let _ = writeln!(out, "    discriminant {}", c.report.discriminant);
    }
    out
}

fn emit<T: Serialize>(output: &Output, value: &T, pretty: impl FnOnce() -> String, stdout: &mut dyn Write) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::Usage(format!("cannot write output: {e}"));
    match &output.json {
        None => stdout.write_all(pretty().as_bytes()).map_err(io_err),
        Some(target) => {
            let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
            text.push('\n');
            match target {
                None => stdout.write_all(text.as_bytes()).map_err(io_err),
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| Failure::Usage(format!("--json: cannot write {}: {e}", path.display()))),
            }
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Analyze { model, primes, output } => {
            let model = load_model(&model)?;
            primes.require_two()?;
            let report = AnalyzeReport {
                reduction: good_reduction_outside(&model, &primes)?,
                weierstrass: weierstrass_points(&model)?,
                model,
                primes,
            };
            emit(&output, &report, || render_analyze(&report), stdout)
        }
        Command::Decompose { model, primes, strategy, output } => {
            let model = load_model(&model)?;
            primes.require_two()?;
            let tree = decompose_with(&model, &primes, strategy)?;
            emit(&output, &tree, || tree.to_string(), stdout)
        }
        Command::FiberGenus { r1, r2, output } => {
            let r1 = load_poly(&r1, "R1")?;
            let r2 = load_poly(&r2, "R2")?;
            let report = fiber_genus(&r1, &r2)?;
            emit(&output, &report, || render_fiber(&report), stdout)
        }
        Command::Enumerate { genus, primes, bound, output } => {
            let e = enumerate_split_models_with_workers(genus, &primes, bound, default_workers())?;
            emit(&output, &e, || render_enumeration(&e), stdout)
        }
        Command::Reduce { model, prime, output } => {
            let model = load_model(&model)?;
            let bijection = reduction_bijection_check(&model, prime)?;
            let report = ReduceReport { model, prime, bijection };
            emit(
                &output,
                &report,
                || {
                    format!(
                        "reduction mod {prime}: {}\n",
                        if bijection { "bijective on Weierstrass points" } else { "not bijective" }
                    )
                },
                stdout,
            )
        }
    }
}

/// Run the command line `args` (program name first) and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let body = serde_json::json!({ "error": e.name(), "message": e.to_string() });
            let _ = writeln!(stderr, "{body}");
            1
        }
    }
}
