//! Command-line front end. `main.rs` only forwards to [`run`].
//!
//! Results go to stdout as `key=value` lines. The only line that varies
//! between identical runs starts with `nondeterministic.`. Exit codes:
//! 0 success, 1 files differ (`verify`), 2 format error, 3 I/O error,
//! 64 usage error, 70 internal failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::datagen::{generate, CorpusSpec, Distribution};
use crate::error::{Error, Result};
use crate::external::{external_sort, ExternalConfig, DEFAULT_FAN_IN};
use crate::format::{element_count, read_file, write_file};
use crate::metrics::{CurveSpec, DisorderReport};
use crate::parallel::{default_threads, parallel_sort, THREADS_ENV};
use crate::repro::{compare_files, digest_file, Comparison};
use crate::sort::sort_with_trace;
use crate::total_order::Width;

/// Memory budget used when `--memory-budget` is not given (1 GiB).
pub const DEFAULT_MEMORY_BUDGET: usize = 1 << 30;

#[derive(Debug, Parser)]
#[command(
    name = "detsort",
    version,
    about = "Deterministic IEEE-754 total-order sorting"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sort a binary float file (in memory, or external when it exceeds the budget).
    Sort(SortArgs),
    /// Generate a seeded corpus.
    Gen(GenArgs),
    /// Print disorder metrics for a file.
    Metrics(MetricsArgs),
    /// Compare two binary float files element by element.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SortArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// Element width: f32 or f64.
    #[arg(long, value_parser = parse_width)]
    pub width: Width,
    /// Worker threads [default: available parallelism].
    #[arg(long, env = THREADS_ENV)]
    pub threads: Option<usize>,
    /// Run-buffer size in bytes; larger inputs are sorted externally.
    #[arg(long, default_value_t = DEFAULT_MEMORY_BUDGET)]
    pub memory_budget: usize,
    /// Runs merged per external pass.
    #[arg(long, default_value_t = DEFAULT_FAN_IN)]
    pub fan_in: usize,
    /// Directory for spilled runs [default: the output file's directory].
    #[arg(long)]
    pub spill_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, value_parser = parse_width)]
    pub width: Width,
    /// gaussian, uniform, dup:FRAC, special or special:NANS,ZERO_PAIRS,INF_PAIRS
    #[arg(long, default_value = "gaussian", value_parser = parse_dist)]
    pub dist: Distribution,
    /// Number of elements.
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_width)]
    pub width: Width,
    /// Curved disorder to report: unit, d2, log1p or value2. Repeatable.
    #[arg(long = "curve", value_parser = parse_curve)]
    pub curves: Vec<CurveSpec>,
    /// Also print the convergence measure after each bottom-up merge pass.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[arg(long, value_parser = parse_width)]
    pub width: Width,
}

fn parse_width(s: &str) -> std::result::Result<Width, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_dist(s: &str) -> std::result::Result<Distribution, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_curve(s: &str) -> std::result::Result<CurveSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Sort(a) => run_sort(&a, out),
        Command::Gen(a) => run_gen(&a, out),
        Command::Metrics(a) => run_metrics(&a, out),
        Command::Verify(a) => run_verify(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<()> {
    out.write_fmt(text)
        .and_then(|_| out.write_all(b"\n"))
        .map_err(|e| Error::io("<stdout>", e))
}

pub fn run_sort(a: &SortArgs, out: &mut dyn Write) -> Result<i32> {
    let threads = a.threads.unwrap_or_else(default_threads);
    if threads == 0 {
        return Err(Error::usage("--threads must be at least 1"));
    }
    let start = Instant::now();
    let elements = element_count(&a.input, a.width)?;
    let bytes = elements as usize * a.width.bytes();
    let (mode, runs, passes) = if bytes <= a.memory_budget {
        let data = read_file(&a.input, a.width)?;
        let sorted = parallel_sort(&data, threads)?;
        write_file(&a.output, &sorted)?;
        ("in-memory", usize::from(elements > 0), 0)
    } else {
        let spill_dir = a.spill_dir.clone().unwrap_or_else(|| parent_dir(&a.output));
        let cfg = ExternalConfig::new(a.memory_budget, spill_dir)
            .with_fan_in(a.fan_in)
            .with_threads(threads);
        let summary = external_sort(&a.input, &a.output, a.width, &cfg)?;
        ("external", summary.runs, summary.passes)
    };
    let elapsed = start.elapsed();
    let digest = digest_file(&a.output, a.width)?;
    emit(out, format_args!("elements={elements}"))?;
    emit(out, format_args!("mode={mode}"))?;
    emit(out, format_args!("runs={runs}"))?;
    emit(out, format_args!("passes={passes}"))?;
    emit(
        out,
        format_args!(
            "nondeterministic.wall_time_seconds={:.6}",
            elapsed.as_secs_f64()
        ),
    )?;
    emit(out, format_args!("digest={digest}"))?;
    Ok(0)
}

fn parent_dir(p: &Path) -> PathBuf {
    match p.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// Sidecar path recording how a corpus was generated.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".corpus.txt");
    PathBuf::from(s)
}

pub fn run_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = CorpusSpec::new(a.dist, a.count, a.seed, a.width);
    let data = generate(&spec)?;
    write_file(&a.output, &data)?;
    let side = sidecar_path(&a.output);
    std::fs::write(&side, spec.sidecar()).map_err(|e| Error::io(&side, e))?;
    emit(out, format_args!("elements={}", data.len()))?;
    emit(
        out,
        format_args!("digest={}", crate::repro::digest_sequence(&data)),
    )?;
    Ok(0)
}

pub fn run_metrics(a: &MetricsArgs, out: &mut dyn Write) -> Result<i32> {
    let data = read_file(&a.input, a.width)?;
    let report = DisorderReport::compute(&data, &a.curves)?;
    write!(out, "{report}").map_err(|e| Error::io("<stdout>", e))?;
    if a.trace {
        let (_, trace) = sort_with_trace(&data);
        for p in &trace.passes {
            emit(out, format_args!("trace.phi.{}={}", p.pass, p.phi))?;
        }
    }
    Ok(0)
}

pub fn run_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    match compare_files(&a.a, &a.b, a.width)? {
        Comparison::Identical => {
            emit(out, format_args!("IDENTICAL"))?;
            Ok(0)
        }
        Comparison::DifferAt(k) => {
            emit(out, format_args!("DIFFER at element {k}"))?;
            Ok(1)
        }
    }
}
