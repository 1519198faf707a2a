//! The `eigenframe` command line.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 unsupported input,
//! 3 internal assertion failure.

mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::color::{uvc_with, ColoringReport};
use crate::error::Error;
use crate::exact::{Scalar, DEFAULT_TOLERANCE};
use crate::framework::{congruent, least_eigenvalue_framework, BackendChoice, FrameworkReport};
use crate::graph::{emit_graph6, Graph};
use crate::survey::{survey_report, write_csv, write_json, write_table};
use crate::uc::{dominated_frameworks, gershgorin_scale, is_universally_completable, xspace, UcReport};

pub use input::{parse_cayley, parse_generator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "eigenframe", version, about = "Least-eigenvalue frameworks, universal completability and vector colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide universal completability of least-eigenvalue frameworks.
    CheckUc(GraphArgs),
    /// Survey connected Cayley graphs on Z_2^n.
    Survey(SurveyArgs),
    /// Optimal vector coloring and unique vector colorability of 1-walk-regular graphs.
    Vc(GraphArgs),
    /// A framework dominated by the least-eigenvalue framework.
    Dominated(DominatedArgs),
    /// Write graphs as graph6.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
#[group(id = "input", required = true, multiple = false)]
struct InputArgs {
    /// Generator `name:args`: cycle:N, complete:N, petersen, kneser:N,R, qkneser:Q,N,R, cayley:N:BITS,...
    #[arg(long = "gen", group = "input")]
    generator: Option<String>,
    /// Inline graph6 string.
    #[arg(long, group = "input")]
    graph6: Option<String>,
    /// File with one graph6 string per line.
    #[arg(long, group = "input")]
    graph6_file: Option<PathBuf>,
    /// Cayley graph on Z_2^n as `n:bits,...`, bits most significant first.
    #[arg(long, group = "input")]
    cayley: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Auto,
    Exact,
    Floating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value = "auto")]
    backend: BackendArg,
    /// Eigenvalue clustering tolerance for the floating backend.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "EIGENFRAME_WORKERS")]
    workers: Option<usize>,
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SurveyArgs {
    /// Exponents to survey, e.g. `--n 4` or `--n 1,2,3,4`.
    #[arg(long = "n", required = true, value_delimiter = ',')]
    n: Vec<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct DominatedArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    common: Common,
    /// Which basis element of the X-space to use.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Scale `c` as `num/den` or a float; defaults to the Gershgorin bound.
    #[arg(long)]
    scale: Option<String>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) | Error::Parse { .. } => EXIT_IO,
            Error::InvalidArgument(_) | Error::Unsupported(_) | Error::OutOfRange(_) | Error::Resource(_) => {
                EXIT_UNSUPPORTED
            }
            Error::Internal(_) | Error::Numerical { .. } => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_IO, message: message.into() }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_IO } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> std::result::Result<(), Failure> {
    match cmd {
        Command::CheckUc(a) => check_uc(a, stdout, stderr),
        Command::Survey(a) => survey(a, stdout, stderr),
        Command::Vc(a) => vc(a, stdout, stderr),
        Command::Dominated(a) => dominated(a, stdout, stderr),
        Command::Gen(a) => gen(a, stdout),
    }
}

fn read_graphs(a: &InputArgs) -> std::result::Result<Vec<Graph>, Failure> {
    let graphs = if let Some(spec) = &a.generator {
        vec![parse_generator(spec).map_err(|e| usage(e.to_string()))?]
    } else if let Some(s) = &a.graph6 {
        vec![crate::graph::parse_graph6(s.trim()).map_err(|e| usage(e.to_string()))?]
    } else if let Some(path) = &a.graph6_file {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        crate::graph::parse_graph6_lines(&text).map_err(|e| usage(e.to_string()))?
    } else if let Some(spec) = &a.cayley {
        vec![parse_cayley(spec).map_err(|e| usage(e.to_string()))?]
    } else {
        unreachable!("clap requires one input")
    };
    if graphs.is_empty() {
        return Err(usage("no graphs read"));
    }
    Ok(graphs)
}

impl Common {
    fn choice(&self) -> std::result::Result<(BackendChoice, f64), Failure> {
        if !(self.tol > 0.0) {
            return Err(usage("--tol must be positive"));
        }
        let choice = match self.backend {
            BackendArg::Auto => BackendChoice::Auto,
            BackendArg::Exact => BackendChoice::Exact,
            BackendArg::Floating => BackendChoice::Floating,
        };
        Ok((choice, self.tol))
    }

    fn workers(&self) -> usize {
        self.workers
            .filter(|&w| w > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

/// Writes to `--out` when given, else to stdout.
fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, bytes: &[u8]) -> std::result::Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => stdout.write_all(bytes).map_err(|e| Failure::from(Error::Io(e))),
    }
}

fn to_json<T: Serialize>(v: &T) -> std::result::Result<Vec<u8>, Failure> {
    let mut buf = serde_json::to_vec_pretty(v).map_err(|e| Failure::from(Error::Internal(e.to_string())))?;
    buf.push(b'\n');
    Ok(buf)
}

fn warn_fallback(stderr: &mut dyn Write, choice: BackendChoice, backend_exact: bool, g: &Graph) {
    if choice == BackendChoice::Auto && !backend_exact {
        let _ = writeln!(
            stderr,
            "warning: {}: least eigenvalue is not a certified integer; using the floating backend",
            emit_graph6(g)
        );
    }
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> std::result::Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Failure::from(Error::Internal(e.to_string()));
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.write_record(r).map_err(fail)?;
    }
    w.into_inner().map_err(|e| Failure::from(Error::Internal(e.to_string())))
}

fn table_bytes(header: &[&str], rows: &[Vec<String>]) -> Vec<u8> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out.into_bytes()
}

fn check_uc(a: GraphArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> std::result::Result<(), Failure> {
    let graphs = read_graphs(&a.input)?;
    let (choice, tol) = a.common.choice()?;
    let mut reports = Vec::new();
    for g in &graphs {
        let r = is_universally_completable(g, choice, tol)?;
        warn_fallback(stderr, choice, r.spectrum.backend.is_exact(), g);
        reports.push(UcReport::new(g, &r)?);
    }
    let header =
        ["graph6", "tau", "tau_mult", "x_dim", "verdict", "neighborhood", "clique", "split", "backend", "margin"];
    let rows = || {
        reports
            .iter()
            .map(|r| {
                vec![
                    r.graph6.clone(),
                    r.tau.to_string(),
                    r.tau_mult.to_string(),
                    r.x_dim.to_string(),
                    r.verdict.to_string(),
                    r.conditions.neighborhood.to_string(),
                    r.conditions.clique.to_string(),
                    r.conditions.split.to_string(),
                    r.backend.clone(),
                    r.margin.as_ref().map_or_else(String::new, Scalar::to_string),
                ]
            })
            .collect::<Vec<_>>()
    };
    let bytes = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&reports)?,
        Format::Csv => csv_bytes(&header, &rows())?,
        Format::Table => table_bytes(&header, &rows()),
    };
    emit(&a.common.out, stdout, &bytes)
}

fn survey(a: SurveyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> std::result::Result<(), Failure> {
    let report = survey_report(&a.n, a.common.workers())?;
    for s in &report.summary {
        let _ = writeln!(stderr, "n = {}: {} connected, {} UC", s.n, s.connected, s.uc);
    }
    let mut buf = Vec::new();
    match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => write_csv(&report, &mut buf)?,
        Format::Json => write_json(&report, &mut buf)?,
        Format::Table => write_table(&report, &mut buf)?,
    }
    emit(&a.common.out, stdout, &buf)
}

fn vc(a: GraphArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> std::result::Result<(), Failure> {
    let graphs = read_graphs(&a.input)?;
    let (choice, tol) = a.common.choice()?;
    let mut reports = Vec::new();
    for g in &graphs {
        let r = uvc_with(g, choice, tol)?;
        warn_fallback(stderr, choice, r.coloring.gram.is_exact(), g);
        reports.push(ColoringReport::new(g, &r));
    }
    let header = ["graph6", "t", "strict", "uvc", "x_dim", "gram_digest", "second_gram_digest"];
    let rows = || {
        reports
            .iter()
            .map(|r| {
                vec![
                    r.graph6.clone(),
                    r.t.to_string(),
                    r.strict.to_string(),
                    r.uvc.to_string(),
                    r.x_dim.map_or_else(String::new, |d| d.to_string()),
                    r.gram_digest.clone(),
                    r.second_coloring.as_ref().map_or_else(String::new, |s| s.gram_digest.clone()),
                ]
            })
            .collect::<Vec<_>>()
    };
    let bytes = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&reports)?,
        Format::Csv => csv_bytes(&header, &rows())?,
        Format::Table => table_bytes(&header, &rows()),
    };
    emit(&a.common.out, stdout, &bytes)
}

#[derive(Serialize)]
struct DominatedReport {
    graph6: String,
    x_dim: usize,
    index: Option<usize>,
    scale: Option<Scalar>,
    congruent: bool,
    least_eigenvalue_framework: FrameworkReport,
    dominated: FrameworkReport,
}

fn dominated(a: DominatedArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> std::result::Result<(), Failure> {
    let graphs = read_graphs(&a.input)?;
    let (choice, tol) = a.common.choice()?;
    if !matches!(a.common.format, None | Some(Format::Json)) {
        return Err(Error::Unsupported("dominated writes JSON only".into()).into());
    }
    let mut reports = Vec::new();
    for g in &graphs {
        let fw = least_eigenvalue_framework(g, choice, tol)?;
        let spectrum = fw.spectrum().expect("spectrum").clone();
        warn_fallback(stderr, choice, spectrum.backend.is_exact(), g);
        let xs = xspace(g, &spectrum)?;
        let (q, index, scale) = if xs.dim() == 0 {
            (fw.clone(), None, None)
        } else {
            let x = xs.basis.get(a.index).ok_or_else(|| {
                Failure::from(Error::OutOfRange(format!("--index {} but the X-space has dimension {}", a.index, xs.dim())))
            })?;
            let c = match &a.scale {
                Some(s) => Some(input::parse_scalar(s).map_err(|e| usage(e.to_string()))?),
                None => gershgorin_scale(x),
            };
            (dominated_frameworks(&fw, x, c.clone())?, Some(a.index), c)
        };
        reports.push(DominatedReport {
            graph6: emit_graph6(g),
            x_dim: xs.dim(),
            index,
            scale,
            congruent: congruent(&fw, &q)?,
            least_eigenvalue_framework: fw.report(),
            dominated: q.report(),
        });
    }
    emit(&a.common.out, stdout, &to_json(&reports)?)
}

fn gen(a: GenArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let graphs = read_graphs(&a.input)?;
    let mut text = String::new();
    for g in &graphs {
        text.push_str(&emit_graph6(g));
        text.push('\n');
    }
    emit(&a.out, stdout, text.as_bytes())
}
