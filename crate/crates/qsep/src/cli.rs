//! Argument parsing, batch execution and output routing.

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsep_core::criteria::{AnalysisOptions, Criterion, Tolerances};
use serde::Serialize;

use crate::commands::{analyze_file, decompose_file, transform_file, Transform};
use crate::error::CliError;
use crate::report::{DocOptions, ReportDocument, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "qsep", version, about = "Separability analysis of two-particle quantum states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the separability pipeline or criteria suite on each input.
    Analyze {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Comma-separated subset of ppt,det,realign,phc.
        #[arg(long)]
        criteria: Option<String>,
        /// Override every criterion tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Schmidt, Takagi or Slater form of a coefficient matrix.
    Decompose {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply pt, phc, symmetrize or realign (or a comma-separated chain) and
    /// write the resulting matrix as a density_matrix state file.
    Transform {
        path: PathBuf,
        operation: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format; text on a terminal, json otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Include derived matrices in the report.
    #[arg(long)]
    pub emit_matrices: bool,
    /// Report verdicts only.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl OutputArgs {
    fn doc_options(&self) -> DocOptions {
        DocOptions { emit_matrices: self.emit_matrices, quiet: self.quiet }
    }

    fn resolved_format(&self) -> Format {
        self.format.unwrap_or_else(|| {
            if self.output.is_none() && std::io::stdout().is_terminal() {
                Format::Text
            } else {
                Format::Json
            }
        })
    }
}

pub fn parse_criteria(list: &str) -> Result<Vec<Criterion>, CliError> {
    list.split(',')
        .map(|name| {
            Criterion::parse_selectable(name.trim()).ok_or_else(|| {
                CliError::parse("--criteria", format!("unknown criterion `{name}`; expected ppt, det, realign or phc"))
            })
        })
        .collect()
}

fn analysis_options(criteria: Option<&str>, tol: Option<f64>) -> Result<AnalysisOptions, CliError> {
    let mut opts = AnalysisOptions::default();
    if let Some(list) = criteria {
        opts.criteria = Some(parse_criteria(list)?);
    }
    if let Some(t) = tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::parse("--tol", format!("must be a finite nonnegative number, got {t}")));
        }
        opts.tolerances = Tolerances::uniform(t);
    }
    Ok(opts)
}

/// Evaluates `job` for every path concurrently; results keep argument order.
fn run_batch<T: Send>(paths: &[PathBuf], job: impl Fn(&Path) -> Result<T, CliError> + Sync) -> Vec<Result<T, CliError>> {
    if paths.len() == 1 {
        return vec![job(&paths[0])];
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = paths.iter().map(|p| s.spawn(|| job(p))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::Numeric("analysis panicked".into()))))
            .collect()
    })
}

#[derive(Serialize)]
#[serde(untagged)]
enum BatchEntry<'a> {
    Report(&'a ReportDocument),
    Error(ErrorEntry<'a>),
}

#[derive(Serialize)]
struct ErrorEntry<'a> {
    schema: u32,
    path: String,
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    exit_code: u8,
    message: &'a str,
}

fn render(paths: &[PathBuf], results: &[Result<ReportDocument, CliError>], format: Format) -> String {
    let batch = paths.len() > 1;
    match format {
        Format::Json if !batch => match &results[0] {
            Ok(doc) => doc.to_json() + "\n",
            Err(_) => String::new(),
        },
        Format::Json => {
            let entries: Vec<BatchEntry> = paths
                .iter()
                .zip(results)
                .map(|(p, r)| match r {
                    Ok(doc) => BatchEntry::Report(doc),
                    Err(e) => BatchEntry::Error(ErrorEntry {
                        schema: SCHEMA_VERSION,
                        path: p.display().to_string(),
                        error: ErrorBody { exit_code: e.exit_code(), message: e.message() },
                    }),
                })
                .collect();
            crate::json::to_pretty(&entries) + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for (p, r) in paths.iter().zip(results) {
                if batch {
                    out += &format!("== {} ==\n", p.display());
                }
                match r {
                    Ok(doc) => out += &doc.to_text(),
                    Err(e) if batch => out += &format!("error (exit {}): {}\n", e.exit_code(), e),
                    Err(_) => {}
                }
            }
            out
        }
    }
}

fn emit(text: &str, output: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let result = match output {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "qsep: cannot write output: {e}");
            1
        }
    }
}

fn report_errors(paths: &[PathBuf], results: &[Result<ReportDocument, CliError>], stderr: &mut dyn Write) -> u8 {
    let mut code = 0;
    for (p, r) in paths.iter().zip(results) {
        if let Err(e) = r {
            let _ = writeln!(stderr, "qsep: {}: {e}", p.display());
            if code == 0 {
                code = e.exit_code();
            }
        }
    }
    code
}

fn fail(e: &CliError, stderr: &mut dyn Write) -> u8 {
    let _ = writeln!(stderr, "qsep: {e}");
    e.exit_code()
}

fn run_reports(
    paths: &[PathBuf],
    output: &OutputArgs,
    job: impl Fn(&Path) -> Result<ReportDocument, CliError> + Sync,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8 {
    let results = run_batch(paths, job);
    let code = report_errors(paths, &results, stderr);
    let text = render(paths, &results, output.resolved_format());
    let write_code = if text.is_empty() { 0 } else { emit(&text, output.output.as_deref(), stdout, stderr) };
    if code != 0 {
        code
    } else {
        write_code
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return e.exit_code() as u8;
        }
    };
    match cli.command {
        Command::Analyze { paths, criteria, tol, output } => {
            let opts = match analysis_options(criteria.as_deref(), tol) {
                Ok(o) => o,
                Err(e) => return fail(&e, stderr),
            };
            let doc = output.doc_options();
            run_reports(&paths, &output, |p| analyze_file(p, &opts, doc), stdout, stderr)
        }
        Command::Decompose { paths, output } => {
            let doc = output.doc_options();
            run_reports(&paths, &output, |p| decompose_file(p, doc), stdout, stderr)
        }
        Command::Transform { path, operation, output } => {
            let result = Transform::parse_chain(&operation).and_then(|ops| transform_file(&path, &ops));
            match result {
                Ok(spec) => emit(&spec.to_json(), output.as_deref(), stdout, stderr),
                Err(e) => fail(&e, stderr),
            }
        }
    }
}
