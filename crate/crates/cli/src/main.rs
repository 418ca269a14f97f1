use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cdscope::corpus::{run_corpus, CorpusSpec, DEFAULT_ORDER_BUDGET};
use cdscope::document::AnalysisDocument;
use cdscope::dot::{render_dot, render_lattice_json, Annotate};
use cdscope::verify::{Status, TheoremId};
use cdscope_core::analysis::CdContext;
use cdscope_core::expr::build;
use cdscope_core::{Error, Limits};

#[derive(Parser)]
#[command(
    name = "cdscope",
    version,
    about = "Chermak-Delgado lattices of small finite groups"
)]
struct Cli {
    /// Largest group order any command will construct.
    #[arg(long, global = true, default_value_t = 2000)]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DocFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnnotateArg {
    Measure,
    Fiber,
}

#[derive(Subcommand)]
enum Command {
    /// Measure table, CD lattice, flags and witnesses for one group.
    Analyze {
        expr: String,
        #[arg(long, value_enum, default_value_t = DocFormat::Table)]
        format: DocFormat,
    },
    /// Hasse diagram of the subgroup lattice.
    Lattice {
        expr: String,
        #[arg(long, value_enum, default_value_t = LatticeFormat::Dot)]
        format: LatticeFormat,
        #[arg(long, value_enum, default_value_t = AnnotateArg::Measure)]
        annotate: AnnotateArg,
    },
    /// Run one verifier over a corpus (the bundled one by default).
    Verify {
        theorem: TheoremId,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Run every verifier over a corpus file and write the aggregate JSON.
    Corpus {
        path: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("cdscope: {e}");
    ExitCode::from(Status::of_error(e).exit_code() as u8)
}

/// Writes to stdout. A closed pipe ends output quietly with `code`; any
/// other write failure is reported as a resource error.
fn emit(text: &str, code: ExitCode) -> ExitCode {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => code,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => code,
        Err(e) => {
            eprintln!("cdscope: cannot write output: {e}");
            ExitCode::from(3)
        }
    }
}

fn document(expr: &str, limits: &Limits) -> Result<AnalysisDocument, Error> {
    let group = build(expr, limits)?.into_group();
    let ctx = CdContext::new(&group, limits)?;
    AnalysisDocument::build(&ctx)
}

fn load_corpus(path: Option<&PathBuf>, limits: &Limits) -> Result<CorpusSpec, ExitCode> {
    let spec = match path {
        None => CorpusSpec::default_corpus(),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                eprintln!("cdscope: cannot read {}: {e}", p.display());
                ExitCode::from(2)
            })?;
            CorpusSpec::parse(&text).map_err(|e| fail(&e))?
        }
    };
    spec.check_budget(limits, DEFAULT_ORDER_BUDGET)
        .map_err(|e| fail(&e))?;
    Ok(spec)
}

fn run(cli: Cli) -> ExitCode {
    let limits = Limits::default().with_max_order(cli.max_order);
    match cli.command {
        Command::Analyze { expr, format } => match document(&expr, &limits) {
            Ok(doc) => {
                let text = match format {
                    DocFormat::Table => doc.to_table(),
                    DocFormat::Json => doc.to_json() + "\n",
                };
                emit(&text, ExitCode::SUCCESS)
            }
            Err(e) => fail(&e),
        },
        Command::Lattice {
            expr,
            format,
            annotate,
        } => match document(&expr, &limits) {
            Ok(doc) => {
                let text = match format {
                    LatticeFormat::Dot => render_dot(
                        &doc,
                        match annotate {
                            AnnotateArg::Measure => Annotate::Measure,
                            AnnotateArg::Fiber => Annotate::Fiber,
                        },
                    ),
                    LatticeFormat::Json => render_lattice_json(&doc) + "\n",
                };
                emit(&text, ExitCode::SUCCESS)
            }
            Err(e) => fail(&e),
        },
        Command::Verify { theorem, corpus } => {
            let spec = match load_corpus(corpus.as_ref(), &limits) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let report = match run_corpus(&spec, &[theorem], &limits, 1) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            let mut text = String::new();
            for g in &report.groups {
                let (label, detail) = match (&g.error, g.results.first()) {
                    (Some(err), _) => (g.status.label(), err.as_str()),
                    (None, Some(o)) => (o.status.label(), o.detail.as_str()),
                    (None, None) => (g.status.label(), ""),
                };
                text.push_str(&format!("{label:<6} {:<16} {detail}\n", g.expr));
            }
            let t = &report.tally;
            text.push_str(&format!(
                "{theorem}: {} groups, {} pass, {} skip, {} fail, {} input errors, {} resource errors\n",
                t.groups, t.theorem_pass, t.theorem_skip, t.fail, t.input_errors, t.resource_errors
            ));
            emit(&text, ExitCode::from(report.worst().exit_code() as u8))
        }
        Command::Corpus { path, jobs, out } => {
            let spec = match load_corpus(Some(&path), &limits) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let report = match run_corpus(&spec, &TheoremId::ALL, &limits, jobs as usize) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            let json = report.to_json();
            let code = ExitCode::from(report.worst().exit_code() as u8);
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, json) {
                        eprintln!("cdscope: cannot write {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                    code
                }
                None => emit(&json, code),
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
