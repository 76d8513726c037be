//! Command-line surface: load definition files into a workspace, validate
//! structures, build tensors and matrix quantales, search for equivalence
//! witnesses, and run the property suites.
//!
//! The report goes to standard output (or `--out`); `compute` emits its
//! structure document to `--out` when given, otherwise to standard output
//! with the report diverted to standard error so piped output stays a
//! single parseable document.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qf::error::{Error, Result};
use qf::format::{check_document, parse_document, Document, Workspace};
use qf::lattice::Lattice;
use qf::matrix::{matrix_quantale, Matrix};
use qf::module::free_module;
use qf::morita::{
    corner_quantale, equivalence_evidence, find_full_idempotents, morita_witness_check,
    projective_generator_census,
};
use qf::quantale::{relation_quantale, Quantale};
use qf::report::{Report, Verdict};
use qf::suite;
use qf::tensor::{internal_hom, tensor};

const DEFAULT_BUDGET: usize = 20000;

/// How many module carriers bounded searches sweep per idempotent.
const CARRIER_BUDGET: usize = 4;

#[derive(Parser)]
#[command(
    name = "qf",
    version,
    about = "Finite sup-lattices, quantales, and their modules"
)]
struct Cli {
    /// Definition files loaded into the workspace before the command runs.
    #[arg(long = "defs", global = true, value_name = "FILE")]
    defs: Vec<PathBuf>,

    /// Element budget for constructions (QF_BUDGET overrides the default).
    #[arg(long, global = true, value_name = "N")]
    budget: Option<usize>,

    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Destination file for the primary output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Worker threads for parallel table construction.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every structure declared in a definition file.
    Check { file: PathBuf },
    /// Build a structure and emit it in the interchange format.
    #[command(subcommand)]
    Compute(Compute),
    /// Idempotent scans, witness checks, and equivalence evidence.
    #[command(subcommand)]
    Morita(Morita),
    /// Run a named property suite.
    Suite { name: String },
}

#[derive(Subcommand)]
enum Compute {
    /// Tensor product of two lattices.
    Tensor { left: String, right: String },
    /// Lattice of join-preserving maps between two lattices.
    Hom { source: String, target: String },
    /// Quantale of k-by-k matrices over a quantale.
    Matq { base: String, k: usize },
    /// Corner quantale at an idempotent element.
    Eae { base: String, idempotent: String },
    /// Free module of finite rank over a quantale.
    Free { base: String, k: usize },
    /// Quantale of relations on an n-element set.
    Relq { n: usize },
}

#[derive(Subcommand)]
enum Morita {
    /// Scan the k-by-k matrix quantale over a base for full idempotents.
    FindFullIdempotents { base: String, k: usize },
    /// Run every equivalence check for one idempotent matrix.
    VerifyWitness {
        base: String,
        k: usize,
        /// Matrix name from the workspace, or a literal: id, zero, top,
        /// or Eij with one-based row and column digits.
        matrix: String,
    },
    /// Projective generators over a quantale with their endomorphism
    /// quantales, on carriers up to the given size.
    Census { base: String, carrier_budget: usize },
    /// Census-level evidence for or against equivalence of two quantales.
    CommutativeCheck { left: String, right: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    }
    let budget = match cli.budget {
        Some(b) => b,
        None => match std::env::var("QF_BUDGET") {
            Ok(text) => text
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("QF_BUDGET is not a size: {text}")))?,
            Err(_) => DEFAULT_BUDGET,
        },
    };

    let mut ws = Workspace::new();
    for file in &cli.defs {
        ws.add_document(&parse_document(&read(file)?)?)?;
    }

    let started = Instant::now();
    match &cli.command {
        Command::Check { file } => {
            let doc = parse_document(&read(file)?)?;
            let (_, verdicts) = check_document(&doc)?;
            let mut report = Report::new(format!("check {}", file.display()), budget);
            report.checks = verdicts;
            emit_report(report, &cli, started)
        }
        Command::Compute(kind) => {
            let (doc, report) = compute(kind, &ws, budget)?;
            emit_compute(doc, report, &cli, started)
        }
        Command::Morita(kind) => {
            let report = morita(kind, &ws, budget)?;
            emit_report(report, &cli, started)
        }
        Command::Suite { name } => {
            let report = suite::run_suite(name, budget).inspect_err(|e| {
                if matches!(e, Error::UnknownSuite(_)) {
                    let known: Vec<&str> = suite::SUITES.iter().map(|&(s, _)| s).collect();
                    eprintln!("known suites: {}", known.join(", "));
                }
            })?;
            emit_report(report, &cli, started)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.render_json(),
        Format::Text => report.render_text(),
    }
}

fn emit_report(mut report: Report, cli: &Cli, started: Instant) -> Result<ExitCode> {
    report.wall_ms = started.elapsed().as_millis();
    let rendered = render(&report, cli.format);
    match &cli.out {
        Some(path) => write(path, &rendered)?,
        None => print!("{rendered}"),
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn emit_compute(
    doc: Document,
    mut report: Report,
    cli: &Cli,
    started: Instant,
) -> Result<ExitCode> {
    report.wall_ms = started.elapsed().as_millis();
    let rendered = render(&report, cli.format);
    match &cli.out {
        Some(path) => {
            write(path, &doc.to_json())?;
            print!("{rendered}");
        }
        None => {
            print!("{}", doc.to_json());
            eprint!("{rendered}");
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn lattice_named(ws: &Workspace, name: &str) -> Result<Arc<Lattice>> {
    ws.lattice(name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

fn quantale_named(ws: &Workspace, name: &str) -> Result<Arc<Quantale>> {
    ws.quantale(name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

fn element_named(q: &Quantale, token: &str) -> Result<usize> {
    if let Some(i) = (0..q.n()).find(|&i| q.name(i) == token) {
        return Ok(i);
    }
    token
        .parse::<usize>()
        .ok()
        .filter(|&i| i < q.n())
        .ok_or_else(|| Error::UnknownName(format!("element {token}")))
}

fn compute(kind: &Compute, ws: &Workspace, budget: usize) -> Result<(Document, Report)> {
    let mut doc = Document::default();
    let mut report;
    match kind {
        Compute::Tensor { left, right } => {
            let (l, r) = (lattice_named(ws, left)?, lattice_named(ws, right)?);
            let t = tensor(&l, &r, budget)?;
            report = Report::new(format!("compute tensor {left} {right}"), budget);
            let name = format!("tensor({left},{right})");
            doc.push_lattice(&name, &t.lattice);
            report.checks.push(Verdict::pass_with(
                name,
                format!(
                    "{} elements from factors of {} and {}",
                    t.lattice.n(),
                    l.n(),
                    r.n()
                ),
            ));
        }
        Compute::Hom { source, target } => {
            let (s, t) = (lattice_named(ws, source)?, lattice_named(ws, target)?);
            let hom = internal_hom(&s, &t, budget)?;
            report = Report::new(format!("compute hom {source} {target}"), budget);
            let name = format!("hom({source},{target})");
            doc.push_lattice(&name, &hom.lattice);
            report.checks.push(Verdict::pass_with(
                name,
                format!(
                    "{} maps from {} elements to {}",
                    hom.lattice.n(),
                    s.n(),
                    t.n()
                ),
            ));
        }
        Compute::Matq { base, k } => {
            let q = quantale_named(ws, base)?;
            let mats = matrix_quantale(&q, *k, budget)?;
            report = Report::new(format!("compute matq {base} {k}"), budget);
            let name = format!("Mat{k}({base})");
            doc.push_quantale(&name, &mats.quantale);
            report.checks.push(Verdict::pass_with(
                name,
                format!("{} matrices over {} elements", mats.quantale.n(), q.n()),
            ));
        }
        Compute::Eae { base, idempotent } => {
            let q = quantale_named(ws, base)?;
            let e = element_named(&q, idempotent)?;
            let corner = corner_quantale(&q, e)?;
            report = Report::new(format!("compute eae {base} {idempotent}"), budget);
            let name = format!("corner({base},{idempotent})");
            doc.push_quantale(&name, &corner.quantale);
            report.checks.push(Verdict::pass_with(
                name,
                format!("{} of {} elements", corner.quantale.n(), q.n()),
            ));
        }
        Compute::Free { base, k } => {
            let q = quantale_named(ws, base)?;
            let free = free_module(&q, *k, budget)?;
            report = Report::new(format!("compute free {base} {k}"), budget);
            let name = format!("free({base},{k})");
            doc.push_quantale(base, &q);
            doc.push_module(&name, base, &free.module);
            report.checks.push(Verdict::pass_with(
                name,
                format!(
                    "{} elements of rank {k} over {}",
                    free.module.carrier().n(),
                    q.n()
                ),
            ));
        }
        Compute::Relq { n } => {
            let q = relation_quantale(*n, budget)?;
            report = Report::new(format!("compute relq {n}"), budget);
            let name = format!("Rel{n}");
            doc.push_quantale(&name, &q);
            report
                .checks
                .push(Verdict::pass_with(name, format!("{} relations", q.n())));
        }
    }
    Ok((doc, report))
}

fn matrix_argument(ws: &Workspace, q: &Arc<Quantale>, k: usize, token: &str) -> Result<Matrix> {
    if let Some(m) = ws.matrix(token) {
        if m.quantale != *q || m.rows != k || m.cols != k {
            return Err(Error::InvalidArgument(format!(
                "matrix {token} is not {k} by {k} over the requested quantale"
            )));
        }
        return Ok(m);
    }
    match token {
        "id" | "identity" => return Ok(Matrix::identity(q, k)),
        "zero" => return Ok(Matrix::zero(q, k, k)),
        "top" => return Ok(Matrix::top(q, k, k)),
        _ => {}
    }
    let digits: Vec<usize> = token
        .strip_prefix('E')
        .map(|rest| {
            rest.chars()
                .filter_map(|c| c.to_digit(10))
                .map(|d| d as usize)
                .collect()
        })
        .unwrap_or_default();
    if digits.len() == 2 && token.len() == 3 {
        let (i, j) = (digits[0], digits[1]);
        if i >= 1 && i <= k && j >= 1 && j <= k {
            return Ok(Matrix::unit_at(q, k, i - 1, j - 1));
        }
        return Err(Error::InvalidArgument(format!(
            "matrix position ({i},{j}) is outside {k} by {k}"
        )));
    }
    Err(Error::UnknownName(format!("matrix {token}")))
}

fn morita(kind: &Morita, ws: &Workspace, budget: usize) -> Result<Report> {
    match kind {
        Morita::FindFullIdempotents { base, k } => {
            let q = quantale_named(ws, base)?;
            let (mats, fulls) = find_full_idempotents(&q, *k, budget)?;
            let mut report =
                Report::new(format!("morita find-full-idempotents {base} {k}"), budget);
            report.checks.push(Verdict::pass_with(
                format!("scan of Mat{k}({base})"),
                format!(
                    "{} matrices, {} full idempotents",
                    mats.quantale.n(),
                    fulls.len()
                ),
            ));
            for (i, &e) in fulls.iter().enumerate() {
                report.checks.push(Verdict::pass_with(
                    format!("full idempotent {}", mats.matrix_of(e).render()),
                    format!("{} of {}", i + 1, fulls.len()),
                ));
            }
            Ok(report)
        }
        Morita::VerifyWitness { base, k, matrix } => {
            let q = quantale_named(ws, base)?;
            let mat = matrix_argument(ws, &q, *k, matrix)?;
            let witness = morita_witness_check(&q, *k, &mat, CARRIER_BUDGET, budget)?;
            let mut report =
                Report::new(format!("morita verify-witness {base} {k} {matrix}"), budget);
            report.checks = witness.checks;
            Ok(report)
        }
        Morita::Census {
            base,
            carrier_budget,
        } => {
            let q = quantale_named(ws, base)?;
            let census = projective_generator_census(&q, *carrier_budget, budget)?;
            let mut report = Report::new(format!("morita census {base} {carrier_budget}"), budget);
            report.checks.push(Verdict::pass_with(
                format!("projective generators over {base}"),
                format!(
                    "{} entries at carriers up to {carrier_budget}",
                    census.len()
                ),
            ));
            for entry in &census {
                let commutative = entry.end.commutativity_witness().is_none();
                report.checks.push(Verdict::pass_with(
                    format!("census entry on {}", entry.carrier_name),
                    format!(
                        "endomorphism quantale of {} elements, {}",
                        entry.end.n(),
                        if commutative {
                            "commutative"
                        } else {
                            "noncommutative"
                        }
                    ),
                ));
            }
            Ok(report)
        }
        Morita::CommutativeCheck { left, right } => {
            let (a, b) = (quantale_named(ws, left)?, quantale_named(ws, right)?);
            let mut report =
                Report::new(format!("morita commutative-check {left} {right}"), budget);
            report.checks = equivalence_evidence(&a, &b, CARRIER_BUDGET, budget)?;
            Ok(report)
        }
    }
}
