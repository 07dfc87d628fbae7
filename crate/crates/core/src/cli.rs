//! Command-line surface. [`run`] maps an argument vector to an exit code and
//! report text so the binary stays a thin wrapper and tests can drive it
//! in-process.
//!
//! Exit codes: 0 success (checked property holds), 1 property fails,
//! 2 invalid input, 3 budget or capacity exceeded.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::axioms::AxiomRegistry;
use crate::catalog::GeneratorRegistry;
use crate::dot::export_dot;
use crate::error::{Error, Result};
use crate::format::{parse_source, parse_statespace_unchecked, serialize_statespace, Source};
use crate::products::{minimal_product, separated_product};
use crate::search::{parse_search_spec, run_search, TargetRegistry};
use crate::state_space::{show_set, Ppl, StateSpace};
use crate::symmetry::{
    all_symmetries, is_plane_transitive, PlaneStatus, SearchContext, DEFAULT_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Environment variable overriding the default search budget.
pub const BUDGET_ENV: &str = "ORTHLAB_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "orthlab",
    version,
    about = "Property lattices, Aerts products and their axioms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the orthogonality axioms of a state space or ppl.
    Validate { src: String },
    /// List the closed sets of the property lattice.
    Lattice {
        src: String,
        /// Emit the Hasse diagram as Graphviz DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// Run every axiom check.
    Axioms { src: String },
    /// Build a separated or minimal product.
    Product(ProductArgs),
    /// Decide plane transitivity.
    Plane {
        src: String,
        /// Print one witness per atom pair.
        #[arg(long)]
        witnesses: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Enumerate symmetries.
    Symmetries {
        src: String,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run a counterexample search spec.
    Search { spec: PathBuf },
    /// Print a catalog state space, e.g. `gen mo:2`.
    Gen { spec: String },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("kind").required(true).args(["separated", "minimal"])))]
struct ProductArgs {
    #[arg(long)]
    separated: bool,
    #[arg(long)]
    minimal: bool,
    src1: String,
    src2: String,
    /// Run the axiom checks on the product.
    #[arg(long)]
    axioms: bool,
    #[arg(long)]
    dot: bool,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    lines: Vec<String>,
}

impl Report {
    fn ok(lines: Vec<String>) -> Self {
        Report {
            code: EXIT_OK,
            lines,
        }
    }
}

/// Runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let mut stdout = report.lines.join("\n");
            if !stdout.is_empty() && !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code: report.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: if e.is_resource_limit() {
                EXIT_LIMIT
            } else {
                EXIT_INVALID
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_text(src: &str) -> Result<String> {
    std::fs::read_to_string(src).map_err(|e| Error::Io(format!("{src}: {e}")))
}

/// A file path or `gen:<name>:<args>`.
fn load(src: &str) -> Result<Source> {
    match src.strip_prefix("gen:") {
        Some(spec) => Ok(Source::StateSpace(
            GeneratorRegistry::standard().build(spec)?,
        )),
        None => parse_source(&read_text(src)?),
    }
}

fn load_ppl(src: &str) -> Result<Ppl> {
    load(src)?.into_ppl()
}

/// State-space view of a source; a ppl contributes its orthogonality.
fn load_statespace(src: &str) -> Result<StateSpace> {
    match load(src)? {
        Source::StateSpace(ss) => Ok(ss),
        Source::Ppl(p) => StateSpace::new(p.labels().to_vec(), p.orth().clone()),
    }
}

fn budget(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::Argument(format!(
                "{BUDGET_ENV} must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn is_statespace_text(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().next() == Some("statespace"))
}

fn validate(src: &str) -> Result<Report> {
    let ss = match src.strip_prefix("gen:") {
        Some(spec) => GeneratorRegistry::standard().build(spec)?,
        None => {
            let text = read_text(src)?;
            if is_statespace_text(&text) {
                parse_statespace_unchecked(&text)?
            } else {
                // ppl files are fully checked by the parser
                let ppl = parse_source(&text)?.into_ppl()?;
                let mut lines = ppl.orth().check().lines(ppl.labels());
                lines.push(format!(
                    "valid\t{} atoms\t{} elements",
                    ppl.ground(),
                    ppl.cs().len()
                ));
                return Ok(Report::ok(lines));
            }
        }
    };
    let report = ss.validate();
    let mut lines = report.lines(ss.labels());
    if report.is_valid() {
        lines.push(format!("valid\t{} atoms", ss.len()));
        Ok(Report::ok(lines))
    } else {
        lines.push("invalid".into());
        Ok(Report {
            code: EXIT_FAIL,
            lines,
        })
    }
}

fn lattice_lines(ppl: &Ppl) -> Vec<String> {
    let cs = ppl.cs();
    let mut lines = vec![format!(
        "lattice\tatoms={}\telements={}",
        ppl.ground(),
        cs.len()
    )];
    lines.extend(
        cs.closed()
            .iter()
            .enumerate()
            .map(|(id, f)| format!("element\t{id}\t{}", show_set(ppl.labels(), f))),
    );
    lines
}

fn axiom_report(ppl: &Ppl, mut lines: Vec<String>) -> Report {
    let mut code = EXIT_OK;
    for (report, is_axiom) in AxiomRegistry::standard().run_all(ppl) {
        if is_axiom && report.certificate().is_some() {
            code = EXIT_FAIL;
        }
        lines.push(report.line(ppl.cs(), ppl.labels()));
    }
    Report { code, lines }
}

fn product(args: ProductArgs) -> Result<Report> {
    let (kind, ppl) = if args.separated {
        let ss = separated_product(&load_statespace(&args.src1)?, &load_statespace(&args.src2)?)?;
        ("separated", ss.property_lattice()?)
    } else {
        (
            "minimal",
            minimal_product(&load_ppl(&args.src1)?, &load_ppl(&args.src2)?)?,
        )
    };
    if args.dot {
        return Ok(Report::ok(vec![export_dot(ppl.cs(), ppl.labels())?
            .trim_end()
            .to_string()]));
    }
    let head = vec![format!(
        "product\t{kind}\tatoms={}\telements={}",
        ppl.ground(),
        ppl.cs().len()
    )];
    if args.axioms {
        Ok(axiom_report(&ppl, head))
    } else {
        Ok(Report::ok(head))
    }
}

fn images(ppl: &Ppl, perm: &[usize]) -> String {
    perm.iter()
        .map(|&v| ppl.labels()[v].as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn plane(src: &str, witnesses: bool, flag: Option<u64>) -> Result<Report> {
    let ppl = load_ppl(src)?;
    let report = is_plane_transitive(&ppl, budget(flag)?)?;
    let l = |i: usize| ppl.labels().get(i).cloned().unwrap_or_default();
    let mut lines = Vec::new();
    if witnesses {
        for w in &report.witnesses {
            lines.push(format!(
                "witness\t{}\t{}\t{}\t{}\t{}",
                l(w.p),
                l(w.q),
                l(w.p1),
                l(w.p2),
                images(&ppl, w.f.perm())
            ));
        }
    }
    let code = match report.status {
        PlaneStatus::Transitive => {
            lines.push("plane\ttransitive".into());
            EXIT_OK
        }
        PlaneStatus::Fails { p, q } => {
            lines.push(format!("plane\tfails\t{}\t{}", l(p), l(q)));
            EXIT_FAIL
        }
        PlaneStatus::Unknown { p, q } => {
            lines.push(format!("plane\tunknown\t{}\t{}", l(p), l(q)));
            EXIT_LIMIT
        }
    };
    Ok(Report { code, lines })
}

fn symmetries(src: &str, count_only: bool, flag: Option<u64>) -> Result<Report> {
    let ppl = load_ppl(src)?;
    let limit = budget(flag)?;
    let mut lines = Vec::new();
    let count = if count_only {
        let ctx = SearchContext::new(&ppl);
        let mut n = 0u64;
        for s in crate::symmetry::enumerate_symmetries(&ctx, limit) {
            s?;
            n += 1;
        }
        n
    } else {
        let all = all_symmetries(&ppl, limit)?;
        lines.extend(
            all.iter()
                .map(|s| format!("symmetry\t{}", images(&ppl, s.perm()))),
        );
        all.len() as u64
    };
    lines.push(format!("symmetries\t{count}"));
    Ok(Report::ok(lines))
}

fn search(path: &std::path::Path) -> Result<Report> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let spec = parse_search_spec(&text)?;
    let report = run_search(&spec, &TargetRegistry::standard())?;
    Ok(Report {
        code: if report.hits.is_empty() {
            EXIT_OK
        } else {
            EXIT_FAIL
        },
        lines: report.lines(),
    })
}

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Validate { src } => validate(&src),
        Command::Lattice { src, dot } => {
            let ppl = load_ppl(&src)?;
            if dot {
                Ok(Report::ok(vec![export_dot(ppl.cs(), ppl.labels())?
                    .trim_end()
                    .to_string()]))
            } else {
                Ok(Report::ok(lattice_lines(&ppl)))
            }
        }
        Command::Axioms { src } => {
            let ppl = load_ppl(&src)?;
            Ok(axiom_report(&ppl, Vec::new()))
        }
        Command::Product(args) => product(args),
        Command::Plane {
            src,
            witnesses,
            budget,
        } => plane(&src, witnesses, budget),
        Command::Symmetries {
            src,
            count_only,
            budget,
        } => symmetries(&src, count_only, budget),
        Command::Search { spec } => search(&spec),
        Command::Gen { spec } => {
            let spec = spec.strip_prefix("gen:").unwrap_or(&spec);
            let ss = GeneratorRegistry::standard().build(spec)?;
            Ok(Report::ok(vec![serialize_statespace(&ss)
                .trim_end()
                .to_string()]))
        }
    }
}
