//! `psc-stab`: invariants of isometries of intersection forms, and the
//! stabilization and stable-existence checks built on them.
//!
//! Exit codes: 0 success or positive verdict, 2 invalid input, 3
//! inconclusive or negative verdict (or a failed selftest).

mod canon;
mod input;
mod report;
mod selftest;
mod text;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use psc_stab::catalog::{get_entry, list};
use psc_stab::generate::DEFAULT_SEED;
use psc_stab::suite::DEFAULT_COUNT;
use psc_stab::Error;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{parse_problem, read_source, ProblemInput};
use crate::report::{build_hypersurface, build_report, CatalogReport, Report};
use crate::text::Style;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "psc-stab", version, about = "Isometry invariants of 4-manifold intersection forms")]
struct Cli {
    /// Problem file, or `-` for standard input.
    #[arg(long = "in", global = true, value_name = "FILE", default_value = "-")]
    input: String,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Print nothing on stdout; only the exit code reports the outcome.
    #[arg(long, global = true)]
    quiet: bool,

    /// JSON array of problems, processed in parallel; output keeps the order.
    #[arg(long, global = true, value_name = "FILE")]
    batch: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full invariants block for an isometry.
    Invariants,
    /// Product-stabilization verdict for `f × id_N`, `n = dim N`.
    CheckStab {
        /// Overrides `n` from the input.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Named forms and their known isometries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Characteristic numbers of a degree-d hypersurface in CP^3.
    Hypersurface { degree: u64 },
    /// Reproduces the phi values of the standard generators.
    Selftest {
        /// Also run the property suite over generated isometries.
        #[arg(long)]
        extended: bool,
        #[arg(long, requires = "extended", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, requires = "extended", default_value_t = DEFAULT_COUNT)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

/// Ordered by severity, so a batch reports its worst outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Ok,
    Negative,
    Invalid,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Invalid => 2,
            Outcome::Negative => 3,
        }
    }
}

fn error_value(e: &Error) -> Value {
    json!({ "error": e.code(), "detail": e.to_string() })
}

fn to_json(v: &impl Serialize) -> String {
    canon::to_canonical(v)
}

struct Printer {
    format: Format,
    quiet: bool,
    style: Style,
}

impl Printer {
    fn emit(&self, json: String, text: impl FnOnce(Style) -> String) {
        if self.quiet {
            return;
        }
        match self.format {
            Format::Json => print!("{json}"),
            Format::Text => print!("{}", text(self.style)),
        }
    }

    fn error(&self, e: &Error) -> Outcome {
        match (self.quiet, self.format) {
            (false, Format::Json) => print!("{}", to_json(&error_value(e))),
            _ => eprintln!("error [{}]: {e}", e.code()),
        }
        Outcome::Invalid
    }
}

fn problem_outcome(r: &Report) -> Outcome {
    if r.is_negative() {
        Outcome::Negative
    } else {
        Outcome::Ok
    }
}

/// `n` from the flag if given, else from the input; `None` for `invariants`.
fn effective_n(stab: Option<Option<u64>>, input: &ProblemInput) -> Result<Option<u64>, Error> {
    match stab {
        None => Ok(None),
        Some(flag) => match flag.or(input.n) {
            Some(n) => Ok(Some(n)),
            None => Err(Error::Parse("check-stab needs n, either in the input or via --n".into())),
        },
    }
}

fn solve(input: &ProblemInput, stab: Option<Option<u64>>) -> Result<Report, Error> {
    build_report(input, effective_n(stab, input)?)
}

fn run_single(p: &Printer, source: &str, stab: Option<Option<u64>>) -> Outcome {
    let result = read_source(source).and_then(|t| parse_problem(&t)).and_then(|i| solve(&i, stab));
    match result {
        Ok(r) => {
            p.emit(to_json(&r), |st| text::report(&r, st));
            problem_outcome(&r)
        }
        Err(e) => p.error(&e),
    }
}

fn run_batch(p: &Printer, path: &str, stab: Option<Option<u64>>) -> Outcome {
    let items: Vec<Value> = match read_source(path).and_then(|t| {
        serde_json::from_str(&t).map_err(|e| Error::Parse(format!("batch file must be a JSON array: {e}")))
    }) {
        Ok(v) => v,
        Err(e) => return p.error(&e),
    };
    let results: Vec<Result<Report, Error>> = items
        .par_iter()
        .map(|item| {
            let input: ProblemInput =
                serde_json::from_value(item.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            solve(&input, stab)
        })
        .collect();

    let outcome = results
        .iter()
        .map(|r| r.as_ref().map_or(Outcome::Invalid, problem_outcome))
        .max()
        .unwrap_or(Outcome::Ok);
    let values: Vec<Value> = results
        .iter()
        .map(|r| match r {
            Ok(rep) => serde_json::to_value(rep).expect("report types serialize"),
            Err(e) => error_value(e),
        })
        .collect();
    p.emit(to_json(&values), |st| {
        let mut out = String::new();
        for (i, r) in results.iter().enumerate() {
            out.push_str(&format!("== problem {i} ==\n"));
            match r {
                Ok(rep) => out.push_str(&text::report(rep, st)),
                Err(e) => out.push_str(&format!("error [{}]: {e}\n", e.code())),
            }
        }
        out
    });
    outcome
}

fn run(cli: Cli) -> Outcome {
    let p = Printer { format: cli.format, quiet: cli.quiet, style: Style::from_env() };
    match cli.command {
        Command::Invariants | Command::CheckStab { .. } => {
            let stab = match cli.command {
                Command::CheckStab { n } => Some(n),
                _ => None,
            };
            match &cli.batch {
                Some(path) => run_batch(&p, path, stab),
                None => run_single(&p, &cli.input, stab),
            }
        }
        Command::Catalog { action: CatalogAction::List } => {
            let names = list();
            p.emit(to_json(&names), |_| names.iter().map(|n| format!("{n}\n")).collect());
            Outcome::Ok
        }
        Command::Catalog { action: CatalogAction::Show { name } } => match get_entry(&name) {
            Ok(e) => {
                let r = CatalogReport::from_entry(&e);
                p.emit(to_json(&r), |st| text::catalog_entry(&r, st));
                Outcome::Ok
            }
            Err(e) => p.error(&e),
        },
        Command::Hypersurface { degree } => match build_hypersurface(degree) {
            Ok(r) => {
                p.emit(to_json(&r), |st| text::hypersurface(&r, st));
                if r.stable_psc.stably_exists {
                    Outcome::Ok
                } else {
                    Outcome::Negative
                }
            }
            Err(e) => p.error(&e),
        },
        Command::Selftest { extended, seed, count } => match selftest::run(extended.then_some((seed, count))) {
            Ok(r) => {
                p.emit(to_json(&r), |st| text::selftest(&r, st));
                if r.pass {
                    Outcome::Ok
                } else {
                    Outcome::Negative
                }
            }
            Err(e) => p.error(&e),
        },
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()).code())
}
