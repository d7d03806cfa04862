//! `logder`: analyze arrangements, generate families, run verification
//! suites and compare two arrangements.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 internal consistency failure.

mod document;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use logder_core::arrangement::{parse_arrangement, parse_family_spec, write_arrangement, Arrangement, FamilySpec};
use logder_core::verify::run_suite_with;
use logder_core::SyzygyEngine;

use document::{AnalysisDocument, AnalyzeOptions, CompareDocument, SCHEMA};

#[derive(Parser)]
#[command(name = "logder", version, about = "Minimal degree of Jacobian relations of hyperplane arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every invariant of one arrangement.
    Analyze {
        /// Arrangement file or `family:NAME[:key=val,...][+modifier...]`.
        input: String,
        #[arg(long)]
        json: bool,
        /// Largest degree of the `dim D0_r` table (default: d).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Skip minimal generators; freeness is then read from the Tjurina number.
        #[arg(long)]
        skip_mingens: bool,
    },
    /// Write a family member as an arrangement file.
    Family {
        name: String,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        j: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        seed: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Compare two arrangements.
    Compare {
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<logder_core::Error> for Failure {
    fn from(e: logder_core::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn load(input: &str) -> Result<Arrangement, Failure> {
    if input.starts_with("family:") {
        return Ok(parse_family_spec(input)?.build()?);
    }
    let text = std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("cannot read {input}: {e}")))?;
    Ok(parse_arrangement(&text)?)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("documents serialize")
}

fn run(cli: Cli) -> Result<(), Failure> {
    let engine = SyzygyEngine::new();
    match cli.command {
        Command::Analyze { input, json, max_degree, skip_mingens } => {
            let a = load(&input)?;
            let doc = AnalysisDocument::build(&engine, &input, &a, &AnalyzeOptions { max_degree, skip_mingens })?;
            if json {
                println!("{}", to_json(&doc));
            } else {
                print!("{}", doc.to_text());
            }
            if !doc.consistent() {
                return Err(Failure::Internal("a consistency check failed".into()));
            }
        }
        Command::Family { name, k, j, d, seed, out } => {
            let params: BTreeMap<String, i64> = [("k", k), ("j", j), ("d", d), ("seed", seed)]
                .into_iter()
                .filter_map(|(key, v)| v.map(|v| (key.to_string(), v)))
                .collect();
            let a = FamilySpec { name, params, modifiers: Vec::new() }.build()?;
            let text = write_arrangement(&a);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        Command::Verify { suite, seed, json } => {
            let report = run_suite_with(&engine, &suite, seed)?;
            if json {
                #[derive(serde::Serialize)]
                struct Doc<'r> {
                    schema: &'static str,
                    #[serde(flatten)]
                    report: &'r logder_core::verify::SuiteReport,
                }
                println!("{}", to_json(&Doc { schema: SCHEMA, report: &report }));
            } else {
                print!("{}", report.to_text());
                println!("{} mismatches / {} cases", report.failed, report.total);
            }
            if !report.success() {
                return Err(Failure::Internal(format!("{} checks failed", report.failed)));
            }
        }
        Command::Compare { a, b, json } => {
            let (x, y) = (load(&a)?, load(&b)?);
            let doc = CompareDocument::build(&engine, (&a, &x), (&b, &y))?;
            if json {
                println!("{}", to_json(&doc));
            } else {
                print!("{}", doc.to_text());
            }
        }
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("LOGDER_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("LOGDER_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
