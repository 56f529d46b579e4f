use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use johnson_algebra::checks::{self, CheckResult, Status};
use johnson_algebra::rep::{decompose, weyl_dim, YoungDiagram};
use johnson_algebra::spaces::{generated_submodule, DegreeTwoSpaces};
use johnson_algebra::{dsl, Genus};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "johnson", version, about = "Exact computations in h_{g,1} and the verification registry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run registry checks; without --genus every genus from 2 to 5.
    Verify {
        #[arg(long)]
        genus: Option<u32>,
        /// Check ids to run (repeatable); default all.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate an expression and print its canonical form.
    Eval {
        #[arg(long)]
        genus: u32,
        expr: String,
    },
    /// Decompose one of the degree-two spaces or the module generated by an expression.
    Decompose {
        #[arg(long)]
        genus: u32,
        #[command(subcommand)]
        target: Target,
    },
    /// Dimension of an irreducible representation, e.g. "[2 2]".
    Dim {
        #[arg(long)]
        genus: u32,
        diagram: String,
    },
    /// List the registered checks.
    List,
}

#[derive(Subcommand)]
enum Target {
    H2,
    #[command(name = "wedge2-h2")]
    Wedge2H2,
    Hstar2,
    Hg2,
    Expr { expr: String },
}

#[derive(Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
    skipped: usize,
}

#[derive(Serialize)]
struct Report<'a> {
    genus: u32,
    engine_version: &'static str,
    checks: &'a [CheckResult],
    summary: Summary,
}

fn summary(results: &[CheckResult]) -> Summary {
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    Summary { pass: count(Status::Pass), fail: count(Status::Fail), skipped: count(Status::Skipped) }
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<johnson_algebra::Error> for Failure {
    fn from(e: johnson_algebra::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn genus(g: u32) -> Result<Genus, Failure> {
    Ok(Genus::new(g)?)
}

fn verify(g: Option<u32>, ids: &[String], json: Option<PathBuf>) -> Result<(), Failure> {
    let genera: Vec<u32> = match g {
        Some(g) => vec![g],
        None => (2..=5).collect(),
    };
    let ids: Vec<&str> = if ids.is_empty() {
        checks::registry().iter().map(|c| c.id).collect()
    } else {
        ids.iter().map(String::as_str).collect()
    };
    // With the report on stdout, the progress lines move to stderr.
    let to_stdout = json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    let say = |line: String| if to_stdout { eprintln!("{line}") } else { println!("{line}") };
    let mut reports = Vec::new();
    let mut failed = false;
    for g in genera {
        let results = checks::run_checks(&ids, genus(g)?)?;
        for r in &results {
            say(format!("{:<24} g={} {:<8} {} ms", r.id, r.genus, r.status, r.elapsed_ms));
            if r.status == Status::Fail {
                say(format!("    expected: {}", r.expected));
                say(format!("    computed: {}", r.computed));
                if !r.notes.is_empty() {
                    say(format!("    notes: {}", r.notes));
                }
            }
        }
        let s = summary(&results);
        say(format!("genus {g}: pass: {}, fail: {}, skipped: {}", s.pass, s.fail, s.skipped));
        failed |= s.fail > 0;
        reports.push((g, results, s));
    }
    if let Some(path) = json {
        let docs: Vec<Report> = reports
            .iter()
            .map(|(g, results, s)| Report {
                genus: *g,
                engine_version: env!("CARGO_PKG_VERSION"),
                checks: results,
                summary: Summary { pass: s.pass, fail: s.fail, skipped: s.skipped },
            })
            .collect();
        let text = if docs.len() == 1 {
            serde_json::to_string_pretty(&docs[0])
        } else {
            serde_json::to_string_pretty(&docs)
        }
        .expect("report serializes");
        if path.as_os_str() == "-" {
            println!("{text}");
        } else {
            std::fs::write(&path, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        }
    }
    if failed {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { genus, checks, json } => verify(genus, &checks, json),
        Command::Eval { genus: g, expr } => {
            println!("{}", dsl::evaluate(&expr, genus(g)?)?);
            Ok(())
        }
        Command::Decompose { genus: g, target } => {
            let g = genus(g)?;
            let table = match target {
                Target::H2 => DegreeTwoSpaces::get(g)?.h.clone(),
                Target::Wedge2H2 => DegreeTwoSpaces::get(g)?.h.wedge2(),
                Target::Hstar2 => DegreeTwoSpaces::get(g)?.hstar.clone(),
                Target::Hg2 => DegreeTwoSpaces::get(g)?.hg.clone(),
                Target::Expr { expr } => generated_submodule(&dsl::evaluate(&expr, g)?.to_tensor(), g)?,
            };
            println!("{}", decompose(&table, g)?);
            Ok(())
        }
        Command::Dim { genus: g, diagram } => {
            let d: YoungDiagram = diagram.parse()?;
            println!("{}", weyl_dim(&d, genus(g)?)?);
            Ok(())
        }
        Command::List => {
            for c in checks::registry() {
                println!("{:<24} g>={}  {}", c.id, c.min_genus, c.location);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
