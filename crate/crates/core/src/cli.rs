//! The `idem2` command-line front end.
//!
//! Every subcommand reads and writes JSON. Exit codes: 0 success, 1 domain
//! error (invalid spec, non-idempotent input, budget, failed cross-check),
//! 2 usage or parse error. Errors are printed to stderr as
//! `{"kind": ..., "detail": ...}`.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::idempotent_core::{classify, construct_case, enumerate_all, Case, IdempotentSpec, SpecJson};
use crate::mat2::{Mat2, Mat2Json};
use crate::oracle::{brute_force_idempotents, compare_sets, SearchSpace, DEFAULT_BUDGET};
use crate::tseries::TruncationContext;
use crate::zn_arith::Role;

#[derive(Debug, Parser)]
#[command(name = "idem2", version, about = "Idempotents of 2x2 matrices over Z_n[[X]] truncated by total degree")]
pub struct Cli {
    /// Maximum number of candidates an exhaustive search may visit.
    #[arg(long, global = true, env = "IDEM2_BUDGET")]
    pub budget: Option<u128>,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the idempotent described by a spec.
    Construct {
        /// Spec JSON file, or `-` for stdin.
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Check whether a matrix is idempotent.
    Verify {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Recover the canonical spec of an idempotent matrix.
    Classify {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Enumerate every idempotent over a window.
    Enumerate {
        /// Modulus.
        #[arg(short = 'n', long)]
        n: u64,
        /// Number of variables.
        #[arg(short = 'v', long, default_value_t = 0)]
        vars: usize,
        /// Total-degree truncation bound.
        #[arg(short = 'd', long, default_value_t = 0)]
        trunc: u32,
        /// Cross-check against brute force.
        #[arg(long)]
        with_oracle: bool,
        /// Include every idempotent with its spec in the output.
        #[arg(long)]
        list: bool,
    },
    /// Run the completeness grid against the brute-force oracle.
    Selftest {
        /// Grid JSON file: `{"cells": [[n, v, D], ...], "budget": N}`.
        #[arg(long)]
        grid: Option<PathBuf>,
    },
}

/// Cells checked by `selftest` when no grid file is given.
pub const DEFAULT_GRID: [(u64, usize, u32); 14] = [
    (2, 0, 0),
    (3, 0, 0),
    (4, 0, 0),
    (5, 0, 0),
    (6, 0, 0),
    (8, 0, 0),
    (9, 0, 0),
    (10, 0, 0),
    (12, 0, 0),
    (2, 1, 2),
    (3, 1, 1),
    (4, 1, 1),
    (6, 1, 1),
    (2, 2, 1),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub cells: Vec<(u64, usize, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u128>,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            cells: DEFAULT_GRID.to_vec(),
            budget: None,
        }
    }
}

/// A failure that maps onto an exit code.
#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    Usage(String),
    Parse(String),
    Failed(Value),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(detail) => CliError::Parse(detail),
            other => CliError::Domain(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Parse(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Domain(e) => json!({"kind": e.kind(), "detail": e.to_string()}),
            CliError::Usage(d) => json!({"kind": "UsageError", "detail": d}),
            CliError::Parse(d) => json!({"kind": "ParseError", "detail": d}),
            CliError::Failed(report) => report.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_input(input: &str) -> CliResult<String> {
    let mut buf = String::new();
    if input == "-" {
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
    } else {
        buf = std::fs::read_to_string(input).map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
    }
    Ok(buf)
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Parse(format!(
            "{what} at line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn parse_matrix(text: &str) -> CliResult<Mat2> {
    let json: Mat2Json = parse_json(text, "matrix")?;
    Mat2::from_json(&json).map_err(|e| CliError::Parse(format!("matrix: {e}")))
}

pub fn cmd_construct(text: &str) -> CliResult<Value> {
    let json: SpecJson = parse_json(text, "spec")?;
    let spec = IdempotentSpec::from_json(&json)?;
    let matrix = construct_case(&spec)?;
    Ok(json!({
        "case": Case::of(spec.split())?,
        "matrix": matrix.to_json(),
        "verified": matrix.is_idempotent(),
    }))
}

pub fn cmd_verify(text: &str) -> CliResult<Value> {
    let matrix = parse_matrix(text)?;
    Ok(json!({
        "idempotent": matrix.is_idempotent(),
        "cayley_hamilton_zero": matrix.cayley_hamilton_residual().is_zero(),
    }))
}

pub fn cmd_classify(text: &str) -> CliResult<Value> {
    let matrix = parse_matrix(text)?;
    let spec = classify(&matrix)?;
    Ok(serde_json::to_value(spec.to_json()).expect("spec serializes"))
}

fn roles_json(spec: &IdempotentSpec) -> IndexMap<String, Role> {
    spec.to_json().roles
}

pub fn cmd_enumerate(
    n: u64,
    vars: usize,
    trunc: u32,
    with_oracle: bool,
    list: bool,
    budget: u128,
) -> CliResult<(Value, bool)> {
    let ctx = TruncationContext::for_modulus(n, vars, trunc)?;
    if with_oracle {
        SearchSpace::matrices(&ctx, budget)?;
    }
    let all = enumerate_all(&ctx, budget)?;

    let mut splits: IndexMap<Vec<Role>, (Value, usize)> = IndexMap::new();
    for item in &all {
        let s = item.spec.split();
        let entry = splits.entry(s.roles().to_vec()).or_insert_with(|| {
            (
                json!({
                    "roles": roles_json(&item.spec),
                    "P": s.p(), "Q": s.q(), "R": s.r(),
                    "case": Case::of(s).ok(),
                }),
                0,
            )
        });
        entry.1 += 1;
    }
    let mut breakdown: Vec<(Vec<Role>, Value)> = splits
        .into_iter()
        .map(|(k, (mut v, c))| {
            v["count"] = json!(c);
            (k, v)
        })
        .collect();
    breakdown.sort_by(|a, b| a.0.cmp(&b.0));

    let mut out = json!({
        "n": n,
        "vars": vars,
        "trunc": trunc,
        "count": all.len(),
        "splits": breakdown.into_iter().map(|(_, v)| v).collect::<Vec<_>>(),
    });
    let mut passed = true;
    if with_oracle {
        let brute = brute_force_idempotents(&ctx, budget)?;
        let matrices: Vec<Mat2> = all.iter().map(|c| c.matrix.clone()).collect();
        let report = compare_sets(&matrices, &brute);
        passed = report.passed;
        out["oracle"] = serde_json::to_value(report.to_json()).expect("report serializes");
    }
    if list {
        out["idempotents"] = all.iter().map(|c| serde_json::to_value(c.to_json()).expect("serializes")).collect();
    }
    Ok((out, passed))
}

fn run_cell(n: u64, vars: usize, trunc: u32, budget: u128) -> crate::error::Result<Value> {
    let ctx = TruncationContext::for_modulus(n, vars, trunc)?;
    let constructed: Vec<Mat2> = enumerate_all(&ctx, budget)?
        .into_iter()
        .map(|c| c.matrix)
        .collect();
    let brute = brute_force_idempotents(&ctx, budget)?;
    let report = compare_sets(&constructed, &brute);
    Ok(json!({
        "n": n,
        "vars": vars,
        "trunc": trunc,
        "passed": report.passed,
        "count_constructed": report.count_constructed,
        "count_brute": report.count_brute,
        "missing": report.missing.len(),
        "extra": report.extra.len(),
    }))
}

/// Runs every grid cell; returns the summary and whether all cells passed.
pub fn cmd_selftest(grid: &GridConfig, budget: u128) -> CliResult<(Value, bool)> {
    let budget = grid.budget.unwrap_or(budget);
    for &(n, v, d) in &grid.cells {
        let ctx = TruncationContext::for_modulus(n, v, d)?;
        SearchSpace::matrices(&ctx, budget)?;
    }
    let cells: Vec<Value> = grid
        .cells
        .par_iter()
        .map(|&(n, v, d)| run_cell(n, v, d, budget))
        .collect::<crate::error::Result<_>>()?;
    let passed = cells.iter().all(|c| c["passed"] == true);
    Ok((
        json!({"passed": passed, "budget": budget.to_string(), "cells": cells}),
        passed,
    ))
}

fn dispatch(cli: &Cli) -> CliResult<(Value, bool)> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match &cli.command {
        Command::Construct { input } => cmd_construct(&read_input(input)?).map(|v| (v, true)),
        Command::Verify { input } => cmd_verify(&read_input(input)?).map(|v| (v, true)),
        Command::Classify { input } => cmd_classify(&read_input(input)?).map(|v| (v, true)),
        Command::Enumerate {
            n,
            vars,
            trunc,
            with_oracle,
            list,
        } => cmd_enumerate(*n, *vars, *trunc, *with_oracle, *list, budget),
        Command::Selftest { grid } => {
            let config = match grid {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    parse_json(&text, "grid")?
                }
                None => GridConfig::default(),
            };
            cmd_selftest(&config, budget)
        }
    }
}

/// Parses `args`, runs the command and writes its output; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{}", json!({"kind": "UsageError", "detail": e.to_string()}));
            return 2;
        }
    };
    if let Some(jobs) = cli.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match dispatch(&cli) {
        Ok((value, passed)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json"));
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_matches_config() {
        let g = GridConfig::default();
        assert_eq!(g.cells.len(), 14);
        let parsed: GridConfig = serde_json::from_str(r#"{"cells": [[6, 0, 0]], "budget": 100}"#).unwrap();
        assert_eq!(parsed.cells, vec![(6, 0, 0)]);
        assert_eq!(parsed.budget, Some(100));
    }

    #[test]
    fn empty_grid_passes() {
        let (v, ok) = cmd_selftest(&GridConfig { cells: vec![], budget: None }, DEFAULT_BUDGET).unwrap();
        assert!(ok);
        assert_eq!(v["cells"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn tiny_budget_fails_first_cell() {
        let err = cmd_selftest(&GridConfig::default(), 10).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert_eq!(err.to_json()["kind"], "BudgetExceeded");
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = cmd_verify("{\"entries\": [").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_json()["detail"].as_str().unwrap().contains("line 1"));
    }
}
