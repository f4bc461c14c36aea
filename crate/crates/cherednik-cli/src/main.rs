//! Command-line harness: suite registry, configuration, module-spec
//! ingestion, and report emission.
//!
//! Exit status: 0 when the suite is satisfied (pass, or expected failure
//! with a witness under --expect-fail), 1 on a check failure, 2 on a
//! usage or configuration error. Reports are deterministic for a fixed
//! configuration. Worker count is controlled by RAYON_NUM_THREADS.

use cherednik::glmod::GlModule;
use cherednik::scalar::{parse_rat, Rat};
use cherednik::suites::{module_from_alias, run_suite, suite_names, SuiteConfig};
use clap::{Parser, Subcommand};
use serde::Deserialize;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "cherednik",
    about = "Exact verification suites for Hecke and Cherednik algebra actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite.
    Run(RunArgs),
    /// List the registered suite names.
    List,
}

#[derive(Parser)]
struct RunArgs {
    /// Suite name (see `cherednik list`).
    #[arg(long)]
    suite: String,
    /// Size m of gl_m.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Size n of gl_n (finite coinvariant setting only).
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Number of tensor factors N.
    #[arg(long = "N", default_value_t = 2)]
    nn: usize,
    /// Comma-separated exact rationals, e.g. "1,5/2,-7/3".
    #[arg(long, default_value = "1,5/2,-7/3", allow_hyphen_values = true)]
    kappa: String,
    /// Offset added to the critical level kappa - m (negative controls).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    level_offset: String,
    /// x-exponent window "lo..hi".
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    window: String,
    /// Total-degree bound for the polynomial suites.
    #[arg(long, default_value_t = 5)]
    degree: i32,
    /// Module-depth bound for sampled keys.
    #[arg(long, default_value_t = 2)]
    depth: u32,
    /// Sample count where a suite samples rather than enumerates.
    #[arg(long, default_value_t = 240)]
    samples: usize,
    /// Seed for reproducible sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Module for U: alias (natural:m, natural2:m, onedim:m:w1,..) or a
    /// JSON module-spec file path.
    #[arg(long)]
    module: Option<String>,
    /// Module for V in the finite coinvariant setting.
    #[arg(long)]
    module2: Option<String>,
    /// Output format.
    #[arg(long, default_value = "text")]
    format: String,
    /// Negative-control mode: report success iff the suite fails.
    #[arg(long, default_value_t = false)]
    expect_fail: bool,
}

/// On-disk module spec: m, dim, and the m^2 matrices as nested arrays of
/// rational strings, matrices[a-1][b-1][row][col].
#[derive(Deserialize)]
struct ModuleSpecFile {
    m: usize,
    dim: usize,
    matrices: Vec<Vec<Vec<Vec<String>>>>,
}

fn parse_module_spec(arg: &str) -> Result<Arc<GlModule>, String> {
    if !std::path::Path::new(arg).is_file() {
        return module_from_alias(arg);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| format!("cannot read {arg:?}: {e}"))?;
    let spec: ModuleSpecFile =
        serde_json::from_str(&text).map_err(|e| format!("parse error in {arg:?}: {e}"))?;
    if spec.matrices.len() != spec.m || spec.matrices.iter().any(|r| r.len() != spec.m) {
        return Err(format!("{arg:?}: matrix table must be m x m"));
    }
    let mut mats = Vec::with_capacity(spec.m);
    for (a, row) in spec.matrices.iter().enumerate() {
        let mut out_row = Vec::with_capacity(spec.m);
        for (b, mat) in row.iter().enumerate() {
            if mat.len() != spec.dim || mat.iter().any(|r| r.len() != spec.dim) {
                return Err(format!(
                    "{arg:?}: matrix E_{}{} must be dim x dim",
                    a + 1,
                    b + 1
                ));
            }
            let parsed: Result<Vec<Vec<Rat>>, String> = mat
                .iter()
                .map(|r| r.iter().map(|s| parse_rat(s)).collect())
                .collect();
            out_row.push(parsed?);
        }
        mats.push(out_row);
    }
    GlModule::new(spec.m, spec.dim, mats)
        .map(Arc::new)
        .map_err(|e| format!("{arg:?}: validation failed: {e}"))
}

fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("bad window {s:?}, expected lo..hi"))?;
    let lo: i32 = lo.parse().map_err(|_| format!("bad window bound {lo:?}"))?;
    let hi: i32 = hi.parse().map_err(|_| format!("bad window bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty window {s:?}"));
    }
    Ok((lo, hi))
}

fn build_config(args: &RunArgs) -> Result<SuiteConfig, String> {
    let kappas: Result<Vec<Rat>, String> = args.kappa.split(',').map(parse_rat).collect();
    let kappas = kappas?;
    if kappas.is_empty() {
        return Err("kappa list must be nonempty".into());
    }
    let module = match &args.module {
        Some(s) => Some(parse_module_spec(s)?),
        None => None,
    };
    let module2 = match &args.module2 {
        Some(s) => Some(parse_module_spec(s)?),
        None => None,
    };
    Ok(SuiteConfig {
        m: args.m,
        n: args.n,
        nn: args.nn,
        kappas,
        level_offset: parse_rat(&args.level_offset)?,
        window: parse_window(&args.window)?,
        degree: args.degree,
        depth: args.depth,
        samples: args.samples,
        seed: args.seed,
        module,
        module2,
        expect_fail: args.expect_fail,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for name in suite_names() {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Run(args) => {
            if args.format != "text" && args.format != "json" {
                eprintln!("error: unknown format {:?}", args.format);
                return ExitCode::from(2);
            }
            let cfg = match build_config(&args) {
                Ok(cfg) => cfg,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let report = match run_suite(&args.suite, &cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if args.format == "json" {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.satisfied() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
