//! `fatwalk`: simulation and verification CLI for heavy-tailed walk
//! increasing-subsequence experiments.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fatwalk_core::exact::{
    exact_greedy_distribution, exact_lis_distribution, greedy_mean_dp, ExactDistribution,
};
use fatwalk_core::numerics::{c_beta, solve_beta0, solve_beta1};
use fatwalk_core::walk::WalkModel;
use fatwalk_harness::config::{ConfigOverlay, OutputFormat};
use fatwalk_harness::fit::{fit_exponent, pairs_from_rows, FitStatistic};
use fatwalk_harness::suites::{run_suite, SuiteName, SuiteParams};
use fatwalk_harness::sweep::{parse_csv, run_sweep, write_csv, write_json};

#[derive(Parser)]
#[command(
    name = "fatwalk",
    version,
    about = "Increasing-subsequence statistics of heavy-tailed random walks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Comma-separated list of walk lengths.
#[derive(Debug, Clone)]
struct GridArg(Vec<usize>);

impl FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fatwalk_harness::config::parse_grid(s).map(GridArg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ExactStat {
    Lis,
    Greedy,
}

impl FromStr for ExactStat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lis" => Ok(ExactStat::Lis),
            "greedy" => Ok(ExactStat::Greedy),
            other => Err(format!("unknown statistic {other:?}, expected lis|greedy")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the exponent-bound constants and print them with residuals.
    Constants {
        /// Root tolerance for both solves.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Quadrature tolerance inside the upper-bound functional.
        #[arg(long, default_value_t = 1e-10)]
        quad_tol: f64,
    },
    /// Run a seeded Monte Carlo sweep over a grid of walk lengths.
    Simulate(SimulateArgs),
    /// Fit a power-law exponent to a sweep table.
    Fit {
        /// CSV file produced by `simulate --format csv`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "mean")]
        statistic: FitStatistic,
        /// Drop grid points with n below this cutoff.
        #[arg(long, default_value_t = 0)]
        n_min: usize,
    },
    /// Exact subsequence-length laws by enumeration, as rational tables.
    Exact {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value = "lis")]
        stat: ExactStat,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterate the greedy mean recursion and report its dyadic profile.
    GreedyDp {
        #[arg(long, default_value_t = 1 << 20)]
        n_max: usize,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named verification suite; exit status reflects the verdict.
    Check(CheckArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// key = value settings file; explicit flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model: Option<WalkModel>,
    /// Stability index; implies the stable model.
    #[arg(long)]
    alpha: Option<f64>,
    /// Comma-separated walk lengths, strictly increasing.
    #[arg(long)]
    n_grid: Option<GridArg>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    suite: SuiteName,
    /// Walk length (time horizon) for the sampled suites.
    #[arg(long, visible_alias = "t", default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_constants(tol: f64, quad_tol: f64) -> Result<()> {
    let beta0 = solve_beta0(tol)?;
    let beta1 = solve_beta1(tol.max(1e-12), quad_tol)?;
    let body = serde_json::json!({
        "beta0": {
            "root": beta0.root,
            "residual": beta0.residual,
            "iterations": beta0.iterations,
        },
        "beta1": {
            "root": beta1.root,
            "residual": beta1.residual,
            "iterations": beta1.iterations,
        },
        "c_beta0": c_beta(beta0.root),
        "tol": tol,
        "quad_tol": quad_tol,
    });
    println!("{}", serde_json::to_string_pretty(&body)?);
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    let file_layer = match &args.config {
        Some(path) => ConfigOverlay::from_file(path)?,
        None => ConfigOverlay::default(),
    };
    let flag_layer = ConfigOverlay {
        model: args.model,
        alpha: args.alpha,
        n_grid: args.n_grid.map(|g| g.0),
        replicas: args.reps,
        seed: args.seed,
        workers: args.workers,
        out: args.out,
        format: args.format,
    };
    let cfg = flag_layer.over(file_layer).resolve()?;
    let rows = run_sweep(&cfg)?;
    let mut buf = Vec::new();
    match cfg.format {
        OutputFormat::Csv => write_csv(&rows, &mut buf)?,
        OutputFormat::Json => write_json(&rows, &mut buf)?,
    }
    emit(cfg.out.as_ref(), &String::from_utf8(buf)?)
}

fn cmd_fit(input: PathBuf, statistic: FitStatistic, n_min: usize) -> Result<()> {
    let text =
        fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
    let rows = parse_csv(&text)?;
    let pairs = pairs_from_rows(&rows, statistic);
    let fit = fit_exponent(&pairs, n_min as f64)?;
    println!("{}", serde_json::to_string_pretty(&fit)?);
    Ok(())
}

fn exact_tables(n_max: usize, stat: ExactStat) -> Result<Vec<ExactDistribution>> {
    if !(2..=9).contains(&n_max) {
        bail!("n_max must be in 2..=9, got {n_max}");
    }
    (2..=n_max)
        .map(|n| {
            let dist = match stat {
                ExactStat::Lis => exact_lis_distribution(n)?,
                ExactStat::Greedy => exact_greedy_distribution(n)?,
            };
            Ok(dist)
        })
        .collect()
}

fn cmd_exact(
    n_max: usize,
    stat: ExactStat,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> Result<()> {
    let tables = exact_tables(n_max, stat)?;
    let text = match format {
        OutputFormat::Csv => {
            let mut text = String::from("n,value,probability\n");
            for dist in &tables {
                for (value, prob) in dist.pmf() {
                    text.push_str(&format!("{},{},{}\n", dist.n(), value, prob));
                }
            }
            text.push_str("\nn,mean\n");
            for dist in &tables {
                text.push_str(&format!("{},{}\n", dist.n(), dist.mean()));
            }
            text
        }
        OutputFormat::Json => {
            let pmf: Vec<serde_json::Value> = tables
                .iter()
                .flat_map(|dist| {
                    dist.pmf().iter().map(|(value, prob)| {
                        serde_json::json!({
                            "n": dist.n(),
                            "value": value,
                            "probability": prob.to_string(),
                        })
                    })
                })
                .collect();
            let means: Vec<serde_json::Value> = tables
                .iter()
                .map(|dist| {
                    serde_json::json!({
                        "n": dist.n(),
                        "mean": dist.mean().to_string(),
                        "mean_f64": dist.mean_f64(),
                    })
                })
                .collect();
            let mut text =
                serde_json::to_string_pretty(&serde_json::json!({ "pmf": pmf, "means": means }))?;
            text.push('\n');
            text
        }
    };
    emit(out.as_ref(), &text)
}

fn cmd_greedy_dp(n_max: usize, format: OutputFormat, out: Option<PathBuf>) -> Result<()> {
    if n_max < 2 {
        bail!("n_max must be at least 2");
    }
    let means = greedy_mean_dp(n_max);
    let dyadic: Vec<(usize, f64)> = (0..)
        .map(|k| 1usize << k)
        .take_while(|&n| n <= n_max)
        .map(|n| (n, means[n - 1]))
        .collect();
    let text = match format {
        OutputFormat::Csv => {
            let mut text = String::from("n,mean\n");
            for &(n, mean) in &dyadic {
                text.push_str(&format!("{n},{mean:.9}\n"));
            }
            text
        }
        OutputFormat::Json => {
            // Slope over the top dyadic decade, when enough points exist.
            let cutoff = (n_max / 64).max(2);
            let pairs: Vec<(f64, f64)> = dyadic
                .iter()
                .map(|&(n, mean)| (n as f64, mean))
                .collect();
            let fit = fit_exponent(&pairs, cutoff as f64).ok();
            let rows: Vec<serde_json::Value> = dyadic
                .iter()
                .map(|&(n, mean)| serde_json::json!({ "n": n, "mean": mean }))
                .collect();
            let mut text = serde_json::to_string_pretty(
                &serde_json::json!({ "rows": rows, "fit": fit }),
            )?;
            text.push('\n');
            text
        }
    };
    emit(out.as_ref(), &text)
}

fn cmd_check(args: CheckArgs) -> Result<()> {
    let params = SuiteParams {
        n: args.n,
        reps: args.reps,
        seed: args.seed,
    };
    let report = run_suite(args.suite, params);
    let text = format!("{}\n", serde_json::to_string_pretty(&report)?);
    if let Some(path) = &args.out {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    print!("{text}");
    if !report.pass {
        std::process::exit(1);
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Constants { tol, quad_tol } => cmd_constants(tol, quad_tol),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Fit {
            input,
            statistic,
            n_min,
        } => cmd_fit(input, statistic, n_min),
        Command::Exact {
            n_max,
            stat,
            format,
            out,
        } => cmd_exact(n_max, stat, format, out),
        Command::GreedyDp {
            n_max,
            format,
            out,
        } => cmd_greedy_dp(n_max, format, out),
        Command::Check(args) => cmd_check(args),
    }
}
