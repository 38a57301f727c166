//! Seeded Monte Carlo sweeps over a grid of walk lengths.
//!
//! Each (n, replica) cell draws its walk from an RNG stream keyed by
//! (master seed, n, replica index), so any scheduling of the work produces
//! the same results; aggregation folds replicas in index order, making the
//! output bytes independent of the worker count.

use std::io::{self, Write};

use fatwalk_core::lis::{greedy_length, lis_trajectory};
use fatwalk_core::rng::mix_key;
use fatwalk_core::walk::{RealWalkSample, WalkError, WalkModel, WalkSample};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::config::ExperimentConfig;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error("row {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub const CSV_HEADER: &str = "model,alpha,n,replicas,mean_L,median_L,var_L,mean_greedy,seed";

/// Summary statistics for one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub model: WalkModel,
    pub n: usize,
    pub replicas: usize,
    pub mean_len: f64,
    pub median_len: f64,
    pub var_len: f64,
    /// Mean greedy subsequence length; tracked for the ultra-fat model only.
    pub mean_greedy: Option<f64>,
    pub seed: u64,
}

#[derive(Serialize)]
struct RowJson {
    model: String,
    alpha: Option<f64>,
    n: usize,
    replicas: usize,
    #[serde(rename = "mean_L")]
    mean_len: f64,
    #[serde(rename = "median_L")]
    median_len: f64,
    #[serde(rename = "var_L")]
    var_len: f64,
    mean_greedy: Option<f64>,
    seed: u64,
}

impl SweepRow {
    fn json_view(&self) -> RowJson {
        RowJson {
            model: self.model.to_string(),
            alpha: self.model.alpha(),
            n: self.n,
            replicas: self.replicas,
            mean_len: self.mean_len,
            median_len: self.median_len,
            var_len: self.var_len,
            mean_greedy: self.mean_greedy,
            seed: self.seed,
        }
    }
}

/// LIS length (and greedy length where tracked) of one replica's walk.
fn simulate_one(model: WalkModel, n: usize, seed: u64) -> Result<(u32, Option<u32>), WalkError> {
    match model {
        WalkModel::UltraFat => {
            let walk = WalkSample::sample_ultrafat(n, seed)?;
            let len = lis_trajectory(&walk).final_len() as u32;
            let greedy = greedy_length(&walk, n) as u32;
            Ok((len, Some(greedy)))
        }
        WalkModel::Stable { alpha } => {
            let walk = RealWalkSample::sample_stable(n, alpha, seed)?;
            Ok((lis_trajectory(&walk).final_len() as u32, None))
        }
        WalkModel::Gaussian => {
            let walk = RealWalkSample::sample_gaussian(n, seed)?;
            Ok((lis_trajectory(&walk).final_len() as u32, None))
        }
    }
}

fn summarize(model: WalkModel, n: usize, seed: u64, cells: Vec<(u32, Option<u32>)>) -> SweepRow {
    let replicas = cells.len();
    let lengths: Vec<u32> = cells.iter().map(|c| c.0).collect();
    let mean_len = lengths.iter().map(|&l| l as f64).sum::<f64>() / replicas as f64;
    let var_len = if replicas > 1 {
        lengths
            .iter()
            .map(|&l| {
                let d = l as f64 - mean_len;
                d * d
            })
            .sum::<f64>()
            / (replicas - 1) as f64
    } else {
        0.0
    };
    let mut sorted = lengths;
    sorted.sort_unstable();
    let median_len = if replicas % 2 == 1 {
        sorted[replicas / 2] as f64
    } else {
        (sorted[replicas / 2 - 1] as f64 + sorted[replicas / 2] as f64) / 2.0
    };
    let mean_greedy = cells[0].1.map(|_| {
        cells
            .iter()
            .map(|c| c.1.expect("greedy tracked for all replicas") as f64)
            .sum::<f64>()
            / replicas as f64
    });
    SweepRow {
        model,
        n,
        replicas,
        mean_len,
        median_len,
        var_len,
        mean_greedy,
        seed,
    }
}

/// Runs the configured sweep: one row per grid point, replicas simulated in
/// parallel on `cfg.workers` threads.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepRow>, SweepError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    pool.install(|| {
        cfg.n_grid
            .iter()
            .map(|&n| {
                // collect() keeps replica order, so the fold below is a
                // fixed-order reduction whatever the thread count.
                let cells: Vec<(u32, Option<u32>)> = (0..cfg.replicas)
                    .into_par_iter()
                    .map(|rep| {
                        let stream = mix_key(&[cfg.seed, n as u64, rep as u64]);
                        simulate_one(cfg.model, n, stream)
                    })
                    .collect::<Result<_, _>>()?;
                Ok(summarize(cfg.model, n, cfg.seed, cells))
            })
            .collect()
    })
}

fn fmt_opt(value: Option<f64>) -> String {
    value.map(|v| format!("{v:.6}")).unwrap_or_default()
}

/// Writes rows as CSV under the fixed header.
pub fn write_csv(rows: &[SweepRow], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{:.6},{:.6},{:.6},{},{}",
            row.model,
            fmt_alpha(row.model.alpha()),
            row.n,
            row.replicas,
            row.mean_len,
            row.median_len,
            row.var_len,
            fmt_opt(row.mean_greedy),
            row.seed,
        )?;
    }
    Ok(())
}

fn fmt_alpha(alpha: Option<f64>) -> String {
    alpha.map(|a| a.to_string()).unwrap_or_default()
}

/// Writes rows as a JSON array with the CSV's field names as keys.
pub fn write_json(rows: &[SweepRow], out: &mut impl Write) -> io::Result<()> {
    let views: Vec<RowJson> = rows.iter().map(SweepRow::json_view).collect();
    let text = serde_json::to_string_pretty(&views).expect("plain structs serialize");
    writeln!(out, "{text}")
}

/// Parses a CSV table produced by `write_csv`.
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, SweepError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(SweepError::Parse {
        line: 1,
        msg: "empty table".into(),
    })?;
    if header.trim() != CSV_HEADER {
        return Err(SweepError::Parse {
            line: 1,
            msg: format!("unexpected header {header:?}"),
        });
    }
    let mut rows = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 9 {
            return Err(SweepError::Parse {
                line,
                msg: format!("expected 9 fields, got {}", fields.len()),
            });
        }
        let err = |msg: String| SweepError::Parse { line, msg };
        let num = |i: usize, name: &str| -> Result<f64, SweepError> {
            fields[i]
                .parse::<f64>()
                .map_err(|_| err(format!("bad {name} {:?}", fields[i])))
        };
        let mut model: WalkModel = fields[0]
            .parse()
            .map_err(|e: String| err(e))?;
        if let WalkModel::Stable { .. } = model {
            let alpha = num(1, "alpha")?;
            model = WalkModel::Stable { alpha };
        }
        let mean_greedy = if fields[7].is_empty() {
            None
        } else {
            Some(num(7, "mean_greedy")?)
        };
        rows.push(SweepRow {
            model,
            n: fields[2]
                .parse()
                .map_err(|_| err(format!("bad n {:?}", fields[2])))?,
            replicas: fields[3]
                .parse()
                .map_err(|_| err(format!("bad replicas {:?}", fields[3])))?,
            mean_len: num(4, "mean_L")?,
            median_len: num(5, "median_L")?,
            var_len: num(6, "var_L")?,
            mean_greedy,
            seed: fields[8]
                .parse()
                .map_err(|_| err(format!("bad seed {:?}", fields[8])))?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::OutputFormat;

    fn small_cfg(model: WalkModel, workers: usize) -> ExperimentConfig {
        ExperimentConfig {
            model,
            n_grid: vec![8, 16, 32],
            replicas: 40,
            seed: 11,
            workers,
            out: None,
            format: OutputFormat::Csv,
        }
    }

    #[test]
    fn sweep_is_deterministic_across_worker_counts() {
        for model in [
            WalkModel::UltraFat,
            WalkModel::Stable { alpha: 1.25 },
            WalkModel::Gaussian,
        ] {
            let one = run_sweep(&small_cfg(model, 1)).unwrap();
            let eight = run_sweep(&small_cfg(model, 8)).unwrap();
            assert_eq!(one, eight);
            let mut a = Vec::new();
            let mut b = Vec::new();
            write_csv(&one, &mut a).unwrap();
            write_csv(&eight, &mut b).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn greedy_tracked_only_for_ultrafat() {
        let rows = run_sweep(&small_cfg(WalkModel::UltraFat, 2)).unwrap();
        assert!(rows.iter().all(|r| r.mean_greedy.is_some()));
        let rows = run_sweep(&small_cfg(WalkModel::Gaussian, 2)).unwrap();
        assert!(rows.iter().all(|r| r.mean_greedy.is_none()));
    }

    #[test]
    fn csv_round_trips() {
        let rows = run_sweep(&small_cfg(WalkModel::Stable { alpha: 0.75 }, 2)).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let parsed = parse_csv(&text).unwrap();
        assert_eq!(parsed.len(), rows.len());
        for (p, r) in parsed.iter().zip(&rows) {
            assert_eq!(p.model, r.model);
            assert_eq!(p.n, r.n);
            assert_eq!(p.replicas, r.replicas);
            assert!((p.mean_len - r.mean_len).abs() < 1e-6);
            assert_eq!(p.mean_greedy, None);
            assert_eq!(p.seed, r.seed);
        }
    }

    #[test]
    fn parse_rejects_malformed_tables() {
        assert!(parse_csv("").is_err());
        assert!(parse_csv("wrong,header\n").is_err());
        let text = format!("{CSV_HEADER}\nultrafat,,8,10,2.0,2.0\n");
        assert!(parse_csv(&text).is_err());
    }

    #[test]
    fn median_and_variance_match_hand_counts() {
        // Lengths 1,2,2,5: mean 2.5, median 2, var (2.25+0.25+0.25+6.25)/3 = 3.
        let cells = vec![(1, None), (2, None), (2, None), (5, None)];
        let row = summarize(WalkModel::Gaussian, 4, 0, cells);
        assert_eq!(row.mean_len, 2.5);
        assert_eq!(row.median_len, 2.0);
        assert!((row.var_len - 3.0).abs() < 1e-12);
    }

    #[test]
    fn short_ultrafat_mean_matches_enumeration() {
        // E L(3) = 2 exactly, Var L(3) <= 1; 3 standard errors at 20k reps.
        let cfg = ExperimentConfig {
            model: WalkModel::UltraFat,
            n_grid: vec![3],
            replicas: 20_000,
            seed: 5,
            workers: 1,
            out: None,
            format: OutputFormat::Csv,
        };
        let rows = run_sweep(&cfg).unwrap();
        let se = (1.0f64 / 20_000.0).sqrt();
        assert!((rows[0].mean_len - 2.0).abs() < 3.0 * se, "{}", rows[0].mean_len);
    }
}
