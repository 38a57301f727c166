//! Power-law exponent estimation by least squares on log-log pairs.

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

use crate::sweep::SweepRow;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("need at least 4 grid points with n >= {cutoff}, got {points}")]
    TooFewPoints { points: usize, cutoff: usize },
    #[error("statistic must be positive to fit a power law (n = {n})")]
    NonPositiveStatistic { n: usize },
}

/// Which summary column of a sweep to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitStatistic {
    Mean,
    Median,
    Greedy,
}

impl std::str::FromStr for FitStatistic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mean" => Ok(FitStatistic::Mean),
            "median" => Ok(FitStatistic::Median),
            "greedy" => Ok(FitStatistic::Greedy),
            other => Err(format!(
                "unknown statistic {other:?}, expected mean|median|greedy"
            )),
        }
    }
}

/// Least-squares slope of `log y` against `log n` with its standard error
/// and a 95% confidence interval (Student t, m - 2 degrees of freedom).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub std_err: f64,
    pub ci95: (f64, f64),
    /// The (n, statistic) pairs the fit used.
    pub points: Vec<(f64, f64)>,
}

/// Fits `y = c * n^slope` to the pairs with `n >= n_min`.
pub fn fit_exponent(pairs: &[(f64, f64)], n_min: f64) -> Result<ExponentFit, FitError> {
    let points: Vec<(f64, f64)> = pairs
        .iter()
        .copied()
        .filter(|&(n, _)| n >= n_min)
        .collect();
    if points.len() < 4 {
        return Err(FitError::TooFewPoints {
            points: points.len(),
            cutoff: n_min as usize,
        });
    }
    for &(n, y) in &points {
        if y <= 0.0 {
            return Err(FitError::NonPositiveStatistic { n: n as usize });
        }
    }
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let xbar = xs.iter().sum::<f64>() / m;
    let ybar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let dof = m - 2.0;
    let std_err = (sse.max(0.0) / dof / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, dof)
        .expect("dof >= 2")
        .inverse_cdf(0.975);
    Ok(ExponentFit {
        slope,
        intercept,
        std_err,
        ci95: (slope - t * std_err, slope + t * std_err),
        points,
    })
}

/// Extracts `(n, statistic)` pairs from sweep rows.
pub fn pairs_from_rows(rows: &[SweepRow], stat: FitStatistic) -> Vec<(f64, f64)> {
    rows.iter()
        .filter_map(|row| {
            let y = match stat {
                FitStatistic::Mean => Some(row.mean_len),
                FitStatistic::Median => Some(row.median_len),
                FitStatistic::Greedy => row.mean_greedy,
            }?;
            Some((row.n as f64, y))
        })
        .collect()
}

/// Two fits agree when each slope lies inside the other's 95% interval or
/// the intervals overlap.
pub fn intervals_overlap(a: &ExponentFit, b: &ExponentFit) -> bool {
    a.ci95.0 <= b.ci95.1 && b.ci95.0 <= a.ci95.1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power_table(c: f64, exponent: f64) -> Vec<(f64, f64)> {
        (4..=10)
            .map(|k| {
                let n = (1u64 << k) as f64;
                (n, c * n.powf(exponent))
            })
            .collect()
    }

    #[test]
    fn exact_power_law_recovers_exponent() {
        let fit = fit_exponent(&power_table(1.0, 0.7), 0.0).unwrap();
        assert!((fit.slope - 0.7).abs() < 1e-12);
        assert!(fit.std_err < 1e-12);
        assert!(fit.ci95.0 <= fit.slope && fit.slope <= fit.ci95.1);
    }

    #[test]
    fn intercept_is_log_prefactor() {
        let fit = fit_exponent(&power_table(3.0, 0.5), 0.0).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-12);
        assert!((fit.intercept - 3.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn cutoff_and_count_rules() {
        let table = power_table(1.0, 0.7);
        // Cutoff keeps 4 points: fine. Cutoff keeps 3: error.
        assert!(fit_exponent(&table, 128.0).is_ok());
        let err = fit_exponent(&table, 129.0).unwrap_err();
        assert_eq!(
            err,
            FitError::TooFewPoints {
                points: 3,
                cutoff: 129
            }
        );
        assert!(matches!(
            fit_exponent(&[(8.0, 1.0), (16.0, 2.0), (32.0, 0.0), (64.0, 2.0)], 0.0),
            Err(FitError::NonPositiveStatistic { n: 32 })
        ));
    }

    #[test]
    fn noisy_law_lands_inside_interval() {
        // Deterministic +-2% relative perturbation around n^0.72.
        let table: Vec<(f64, f64)> = (4..=12)
            .map(|k| {
                let n = (1u64 << k) as f64;
                let bump = if k % 2 == 0 { 1.02 } else { 0.98 };
                (n, n.powf(0.72) * bump)
            })
            .collect();
        let fit = fit_exponent(&table, 0.0).unwrap();
        assert!(fit.ci95.0 <= 0.72 && 0.72 <= fit.ci95.1, "{fit:?}");
        assert!(fit.std_err > 0.0);
    }
}
