//! Named verification suites behind the `check` subcommand.
//!
//! Each suite runs a batch of checks against the library and returns a
//! machine-readable report; the CLI maps the overall verdict to the process
//! exit code.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use fatwalk_core::exact;
use fatwalk_core::lis::{
    check_subadditivity, check_superadditivity, lis_trajectory, verify_split_recursion,
};
use fatwalk_core::numerics::{
    c_beta, solve_beta0, solve_beta0_via_c, solve_beta1, upper_functional, BETA0, BETA1,
};
use fatwalk_core::rng::mix_key;
use fatwalk_core::walk::{tail_dominance_frequency, WalkModel, WalkSample};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteName {
    Nbu,
    Recursion,
    Subadd,
    Domination,
    Constants,
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nbu" => Ok(SuiteName::Nbu),
            "recursion" => Ok(SuiteName::Recursion),
            "subadd" => Ok(SuiteName::Subadd),
            "domination" => Ok(SuiteName::Domination),
            "constants" => Ok(SuiteName::Constants),
            other => Err(format!(
                "unknown suite {other:?}, expected nbu|recursion|subadd|domination|constants"
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            pass: true,
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.pass &= pass;
        self.checks.push(CheckLine {
            name: name.to_string(),
            pass,
            detail,
        });
    }
}

/// Common knobs for the sampled suites.
#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
}

pub fn run_suite(name: SuiteName, params: SuiteParams) -> SuiteReport {
    match name {
        SuiteName::Constants => constants_suite(),
        SuiteName::Recursion => recursion_suite(params),
        SuiteName::Subadd => subadd_suite(params),
        SuiteName::Domination => domination_suite(params),
        SuiteName::Nbu => nbu_suite(params),
    }
}

fn replica_walk(params: SuiteParams, rep: usize) -> WalkSample {
    let stream = mix_key(&[params.seed, params.n as u64, rep as u64]);
    WalkSample::sample_ultrafat(params.n, stream).expect("validated n")
}

/// Both exponent constants, each solved two independent ways.
pub fn constants_suite() -> SuiteReport {
    let mut report = SuiteReport::new("constants");
    match solve_beta0(1e-9) {
        Ok(r) => {
            report.push(
                "beta0_root",
                (r.root - BETA0).abs() <= 1e-6 && r.residual.abs() <= 1e-9,
                format!("root = {:.12}, residual = {:.3e}", r.root, r.residual),
            );
            match solve_beta0_via_c(1e-10) {
                Ok(dual) => report.push(
                    "beta0_dual_route",
                    (dual.root - r.root).abs() <= 1e-9,
                    format!("|direct - via_c| = {:.3e}", (dual.root - r.root).abs()),
                ),
                Err(e) => report.push("beta0_dual_route", false, e.to_string()),
            }
            report.push(
                "c_beta_unit_crossing",
                (c_beta(r.root) - 1.0).abs() <= 1e-9,
                format!("c_beta(root) = {:.12}", c_beta(r.root)),
            );
        }
        Err(e) => report.push("beta0_root", false, e.to_string()),
    }
    match solve_beta1(1e-8, 1e-10) {
        Ok(r) => {
            report.push(
                "beta1_root",
                (r.root - BETA1).abs() <= 1e-5 && r.residual.abs() <= 1e-8,
                format!("root = {:.12}, residual = {:.3e}", r.root, r.residual),
            );
            let f = upper_functional(r.root, 1e-10).map(|v| (v - 1.0).abs());
            report.push(
                "beta1_unit_value",
                matches!(f, Ok(gap) if gap <= 1e-6),
                format!("|F(root) - 1| = {f:?}"),
            );
        }
        Err(e) => report.push("beta1_root", false, e.to_string()),
    }
    report
}

/// Pointwise split identity on sampled walks.
pub fn recursion_suite(params: SuiteParams) -> SuiteReport {
    let mut report = SuiteReport::new("recursion");
    let mut violations = 0usize;
    for rep in 0..params.reps {
        let walk = replica_walk(params, rep);
        if !verify_split_recursion(&walk, params.n).holds {
            violations += 1;
        }
    }
    report.push(
        "split_identity",
        violations == 0,
        format!(
            "{violations} violations in {} walks at n = {}",
            params.reps, params.n
        ),
    );
    report
}

/// Cut subadditivity and first-passage superadditivity on sampled walks.
pub fn subadd_suite(params: SuiteParams) -> SuiteReport {
    let mut report = SuiteReport::new("subadd");
    let n = params.n;
    let mut sub_violations = 0usize;
    let mut super_violations = 0usize;
    let mut super_checked = 0usize;
    for rep in 0..params.reps {
        let walk = replica_walk(params, rep);
        for s in [1, n / 2] {
            if s >= 1 && n - s >= 1 && !check_subadditivity(&walk, s, n - s) {
                sub_violations += 1;
            }
        }
        let traj = lis_trajectory(&walk);
        let total = traj.final_len();
        if total >= 2 {
            let pairs: BTreeSet<(usize, usize)> = [
                (1, total - 1),
                (total / 2, total - total / 2),
                (total - 1, 1),
            ]
            .into_iter()
            .collect();
            for (l, m) in pairs {
                if let Some(holds) = check_superadditivity(&walk, &traj, l, m) {
                    super_checked += 1;
                    if !holds {
                        super_violations += 1;
                    }
                }
            }
        }
    }
    report.push(
        "cut_subadditivity",
        sub_violations == 0,
        format!(
            "{sub_violations} violations in {} walks at n = {n}",
            params.reps
        ),
    );
    report.push(
        "passage_superadditivity",
        super_violations == 0,
        format!("{super_violations} violations in {super_checked} checked pairs"),
    );
    report
}

/// Frequency of the largest step dominating the rest of the walk, across
/// stability indices. Heavier tails must dominate more often.
pub fn domination_suite(params: SuiteParams) -> SuiteReport {
    let mut report = SuiteReport::new("domination");
    let alphas = [0.25, 1.0, 2.0];
    let mut freqs = Vec::new();
    for &alpha in &alphas {
        match tail_dominance_frequency(
            WalkModel::Stable { alpha },
            params.n,
            params.reps,
            params.seed,
        ) {
            Ok(f) => freqs.push(f),
            Err(e) => {
                report.push("dominance_frequency", false, e.to_string());
                return report;
            }
        }
    }
    let mut detail = String::new();
    for (alpha, f) in alphas.iter().zip(&freqs) {
        let _ = write!(detail, "alpha {alpha}: {f:.4}; ");
    }
    let strictly_decreasing = freqs.windows(2).all(|w| w[0] > w[1]);
    report.push(
        "strictly_decreasing_in_alpha",
        strictly_decreasing,
        detail.trim_end().to_string(),
    );
    report
}

/// Monte Carlo tail-submultiplicativity of the LIS length at a fixed time,
/// over every level pair the sample can resolve.
pub fn nbu_suite(params: SuiteParams) -> SuiteReport {
    let mut report = SuiteReport::new("nbu");
    let samples: Vec<usize> = (0..params.reps)
        .map(|rep| {
            let walk = replica_walk(params, rep);
            lis_trajectory(&walk).final_len()
        })
        .collect();
    let top = samples.iter().copied().max().unwrap_or(0);
    let mut violations = 0usize;
    let mut worst_z = f64::NEG_INFINITY;
    let mut worst_pair = (0, 0);
    let mut pairs = 0usize;
    for a in 1..=top {
        for b in a..=top {
            if a + b > top + 1 {
                break;
            }
            pairs += 1;
            let est = exact::empirical_nbu_check(&samples, a, b);
            if est.z > worst_z {
                worst_z = est.z;
                worst_pair = (a, b);
            }
            if est.violation {
                violations += 1;
            }
        }
    }
    report.push(
        "no_three_sigma_violation",
        violations == 0,
        format!(
            "{violations} violations over {pairs} pairs at n = {}, reps = {}; worst z = {worst_z:.2} at {worst_pair:?}",
            params.n, params.reps
        ),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!("nbu".parse::<SuiteName>().unwrap(), SuiteName::Nbu);
        assert_eq!(
            "constants".parse::<SuiteName>().unwrap(),
            SuiteName::Constants
        );
        assert!("spectral".parse::<SuiteName>().is_err());
    }

    #[test]
    fn constants_suite_passes() {
        let report = constants_suite();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.checks.len(), 5);
    }

    #[test]
    fn sampled_suites_pass_at_small_scale() {
        let params = SuiteParams {
            n: 48,
            reps: 300,
            seed: 3,
        };
        for name in [SuiteName::Recursion, SuiteName::Subadd, SuiteName::Nbu] {
            let report = run_suite(name, params);
            assert!(report.pass, "{report:?}");
        }
    }

    #[test]
    fn domination_suite_orders_alphas() {
        let report = domination_suite(SuiteParams {
            n: 100,
            reps: 2000,
            seed: 9,
        });
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn report_serializes_to_json() {
        let report = recursion_suite(SuiteParams {
            n: 12,
            reps: 20,
            seed: 1,
        });
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"suite\":\"recursion\""));
        assert!(text.contains("split_identity"));
    }
}
