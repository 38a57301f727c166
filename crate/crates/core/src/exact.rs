//! Exact small-n analysis in rational arithmetic.
//!
//! For an ultra-fat walk, the order statistics that decide every comparison
//! are the magnitude *ranks* of steps 2..n together with their signs (step 1
//! never decides anything: a comparison between `S_i` and `S_j` looks only at
//! steps `i+1..=j`, and `i >= 1` everywhere LIS cares). Ranks are uniform over
//! the (n-1)! permutations and independent of the 2^(n-1) sign patterns, so
//! the full law of `L(n)` (or of the greedy length) is an exact finite sum.
//!
//! On top of the enumerated laws sit the inequality checkers for the NBU
//! family: tail domination against the mean-matched geometric, convex
//! domination, the quantile bound, and the min-of-two lower bound. All of
//! them are evaluated in `BigRational`, no floating point anywhere.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

/// Errors from the exact-analysis operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    #[error("exact enumeration supports 2 <= n <= 9, got {0}")]
    UnsupportedN(usize),
    #[error("distribution mean must be positive")]
    NonPositiveMean,
    #[error("test function is not convex: second difference at {0} is negative")]
    NotConvex(usize),
}

/// Shorthand for an exact fraction.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact probability mass function of an integer statistic of an `n`-step
/// walk (LIS length or greedy length), with support in `0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDistribution {
    n: usize,
    pmf: BTreeMap<usize, BigRational>,
}

impl ExactDistribution {
    /// Distribution concentrated at `value` (used for the `L(0) = 0` and
    /// `L(1) = 1` base cases of the recursions).
    pub fn point_mass(n: usize, value: usize) -> Self {
        assert!(value <= n, "support must lie in 0..=n");
        let mut pmf = BTreeMap::new();
        pmf.insert(value, BigRational::one());
        ExactDistribution { n, pmf }
    }

    fn from_counts(n: usize, counts: &[u64], total: u64) -> Self {
        debug_assert_eq!(counts.iter().sum::<u64>(), total);
        let total = BigInt::from(total);
        let pmf = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v, BigRational::new(BigInt::from(c), total.clone())))
            .collect();
        ExactDistribution { n, pmf }
    }

    /// Instance size the distribution was computed for.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The mass function, keyed by value; zero-probability values absent.
    pub fn pmf(&self) -> &BTreeMap<usize, BigRational> {
        &self.pmf
    }

    /// Exact probability of `value`.
    pub fn prob(&self, value: usize) -> BigRational {
        self.pmf.get(&value).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Exact tail `P(X >= k)`.
    pub fn tail(&self, k: usize) -> BigRational {
        self.pmf
            .iter()
            .filter(|&(&v, _)| v >= k)
            .map(|(_, p)| p)
            .sum()
    }

    /// Largest value with positive probability.
    pub fn max_value(&self) -> usize {
        self.pmf.keys().next_back().copied().unwrap_or(0)
    }

    /// Exact mean.
    pub fn mean(&self) -> BigRational {
        self.pmf
            .iter()
            .map(|(&v, p)| p * BigRational::from(BigInt::from(v)))
            .sum()
    }

    /// Mean as f64 (exact value rounded once).
    pub fn mean_f64(&self) -> f64 {
        self.mean().to_f64().expect("small rational fits in f64")
    }

    /// Exact expectation of `phi(X)`.
    pub fn expectation(&self, phi: impl Fn(usize) -> BigRational) -> BigRational {
        self.pmf.iter().map(|(&v, p)| p * phi(v)).sum()
    }
}

/// Per-permutation comparison tables: `argmax[i][j]` is the position of the
/// largest magnitude rank among steps `i+1..=j` (1-based positions, ranks
/// attached to positions 2..=n only, which is all any window ever contains).
struct PermTables {
    n: usize,
    argmax: Vec<u8>,
}

impl PermTables {
    /// `ranks[p-2]` is the magnitude rank of position `p`, `p = 2..=n`.
    fn new(n: usize, ranks: &[u8]) -> Self {
        debug_assert_eq!(ranks.len(), n - 1);
        let dim = n + 1;
        let mut argmax = vec![0u8; dim * dim];
        for i in 1..n {
            let mut best = i + 1;
            argmax[i * dim + i + 1] = best as u8;
            for j in i + 2..=n {
                if ranks[j - 2] > ranks[best - 2] {
                    best = j;
                }
                argmax[i * dim + j] = best as u8;
            }
        }
        PermTables { n, argmax }
    }

    /// Position of the dominant step in the window `i+1..=j`, `1 <= i < j <= n`.
    #[inline]
    fn dominant(&self, i: usize, j: usize) -> usize {
        self.argmax[i * (self.n + 1) + j] as usize
    }

    /// True when `S_i < S_j` for `i < j` under sign pattern `mask`
    /// (bit `p-2` set means step `p` is an up step).
    #[inline]
    fn less(&self, i: usize, j: usize, mask: u32) -> bool {
        mask >> (self.dominant(i, j) - 2) & 1 == 1
    }
}

/// O(n^2) LIS of `S_1..S_n`; deliberately a different algorithm from the
/// patience-sorting engine so the two routes check each other.
#[allow(clippy::needless_range_loop)]
fn lis_len(n: usize, tables: &PermTables, mask: u32) -> usize {
    let mut best = [0u8; 10];
    let mut answer = 1u8;
    for t in 1..=n {
        let mut b = 1u8;
        for i in 1..t {
            if tables.less(i, t, mask) && best[i] + 1 > b {
                b = best[i] + 1;
            }
        }
        best[t] = b;
        answer = answer.max(b);
    }
    answer as usize
}

/// Greedy increasing-subsequence length by the same segment rules as
/// `lis::greedy_length`, but driven by rank tables instead of a range-max
/// index (independent implementation, same construction).
fn greedy_len(n: usize, tables: &PermTables, mask: u32) -> usize {
    let mut total = 0usize;
    let mut stack: Vec<(usize, usize)> = vec![(0, n)];
    while let Some((m, e)) = stack.pop() {
        let size = e - m;
        if size <= 1 {
            total += size;
            continue;
        }
        let s = tables.dominant(m + 1, e);
        if mask >> (s - 2) & 1 == 1 {
            stack.push((m, s - 1));
            stack.push((s - 1, e));
        } else {
            let left = s - 1 - m;
            let right = e - s + 1;
            if left >= right {
                stack.push((m, s - 1));
            } else {
                stack.push((s - 1, e));
            }
        }
    }
    total
}

/// Enumerates all (rank permutation, sign pattern) pairs of an `n`-step walk
/// and tallies `stat`. Parallel over permutations; the reduction is an
/// order-independent elementwise sum, so results are schedule-independent.
fn enumerate_distribution(
    n: usize,
    stat: impl Fn(usize, &PermTables, u32) -> usize + Sync,
) -> Result<ExactDistribution, ExactError> {
    if !(2..=9).contains(&n) {
        return Err(ExactError::UnsupportedN(n));
    }
    let positions = n - 1;
    let sign_patterns = 1u32 << positions;
    let perms: Vec<Vec<u8>> = (1..=positions as u8).permutations(positions).collect();
    let counts = perms
        .par_iter()
        .map(|ranks| {
            let tables = PermTables::new(n, ranks);
            let mut local = [0u64; 10];
            for mask in 0..sign_patterns {
                local[stat(n, &tables, mask)] += 1;
            }
            local
        })
        .reduce(
            || [0u64; 10],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let total = perms.len() as u64 * sign_patterns as u64;
    Ok(ExactDistribution::from_counts(n, &counts, total))
}

/// Exact law of the LIS length `L(n)`, `2 <= n <= 9`
/// (cost `(n-1)! * 2^(n-1)` evaluations).
pub fn exact_lis_distribution(n: usize) -> Result<ExactDistribution, ExactError> {
    enumerate_distribution(n, lis_len)
}

/// Exact law of the greedy increasing-subsequence length, `2 <= n <= 9`.
pub fn exact_greedy_distribution(n: usize) -> Result<ExactDistribution, ExactError> {
    enumerate_distribution(n, greedy_len)
}

/// Exact `E[max(X, Y)]` for independent `X ~ d1`, `Y ~ d2`.
pub fn expected_max(d1: &ExactDistribution, d2: &ExactDistribution) -> BigRational {
    let mut acc = BigRational::zero();
    for (&v, p) in d1.pmf() {
        for (&w, q) in d2.pmf() {
            acc += p * q * BigRational::from(BigInt::from(v.max(w)));
        }
    }
    acc
}

/// Exact `E[min(X, Y)]` for independent `X ~ d1`, `Y ~ d2`, evaluated through
/// the tail identity `E min = sum_{k>=1} P(X >= k) P(Y >= k)`.
pub fn expected_min(d1: &ExactDistribution, d2: &ExactDistribution) -> BigRational {
    let top = d1.max_value().min(d2.max_value());
    (1..=top).map(|k| d1.tail(k) * d2.tail(k)).sum()
}

/// Both sides of the exact mean recursion at size `n`.
///
/// Conditioning on the position `k = sigma(n)` of the dominant step (uniform
/// on 2..=n) and its sign (fair, independent) splits `L(n)` into independent
/// copies of `L(k-1)` and `L(n-k+1)`:
///
/// ```text
/// a_n = (1/(2(n-1))) sum_{k=2}^{n} [ a_{k-1} + a_{n-k+1} ]
///     + (1/(2(n-1))) sum_{k=2}^{n} E max{ L(k-1), L(n-k+1) }
/// ```
///
/// `holds` is exact rational equality of the enumerated `a_n` with the
/// right-hand side assembled from the smaller enumerated laws.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionCheck {
    pub n: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

/// Verifies the mean recursion at size `n` (2..=9) in exact arithmetic.
pub fn verify_mean_recursion(n: usize) -> Result<RecursionCheck, ExactError> {
    if !(2..=9).contains(&n) {
        return Err(ExactError::UnsupportedN(n));
    }
    let dist = |k: usize| -> Result<ExactDistribution, ExactError> {
        match k {
            0 => Ok(ExactDistribution::point_mass(0, 0)),
            1 => Ok(ExactDistribution::point_mass(1, 1)),
            _ => exact_lis_distribution(k),
        }
    };
    let laws: Vec<ExactDistribution> = (0..n).map(dist).collect::<Result<_, _>>()?;
    let lhs = exact_lis_distribution(n)?.mean();
    let mut rhs = BigRational::zero();
    for k in 2..=n {
        let left = &laws[k - 1];
        let right = &laws[n - k + 1];
        rhs += left.mean() + right.mean() + expected_max(left, right);
    }
    rhs /= BigRational::from(BigInt::from(2 * (n - 1)));
    let holds = lhs == rhs;
    Ok(RecursionCheck { n, lhs, rhs, holds })
}

/// Tail quantities of a law next to its mean-matched geometric-from-zero:
/// `a[k] = P(X >= k)`, `big_a[k] = sum_{j>=k} a[j]`, and for the geometric
/// with the same mean `mu` (i.e. `P(Y = k) = (1/(1+mu)) (mu/(1+mu))^k`),
/// `g[k] = (mu/(1+mu))^k` and `big_g[k] = (1+mu) g[k] = sum_{j>=k} g[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailSums {
    pub a: Vec<BigRational>,
    pub big_a: Vec<BigRational>,
    pub g: Vec<BigRational>,
    pub big_g: Vec<BigRational>,
    pub mean: BigRational,
}

/// Builds [`TailSums`] for indices `0..=len`. Requires a positive mean.
pub fn tail_sums(d: &ExactDistribution, len: usize) -> Result<TailSums, ExactError> {
    let mean = d.mean();
    if mean <= BigRational::zero() {
        return Err(ExactError::NonPositiveMean);
    }
    let a: Vec<BigRational> = (0..=len).map(|k| d.tail(k)).collect();
    // big_a[k] = sum_{j >= k} a_j; a_j = 0 beyond the support, so the
    // truncated suffix sum is exact.
    let top = d.max_value();
    let mut suffix = BigRational::zero();
    let mut big_a = vec![BigRational::zero(); len + 1];
    for k in (0..=len).rev() {
        if k <= top {
            suffix += &a[k];
        }
        big_a[k] = suffix.clone();
    }
    let rho = &mean / (BigRational::one() + &mean);
    let mut g = Vec::with_capacity(len + 1);
    let mut gk = BigRational::one();
    for _ in 0..=len {
        g.push(gk.clone());
        gk *= &rho;
    }
    let one_plus_mu = BigRational::one() + &mean;
    let big_g = g.iter().map(|gk| gk * &one_plus_mu).collect();
    Ok(TailSums {
        a,
        big_a,
        g,
        big_g,
        mean,
    })
}

/// Outcome of the tail-domination check `big_a[k] <= big_g[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DominationReport {
    pub holds: bool,
    /// First index violating the inequality, if any.
    pub first_violation: Option<usize>,
    /// Largest value of `big_a[k] - big_g[k]` over the checked range
    /// (nonpositive exactly when the check passes).
    pub max_gap: BigRational,
    /// Inclusive upper end of the checked index range.
    pub checked_up_to: usize,
}

/// Checks `sum_{j>=k} P(X >= j) <= (1+mu)(mu/(1+mu))^k` for
/// `k = 0..=max_value+2`. Beyond the support `big_a` is 0 and `big_g` is
/// positive, so the finite range decides the full statement.
pub fn check_tail_domination(d: &ExactDistribution) -> Result<DominationReport, ExactError> {
    let len = d.max_value() + 2;
    let ts = tail_sums(d, len)?;
    let mut first_violation = None;
    let mut max_gap: Option<BigRational> = None;
    for k in 0..=len {
        let gap = &ts.big_a[k] - &ts.big_g[k];
        if gap > BigRational::zero() && first_violation.is_none() {
            first_violation = Some(k);
        }
        max_gap = Some(match max_gap {
            Some(m) if m >= gap => m,
            _ => gap,
        });
    }
    Ok(DominationReport {
        holds: first_violation.is_none(),
        first_violation,
        max_gap: max_gap.expect("nonempty range"),
        checked_up_to: len,
    })
}

/// Outcome of the convex-domination certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexReport {
    pub holds: bool,
    /// `E phi(X) - E phi(Y)` truncated to the support window: by double
    /// summation by parts this equals
    /// `sum_{m=2}^{max+1} (second difference of phi at m-2) (big_a[m] - big_g[m])`
    /// plus tail terms that are nonpositive for convex phi, so a nonpositive
    /// value certifies `E phi(X) <= E phi(Y)` exactly.
    pub truncated_diff: BigRational,
    /// Exact `E phi(X)` for reference.
    pub e_phi: BigRational,
}

/// Certifies `E phi(X) <= E phi(Y)` for convex nondecreasing-difference
/// `phi`, `Y` the mean-matched geometric-from-zero. Convexity is pre-checked
/// by finite second differences over the window actually used; a non-convex
/// `phi` is rejected.
pub fn check_convex_domination(
    d: &ExactDistribution,
    phi: impl Fn(usize) -> BigRational,
) -> Result<ConvexReport, ExactError> {
    let top = d.max_value();
    let len = top + 2;
    // Convexity certificate: second differences at 0..=top+1 cover every
    // coefficient that enters the sum below (and the first neglected one).
    for j in 0..=top + 1 {
        let dd = phi(j + 2) - ratio(2, 1) * phi(j + 1) + phi(j);
        if dd < BigRational::zero() {
            return Err(ExactError::NotConvex(j));
        }
    }
    let ts = tail_sums(d, len)?;
    let mut diff = BigRational::zero();
    for m in 2..=top + 1 {
        let dd = phi(m) - ratio(2, 1) * phi(m - 1) + phi(m - 2);
        diff += dd * (&ts.big_a[m] - &ts.big_g[m]);
    }
    let e_phi = d.expectation(&phi);
    Ok(ConvexReport {
        holds: diff <= BigRational::zero(),
        truncated_diff: diff,
        e_phi,
    })
}

/// Outcome of the quantile bound `E X <= q / P(X < q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileReport {
    pub q: usize,
    /// `P(X < q)`.
    pub epsilon: BigRational,
    /// `q / epsilon`, absent when the bound is vacuous.
    pub bound: Option<BigRational>,
    pub mean: BigRational,
    /// True when the bound holds (vacuously true when `epsilon = 0`).
    pub holds: bool,
    /// True when `epsilon = 0` and there was nothing to check.
    pub vacuous: bool,
}

/// Checks the quantile bound for an NBU law: with `eps = P(X < q) > 0`,
/// `E X <= q / eps`. When `eps = 0` the bound is vacuous and reported as
/// skipped rather than failed.
pub fn check_quantile_bound(d: &ExactDistribution, q: usize) -> QuantileReport {
    let epsilon = BigRational::one() - d.tail(q);
    let mean = d.mean();
    if epsilon.is_zero() {
        return QuantileReport {
            q,
            epsilon,
            bound: None,
            mean,
            holds: true,
            vacuous: true,
        };
    }
    let bound = BigRational::from(BigInt::from(q)) / &epsilon;
    QuantileReport {
        q,
        epsilon,
        holds: mean <= bound,
        bound: Some(bound),
        mean,
        vacuous: false,
    }
}

/// The min-of-NBU lower bound `ab / (a + b + 1)` for means `a`, `b`.
pub fn min_nbu_bound(a: &BigRational, b: &BigRational) -> BigRational {
    a * b / (a + b + BigRational::one())
}

/// Outcome of the min-of-NBU check.
#[derive(Debug, Clone, PartialEq)]
pub struct MinBoundReport {
    pub e_min: BigRational,
    pub bound: BigRational,
    pub holds: bool,
}

/// Checks `E min(X, Y) >= ab/(a+b+1)` for independent `X ~ d1`, `Y ~ d2`
/// with means `a`, `b`, all in exact arithmetic.
pub fn check_min_bound(d1: &ExactDistribution, d2: &ExactDistribution) -> MinBoundReport {
    let e_min = expected_min(d1, d2);
    let bound = min_nbu_bound(&d1.mean(), &d2.mean());
    MinBoundReport {
        holds: e_min >= bound,
        e_min,
        bound,
    }
}

/// Distribution-level NBU check: `P(X >= a+b) <= P(X >= a) P(X >= b)` for
/// all `a, b >= 1` (pairs beyond the support are trivially fine).
#[derive(Debug, Clone, PartialEq)]
pub struct NbuDistReport {
    pub holds: bool,
    /// A violating pair `(a, b)` if one exists.
    pub worst_pair: Option<(usize, usize)>,
}

/// Checks the NBU property of an exact law over its whole support.
pub fn check_nbu_distribution(d: &ExactDistribution) -> NbuDistReport {
    let top = d.max_value();
    for a in 1..=top {
        for b in a..=top {
            if d.tail(a + b) > d.tail(a) * d.tail(b) {
                return NbuDistReport {
                    holds: false,
                    worst_pair: Some((a, b)),
                };
            }
        }
    }
    NbuDistReport {
        holds: true,
        worst_pair: None,
    }
}

/// Monte Carlo NBU estimate on integer samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbuEstimate {
    /// `phat(X >= a+b) - phat(X >= a) phat(X >= b)`; nonpositive in
    /// expectation for NBU laws.
    pub diff: f64,
    /// Delta-method standard error of `diff`.
    pub std_err: f64,
    /// `diff / std_err` (0 when the standard error vanishes).
    pub z: f64,
    /// True when `diff` exceeds +3 standard errors.
    pub violation: bool,
}

/// Estimates `P(X >= a+b) - P(X >= a) P(X >= b)` from samples with a
/// delta-method standard error, flagging a violation only beyond +3 standard
/// errors. With `a = 0` or `b = 0` the difference is identically zero.
pub fn empirical_nbu_check(samples: &[usize], a: usize, b: usize) -> NbuEstimate {
    assert!(!samples.is_empty(), "need at least one sample");
    let n = samples.len() as f64;
    let (mut c_ab, mut c_a, mut c_b) = (0u64, 0u64, 0u64);
    for &x in samples {
        c_ab += (x >= a + b) as u64;
        c_a += (x >= a) as u64;
        c_b += (x >= b) as u64;
    }
    let p_ab = c_ab as f64 / n;
    let p_a = c_a as f64 / n;
    let p_b = c_b as f64 / n;
    let diff = p_ab - p_a * p_b;
    // Influence function of the plug-in estimator:
    // h(x) = 1{x >= a+b} - p_b 1{x >= a} - p_a 1{x >= b}.
    let h = |x: usize| -> f64 {
        (x >= a + b) as u64 as f64 - p_b * ((x >= a) as u64 as f64)
            - p_a * ((x >= b) as u64 as f64)
    };
    let h_mean = samples.iter().map(|&x| h(x)).sum::<f64>() / n;
    let h_var = samples.iter().map(|&x| (h(x) - h_mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    let std_err = (h_var / n).sqrt();
    // Degenerate case: the first-order variance can vanish (e.g. a = b with
    // all mass on indicator-equal values); any positive diff is then an
    // unambiguous violation.
    let z = if std_err > 0.0 {
        diff / std_err
    } else if diff > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    NbuEstimate {
        diff,
        std_err,
        z,
        violation: diff > 3.0 * std_err,
    }
}

/// Expected greedy lengths `z_1..z_{n_max}` by the O(n) prefix-sum DP.
///
/// Conditioning on the dominant step's position `k` (uniform on 2..=n) and
/// sign (fair coin): an up step contributes both sides, a down step the
/// longer side, so
///
/// ```text
/// z_n = (1/(n-1)) sum_{k=2}^{n} [ (z_{k-1} + z_{n-k+1})/2 + z_{max(k-1, n-k+1)}/2 ]
/// ```
///
/// Folding the symmetric sums into prefix sums `C(m) = z_1 + ... + z_m`:
/// the max-part is `2(C(n-1) - C(n/2)) + z_{n/2}` for even `n` and
/// `2(C(n-1) - C((n-1)/2))` for odd `n`, giving O(1) work per step.
pub fn greedy_mean_dp(n_max: usize) -> Vec<f64> {
    assert!(n_max >= 1);
    let mut z = vec![0.0f64; n_max + 1];
    let mut prefix = vec![0.0f64; n_max + 1]; // prefix[m] = z_1 + ... + z_m
    z[1] = 1.0;
    prefix[1] = 1.0;
    for n in 2..=n_max {
        let c = prefix[n - 1];
        let h = if n % 2 == 0 {
            2.0 * (c - prefix[n / 2]) + z[n / 2]
        } else {
            2.0 * (c - prefix[(n - 1) / 2])
        };
        z[n] = (c + 0.5 * h) / (n - 1) as f64;
        prefix[n] = prefix[n - 1] + z[n];
    }
    z.remove(0);
    z
}

/// Same DP in exact rational arithmetic (for cross-checking the float DP and
/// the enumeration oracle at small n; rationals grow quickly, keep `n_max`
/// modest).
pub fn greedy_mean_dp_exact(n_max: usize) -> Vec<BigRational> {
    assert!(n_max >= 1);
    let mut z = vec![BigRational::zero(); n_max + 1];
    let mut prefix = vec![BigRational::zero(); n_max + 1];
    z[1] = BigRational::one();
    prefix[1] = BigRational::one();
    for n in 2..=n_max {
        let c = prefix[n - 1].clone();
        let h = if n % 2 == 0 {
            ratio(2, 1) * (&c - &prefix[n / 2]) + &z[n / 2]
        } else {
            ratio(2, 1) * (&c - &prefix[(n - 1) / 2])
        };
        let zn = (c + h / ratio(2, 1)) / BigRational::from(BigInt::from(n - 1));
        let pn = &prefix[n - 1] + &zn;
        z[n] = zn;
        prefix[n] = pn;
    }
    z.remove(0);
    z
}
