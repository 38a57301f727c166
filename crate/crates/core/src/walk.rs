//! Walk samplers and the O(1) partial-sum comparator.
//!
//! Two families of walks share one interface ([`PartialSumOrder`]):
//!
//! - [`WalkSample`]: steps `U_t = sign_t * g(magnitude_t)` in the ultra-fat
//!   ordered space of [`crate::order`]. Because the largest magnitude in any
//!   window dominates everything else in it, `sign(S_j - S_i)` equals the
//!   sign of the single largest-magnitude step strictly between `i` and `j`,
//!   and a range-argmax table answers that in O(1).
//! - [`RealWalkSample`]: ordinary real-valued walks (symmetric stable or
//!   Gaussian steps). Every f64 increment is a dyadic rational, so the
//!   partial sums are accumulated exactly in wide fixed-point and reduced
//!   to ranks; comparisons are then exact. Plain f64 prefix sums are not
//!   enough here: one huge stable step raises the ulp of every later sum
//!   past the size of typical steps, and the walk's fine order drowns.
//!
//! All samplers are keyed by a `u64` seed and are bitwise deterministic.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rand::Rng;
use rand::distr::Open01;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::order::{GeneratorId, UltraElement};
use crate::rmq::ArgmaxTable;
use crate::rng::{STREAM_WALK, derive_rng};

/// Errors from walk construction and sampling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("walk length must be at least 1")]
    EmptyWalk,
    #[error("signs ({signs}) and magnitudes ({magnitudes}) differ in length")]
    LengthMismatch { signs: usize, magnitudes: usize },
    #[error("sign at step {position} is {value}, expected +1 or -1")]
    InvalidSign { position: usize, value: i8 },
    #[error("magnitude at step {position} is {value}, expected finite in (0, 1)")]
    InvalidMagnitude { position: usize, value: f64 },
    #[error("magnitude {value} occurs more than once; magnitudes must be distinct")]
    DuplicateMagnitude { value: f64 },
    #[error("stability index {0} outside (0, 2]")]
    InvalidAlpha(f64),
}

/// Walk families understood by the samplers and the harness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WalkModel {
    /// Ultra-fat ordered-space walk (infinite moments of every order).
    UltraFat,
    /// Real-valued walk with symmetric alpha-stable steps, `0 < alpha <= 2`.
    Stable { alpha: f64 },
    /// Real-valued walk with standard normal steps.
    Gaussian,
}

impl WalkModel {
    /// Stability index for stable walks, `None` otherwise.
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            WalkModel::Stable { alpha } => Some(alpha),
            _ => None,
        }
    }
}

impl fmt::Display for WalkModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkModel::UltraFat => write!(f, "ultrafat"),
            WalkModel::Stable { .. } => write!(f, "stable"),
            WalkModel::Gaussian => write!(f, "gaussian"),
        }
    }
}

impl FromStr for WalkModel {
    type Err = String;

    /// Parses a model name; `stable` gets a placeholder index of 1 that the
    /// caller is expected to override with its `alpha` option.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ultrafat" => Ok(WalkModel::UltraFat),
            "stable" => Ok(WalkModel::Stable { alpha: 1.0 }),
            "gaussian" => Ok(WalkModel::Gaussian),
            other => Err(format!(
                "unknown model {other:?}, expected ultrafat|stable|gaussian"
            )),
        }
    }
}

/// Anything that can order its partial sums `S_0 = 0, S_1, ..., S_n`.
///
/// Index convention: time indices are 1-based for steps; index 0 denotes the
/// empty sum. LIS statistics are always over `S_1..S_t` (the zero anchor is
/// never part of a subsequence, only of comparisons).
pub trait PartialSumOrder {
    /// Number of steps n.
    fn steps(&self) -> usize;

    /// Ordering of `S_i` relative to `S_j`, for `0 <= i, j <= steps()`.
    fn cmp_sums(&self, i: usize, j: usize) -> Ordering;
}

/// An ultra-fat ordered-space walk: `S_t = sum_{k<=t} sign_k * g(mag_k)`.
///
/// Magnitudes are pairwise distinct (the sampler redraws collisions, the
/// checked constructor rejects them), so every range argmax is unique and
/// partial-sum comparisons are never ties except `i == j`.
#[derive(Debug, Clone)]
pub struct WalkSample {
    signs: Vec<i8>,
    magnitudes: Vec<f64>,
    rmq: ArgmaxTable,
}

impl WalkSample {
    /// Samples an `n`-step walk: signs are fair coin flips, magnitudes are
    /// uniform on (0, 1) redrawn until pairwise distinct. Deterministic in
    /// `(n, seed)`.
    pub fn sample_ultrafat(n: usize, seed: u64) -> Result<Self, WalkError> {
        if n == 0 {
            return Err(WalkError::EmptyWalk);
        }
        let mut rng = derive_rng(seed, &[n as u64, STREAM_WALK]);
        let mut signs = Vec::with_capacity(n);
        let mut magnitudes = Vec::with_capacity(n);
        let mut seen: HashSet<u64> = HashSet::with_capacity(n * 2);
        for _ in 0..n {
            signs.push(if rng.random::<bool>() { 1 } else { -1 });
            let m = loop {
                let m: f64 = rng.sample(Open01);
                if seen.insert(m.to_bits()) {
                    break m;
                }
            };
            magnitudes.push(m);
        }
        let rmq = ArgmaxTable::new(&magnitudes);
        Ok(WalkSample {
            signs,
            magnitudes,
            rmq,
        })
    }

    /// Builds a walk from explicit steps, validating every invariant the
    /// sampler guarantees: signs are +/-1, magnitudes are finite, inside
    /// (0, 1), and pairwise distinct.
    pub fn from_parts(signs: Vec<i8>, magnitudes: Vec<f64>) -> Result<Self, WalkError> {
        if signs.len() != magnitudes.len() {
            return Err(WalkError::LengthMismatch {
                signs: signs.len(),
                magnitudes: magnitudes.len(),
            });
        }
        if signs.is_empty() {
            return Err(WalkError::EmptyWalk);
        }
        for (k, &s) in signs.iter().enumerate() {
            if s != 1 && s != -1 {
                return Err(WalkError::InvalidSign {
                    position: k + 1,
                    value: s,
                });
            }
        }
        let mut seen: HashSet<u64> = HashSet::with_capacity(magnitudes.len() * 2);
        for (k, &m) in magnitudes.iter().enumerate() {
            if !(m.is_finite() && m > 0.0 && m < 1.0) {
                return Err(WalkError::InvalidMagnitude {
                    position: k + 1,
                    value: m,
                });
            }
            if !seen.insert(m.to_bits()) {
                return Err(WalkError::DuplicateMagnitude { value: m });
            }
        }
        let rmq = ArgmaxTable::new(&magnitudes);
        Ok(WalkSample {
            signs,
            magnitudes,
            rmq,
        })
    }

    /// Number of steps.
    pub fn n(&self) -> usize {
        self.signs.len()
    }

    /// Sign of step `t` (1-based), +1 or -1.
    pub fn sign(&self, t: usize) -> i8 {
        self.signs[t - 1]
    }

    /// Magnitude label of step `t` (1-based).
    pub fn magnitude(&self, t: usize) -> f64 {
        self.magnitudes[t - 1]
    }

    /// Position (1-based) of the largest magnitude among steps `lo..=hi`.
    ///
    /// Panics unless `1 <= lo <= hi <= n`.
    #[inline]
    pub fn argmax_magnitude(&self, lo: usize, hi: usize) -> usize {
        assert!(
            1 <= lo && lo <= hi && hi <= self.n(),
            "argmax range {lo}..={hi} out of bounds for {} steps",
            self.n()
        );
        self.rmq.argmax(&self.magnitudes, lo - 1, hi - 1) + 1
    }

    /// Splitting step of the prefix of length `n`: the position of the
    /// largest magnitude among steps `2..=n`, plus whether that step is up.
    ///
    /// Panics if `n < 2` or `n > self.n()`.
    pub fn sigma(&self, n: usize) -> Split {
        assert!(
            (2..=self.n()).contains(&n),
            "sigma needs 2 <= n <= {}, got {n}",
            self.n()
        );
        let position = self.argmax_magnitude(2, n);
        Split {
            position,
            up: self.signs[position - 1] > 0,
        }
    }

    /// Partial sum `S_t` as an explicit ordered-space element (`t = 0` gives
    /// zero). Linear-time; meant for cross-checks at small `t`, not for the
    /// hot comparison path.
    pub fn partial_sum_element(&self, t: usize) -> UltraElement {
        assert!(t <= self.n(), "partial sum index {t} out of range");
        UltraElement::from_terms((0..t).map(|k| {
            let g = GeneratorId::new(self.magnitudes[k])
                .expect("constructor-validated magnitude");
            (g, self.signs[k] as i64)
        }))
    }

    /// Writes the walk as CSV with header `t,sign,magnitude`. Magnitudes use
    /// the shortest round-trip float form, so the dump is lossless.
    pub fn dump_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "t,sign,magnitude")?;
        for t in 0..self.signs.len() {
            writeln!(out, "{},{},{}", t + 1, self.signs[t], self.magnitudes[t])?;
        }
        Ok(())
    }
}

/// Result of [`WalkSample::sigma`]: where the dominant step of a prefix sits
/// and which way it points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    /// 1-based position of the largest magnitude among steps `2..=n`.
    pub position: usize,
    /// True when the dominant step has sign +1.
    pub up: bool,
}

impl PartialSumOrder for WalkSample {
    fn steps(&self) -> usize {
        self.n()
    }

    /// O(1): for `i < j`, `S_j - S_i` has the sign of the largest-magnitude
    /// step in `i+1..=j`, because that step dominates the rest of the window
    /// in the ordered space.
    fn cmp_sums(&self, i: usize, j: usize) -> Ordering {
        assert!(
            i <= self.n() && j <= self.n(),
            "partial-sum index out of range"
        );
        match i.cmp(&j) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Less => {
                let k = self.argmax_magnitude(i + 1, j);
                // sign(S_j - S_i) = sign of step k, so S_i vs S_j flips it.
                0.cmp(&self.signs[k - 1])
            }
            Ordering::Greater => self.cmp_sums(j, i).reverse(),
        }
    }
}

/// A real-valued walk with stored prefix sums.
#[derive(Debug, Clone)]
pub struct RealWalkSample {
    increments: Vec<f64>,
    /// partial_sums[t] = S_t, with partial_sums[0] = 0. Approximate f64
    /// view for inspection; ordering queries go through `sum_ranks`.
    partial_sums: Vec<f64>,
    /// sum_ranks[t] = dense rank of the exact value of S_t among all
    /// partial sums (equal sums share a rank).
    sum_ranks: Vec<u32>,
}

/// Limbs of the fixed-point accumulator: scale 2^-1074 (the smallest
/// subnormal), top at 2^1101, enough for 2^31 increments of any finite f64
/// plus a sign bit.
const SUM_LIMBS: usize = 34;

/// Adds one finite f64 into a little-endian two's-complement fixed-point
/// accumulator at scale 2^-1074.
fn add_exact(acc: &mut [u64; SUM_LIMBS], x: f64) {
    let bits = x.to_bits();
    let biased = bits >> 52 & 0x7ff;
    let frac = bits & ((1u64 << 52) - 1);
    if biased == 0 && frac == 0 {
        return;
    }
    debug_assert!(biased != 0x7ff, "increment must be finite");
    // Normals carry the implicit bit; subnormals use the same scale as the
    // minimum normal exponent.
    let mantissa = if biased == 0 { frac } else { frac | 1 << 52 };
    let shift = (biased.max(1) - 1) as usize;
    let limb = shift / 64;
    let off = shift % 64;
    let lo = mantissa << off;
    let hi = if off == 0 { 0 } else { mantissa >> (64 - off) };
    if bits >> 63 == 0 {
        let (v, mut carry) = acc[limb].overflowing_add(lo);
        acc[limb] = v;
        let mut add = hi;
        let mut k = limb + 1;
        while k < SUM_LIMBS && (add != 0 || carry) {
            let (v1, c1) = acc[k].overflowing_add(add);
            let (v2, c2) = v1.overflowing_add(carry as u64);
            acc[k] = v2;
            carry = c1 || c2;
            add = 0;
            k += 1;
        }
    } else {
        let (v, mut borrow) = acc[limb].overflowing_sub(lo);
        acc[limb] = v;
        let mut sub = hi;
        let mut k = limb + 1;
        while k < SUM_LIMBS && (sub != 0 || borrow) {
            let (v1, b1) = acc[k].overflowing_sub(sub);
            let (v2, b2) = v1.overflowing_sub(borrow as u64);
            acc[k] = v2;
            borrow = b1 || b2;
            sub = 0;
            k += 1;
        }
    }
}

/// Signed comparison of two's-complement fixed-point values: flip the sign
/// bit of the top limb, then compare limbs high to low.
fn cmp_exact(a: &[u64], b: &[u64]) -> Ordering {
    let top = SUM_LIMBS - 1;
    (a[top] ^ 1 << 63)
        .cmp(&(b[top] ^ 1 << 63))
        .then_with(|| a[..top].iter().rev().cmp(b[..top].iter().rev()))
}

/// Dense ranks of the exact partial sums S_0 = 0, S_1, ..., S_n.
fn exact_sum_ranks(increments: &[f64]) -> Vec<u32> {
    let count = increments.len() + 1;
    assert!(count <= u32::MAX as usize);
    let mut tape = vec![0u64; count * SUM_LIMBS];
    let mut acc = [0u64; SUM_LIMBS];
    for (t, &x) in increments.iter().enumerate() {
        add_exact(&mut acc, x);
        tape[(t + 1) * SUM_LIMBS..(t + 2) * SUM_LIMBS].copy_from_slice(&acc);
    }
    let snapshot = |i: u32| &tape[i as usize * SUM_LIMBS..(i as usize + 1) * SUM_LIMBS];
    let mut order: Vec<u32> = (0..count as u32).collect();
    order.sort_unstable_by(|&a, &b| cmp_exact(snapshot(a), snapshot(b)));
    let mut ranks = vec![0u32; count];
    let mut rank = 0u32;
    for w in 0..count {
        if w > 0 && cmp_exact(snapshot(order[w]), snapshot(order[w - 1])) == Ordering::Greater {
            rank += 1;
        }
        ranks[order[w] as usize] = rank;
    }
    ranks
}

impl RealWalkSample {
    /// Wraps explicit increments (must be nonempty and finite).
    pub fn from_increments(increments: Vec<f64>) -> Result<Self, WalkError> {
        if increments.is_empty() {
            return Err(WalkError::EmptyWalk);
        }
        for (k, &x) in increments.iter().enumerate() {
            if !x.is_finite() {
                return Err(WalkError::InvalidMagnitude {
                    position: k + 1,
                    value: x,
                });
            }
        }
        let mut partial_sums = Vec::with_capacity(increments.len() + 1);
        partial_sums.push(0.0);
        let mut acc = 0.0;
        for &x in &increments {
            acc += x;
            partial_sums.push(acc);
        }
        let sum_ranks = exact_sum_ranks(&increments);
        Ok(RealWalkSample {
            increments,
            partial_sums,
            sum_ranks,
        })
    }

    /// Samples an `n`-step walk with symmetric alpha-stable steps,
    /// `0 < alpha <= 2`. Deterministic in `(n, alpha, seed)`.
    pub fn sample_stable(n: usize, alpha: f64, seed: u64) -> Result<Self, WalkError> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha <= 2.0) {
            return Err(WalkError::InvalidAlpha(alpha));
        }
        if n == 0 {
            return Err(WalkError::EmptyWalk);
        }
        let mut rng = derive_rng(seed, &[n as u64, alpha.to_bits(), STREAM_WALK]);
        let increments = (0..n).map(|_| stable_increment(alpha, &mut rng)).collect();
        Self::from_increments(increments)
    }

    /// Samples an `n`-step walk with standard normal steps.
    pub fn sample_gaussian(n: usize, seed: u64) -> Result<Self, WalkError> {
        if n == 0 {
            return Err(WalkError::EmptyWalk);
        }
        let mut rng = derive_rng(seed, &[n as u64, STREAM_WALK]);
        let increments = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        Self::from_increments(increments)
    }

    /// Number of steps.
    pub fn n(&self) -> usize {
        self.increments.len()
    }

    /// Step values.
    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    /// `S_t` for `0 <= t <= n`.
    pub fn partial_sum(&self, t: usize) -> f64 {
        self.partial_sums[t]
    }

    /// Largest absolute step, `W_n = max_k |X_k|`.
    pub fn max_abs_increment(&self) -> f64 {
        self.increments.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    /// Total absolute displacement, `Z_n = sum_k |X_k|`.
    pub fn sum_abs_increments(&self) -> f64 {
        self.increments.iter().map(|x| x.abs()).sum()
    }
}

impl PartialSumOrder for RealWalkSample {
    fn steps(&self) -> usize {
        self.n()
    }

    fn cmp_sums(&self, i: usize, j: usize) -> Ordering {
        self.sum_ranks[i].cmp(&self.sum_ranks[j])
    }
}

/// One symmetric alpha-stable draw via the Chambers-Mallows-Stuck transform:
/// with `V` uniform on (-pi/2, pi/2) and `W` standard exponential,
///
/// ```text
/// X = sin(alpha V) / cos(V)^(1/alpha) * ( cos((1-alpha) V) / W )^((1-alpha)/alpha)
/// ```
///
/// The formula needs no special cases on (0, 2]: at `alpha = 1` the second
/// factor's exponent is 0 (so `X = tan V`, standard Cauchy), and at
/// `alpha = 2` it reduces to `2 sin(V) sqrt(W)`, a centered Gaussian with
/// variance 2.
pub fn stable_increment(alpha: f64, rng: &mut impl Rng) -> f64 {
    debug_assert!(alpha > 0.0 && alpha <= 2.0);
    let u: f64 = rng.sample(Open01);
    let v = std::f64::consts::PI * (u - 0.5);
    let e: f64 = rng.sample(Open01);
    let w = -e.ln();
    let s = (alpha * v).sin() / v.cos().powf(1.0 / alpha);
    s * (((1.0 - alpha) * v).cos() / w).powf((1.0 - alpha) / alpha)
}

/// Monte Carlo estimate of the tail-dominance probability
/// `P(W_n > Z_n - W_n)`: how often the single largest |step| exceeds the sum
/// of all the others. Heavy-tailed walks keep this bounded away from zero as
/// `n` grows; finite-variance walks drive it to zero.
///
/// For the ultra-fat model the event holds with probability one by
/// construction (the largest magnitude dominates any combination of the
/// rest), so 1.0 is returned without sampling.
pub fn tail_dominance_frequency(
    model: WalkModel,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<f64, WalkError> {
    if n == 0 {
        return Err(WalkError::EmptyWalk);
    }
    match model {
        WalkModel::UltraFat => Ok(1.0),
        WalkModel::Stable { alpha } => {
            if !(alpha.is_finite() && alpha > 0.0 && alpha <= 2.0) {
                return Err(WalkError::InvalidAlpha(alpha));
            }
            let mut hits = 0usize;
            for rep in 0..reps {
                let mut rng = derive_rng(seed, &[n as u64, rep as u64, alpha.to_bits()]);
                let mut w = 0.0f64;
                let mut z = 0.0f64;
                for _ in 0..n {
                    let x = stable_increment(alpha, &mut rng).abs();
                    w = w.max(x);
                    z += x;
                }
                if w > z - w {
                    hits += 1;
                }
            }
            Ok(hits as f64 / reps as f64)
        }
        WalkModel::Gaussian => {
            let mut hits = 0usize;
            for rep in 0..reps {
                let mut rng = derive_rng(seed, &[n as u64, rep as u64]);
                let mut w = 0.0f64;
                let mut z = 0.0f64;
                for _ in 0..n {
                    let x: f64 = rng.sample(StandardNormal);
                    let x = x.abs();
                    w = w.max(x);
                    z += x;
                }
                if w > z - w {
                    hits += 1;
                }
            }
            Ok(hits as f64 / reps as f64)
        }
    }
}
