//! Full-space enumeration cross-checks: every rank permutation and sign
//! pattern of small walks, pushed through the sampler/patience path, must
//! reproduce the rank-table enumeration exactly.

use fatwalk_core::exact::{
    exact_greedy_distribution, exact_lis_distribution, ratio, ExactDistribution,
};
use fatwalk_core::lis::{greedy_length, lis_trajectory};
use fatwalk_core::walk::WalkSample;
use itertools::Itertools;
use num_rational::BigRational;

/// Tallies `stat` over all `n! * 2^n` walks (full space, no symmetry
/// reductions) built through the checked constructor.
fn full_enumeration(n: usize, stat: impl Fn(&WalkSample) -> usize) -> Vec<(usize, BigRational)> {
    let mut counts = vec![0u64; n + 1];
    let mut total = 0u64;
    for ranks in (0..n).permutations(n) {
        let magnitudes: Vec<f64> = ranks
            .iter()
            .map(|&r| (r + 1) as f64 / (n + 1) as f64)
            .collect();
        for mask in 0..(1u32 << n) {
            let signs: Vec<i8> = (0..n)
                .map(|p| if mask >> p & 1 == 1 { 1 } else { -1 })
                .collect();
            let walk = WalkSample::from_parts(signs, magnitudes.clone()).unwrap();
            counts[stat(&walk)] += 1;
            total += 1;
        }
    }
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(value, c)| (value, ratio(c as i64, total as i64)))
        .collect()
}

fn assert_same_law(direct: &[(usize, BigRational)], reduced: &ExactDistribution) {
    let pmf = reduced.pmf();
    assert_eq!(direct.len(), pmf.len());
    for (value, prob) in direct {
        assert_eq!(
            pmf.get(value),
            Some(prob),
            "value {value}: {prob} vs {:?}",
            pmf.get(value)
        );
    }
}

#[test]
fn lis_law_matches_direct_walk_enumeration() {
    for n in 2..=6 {
        let direct = full_enumeration(n, |walk| lis_trajectory(walk).final_len());
        let reduced = exact_lis_distribution(n).unwrap();
        assert_same_law(&direct, &reduced);
    }
}

#[test]
fn greedy_law_matches_direct_walk_enumeration() {
    for n in 2..=6 {
        let direct = full_enumeration(n, |walk| greedy_length(walk, n));
        let reduced = exact_greedy_distribution(n).unwrap();
        assert_same_law(&direct, &reduced);
    }
}

#[test]
fn trajectory_prefix_laws_match_enumeration() {
    // L at an interior time of a longer walk has the law of a fresh walk
    // of that length: tally L(4) inside 6-step walks.
    let direct = full_enumeration(6, |walk| lis_trajectory(walk).len_at(4));
    let reduced = exact_lis_distribution(4).unwrap();
    assert_same_law(&direct, &reduced);
}
