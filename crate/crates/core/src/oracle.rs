//! Exhaustive enumeration oracles.
//!
//! Compositions of `n` are generated through the bijection with subsets of
//! `{1,..,n-1}`: bit `i-1` of a counter mask set means a part boundary
//! after position `i`. The counter runs from 0 upward, so the order is
//! deterministic and the count is `2^(n-1)` for `n >= 1`.
//!
//! These are the independent ground truth the generating-function engine is
//! checked against; nothing here touches the engine.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::composition::{occurrences, Composition, OccurrenceVector, PatternSet};

/// Default enumeration bound: 2^25 ≈ 33M compositions.
pub const DEFAULT_GUARD: u32 = 26;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("n = {n} exceeds the enumeration guard {guard} (override the guard to force)")]
pub struct GuardError {
    pub n: u32,
    pub guard: u32,
}

fn check_guard(n: u32, guard: u32) -> Result<(), GuardError> {
    if n > guard {
        Err(GuardError { n, guard })
    } else {
        Ok(())
    }
}

fn composition_of_mask(n: u32, mask: u64) -> Composition {
    let mut parts = Vec::new();
    let mut run = 1u32;
    for i in 1..n {
        if mask >> (i - 1) & 1 == 1 {
            parts.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    if n > 0 {
        parts.push(run);
    }
    Composition::new(parts).expect("parts are positive by construction")
}

/// Iterate over every composition of `n` exactly once, in mask order.
pub fn enumerate_compositions(
    n: u32,
) -> Result<impl Iterator<Item = Composition>, GuardError> {
    enumerate_compositions_guarded(n, DEFAULT_GUARD)
}

pub fn enumerate_compositions_guarded(
    n: u32,
    guard: u32,
) -> Result<impl Iterator<Item = Composition>, GuardError> {
    check_guard(n, guard)?;
    let masks = if n == 0 { 1u64 } else { 1u64 << (n - 1) };
    Ok((0..masks).map(move |mask| composition_of_mask(n, mask)))
}

/// Count compositions of `n` avoiding every pattern of `set`, by brute force.
pub fn oracle_avoider_count(n: u32, set: &PatternSet, guard: u32) -> Result<u64, GuardError> {
    check_guard(n, guard)?;
    let masks = if n == 0 { 1u64 } else { 1u64 << (n - 1) };
    let count = (0..masks)
        .into_par_iter()
        .filter(|&mask| {
            let c = composition_of_mask(n, mask);
            crate::composition::avoids(&c, set)
        })
        .count();
    Ok(count as u64)
}

/// Joint distribution of occurrence vectors over all compositions of `n`.
///
/// The values sum to `2^(n-1)` for `n >= 1`; the all-zero key holds the
/// avoider count.
pub fn oracle_joint_counts(
    n: u32,
    set: &PatternSet,
    guard: u32,
) -> Result<BTreeMap<OccurrenceVector, u64>, GuardError> {
    check_guard(n, guard)?;
    let masks = if n == 0 { 1u64 } else { 1u64 << (n - 1) };
    // Partitioned tally; merging maps is order-independent.
    let map = (0..masks)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<OccurrenceVector, u64>, mask| {
            let c = composition_of_mask(n, mask);
            *acc.entry(occurrences(&c, set)).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn set(patterns: &[&[u32]]) -> PatternSet {
        PatternSet::new(
            patterns
                .iter()
                .map(|p| Composition::new(p.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn enumerate_n4() {
        let got: BTreeSet<Vec<u32>> = enumerate_compositions(4)
            .unwrap()
            .map(|c| c.parts().to_vec())
            .collect();
        let want: BTreeSet<Vec<u32>> = [
            vec![4],
            vec![1, 3],
            vec![3, 1],
            vec![2, 2],
            vec![1, 1, 2],
            vec![1, 2, 1],
            vec![2, 1, 1],
            vec![1, 1, 1, 1],
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn enumerate_n0_and_count() {
        let all: Vec<_> = enumerate_compositions(0).unwrap().collect();
        assert_eq!(all, vec![Composition::empty()]);

        let all: Vec<_> = enumerate_compositions(10).unwrap().collect();
        assert_eq!(all.len(), 512);
        let distinct: BTreeSet<_> = all.iter().map(|c| c.parts().to_vec()).collect();
        assert_eq!(distinct.len(), 512);
        assert!(all.iter().all(|c| c.sum() == 10));
    }

    #[test]
    fn guard_is_enforced() {
        let err = enumerate_compositions(27).map(|_| ()).unwrap_err();
        assert_eq!(err, GuardError { n: 27, guard: 26 });
        assert!(enumerate_compositions_guarded(27, 27).is_ok());
    }

    #[test]
    fn avoider_counts() {
        assert_eq!(oracle_avoider_count(4, &set(&[&[1, 2]]), 26).unwrap(), 4);
        assert_eq!(
            oracle_avoider_count(4, &set(&[&[1, 2], &[2, 1]]), 26).unwrap(),
            2
        );
        assert_eq!(
            oracle_avoider_count(19, &set(&[&[3, 4, 5, 4, 3]]), 26).unwrap(),
            262143
        );
    }

    #[test]
    fn joint_counts_n4() {
        // Of the 8 compositions of 4, the avoiders of [1,2] are
        // {4, 31, 211, 1111}; the other four each contain it exactly once
        // (two overlapping occurrences would already need sum 1+2+2).
        let m = oracle_joint_counts(4, &set(&[&[1, 2]]), 26).unwrap();
        let as_pairs: Vec<(Vec<u32>, u64)> =
            m.into_iter().map(|(k, v)| (k.0, v)).collect();
        assert_eq!(as_pairs, vec![(vec![0], 4), (vec![1], 4)]);
    }

    #[test]
    fn joint_counts_edge_cases() {
        let m = oracle_joint_counts(0, &set(&[&[2, 5, 2]]), 26).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&OccurrenceVector(vec![0])], 1);

        let m =
            oracle_joint_counts(9, &set(&[&[2, 5, 2], &[3, 4, 3], &[4, 2, 4]]), 26).unwrap();
        assert_eq!(m[&OccurrenceVector(vec![0, 0, 0])], 255);
        let total: u64 = m.values().sum();
        assert_eq!(total, 256);
    }

    #[test]
    fn reversal_symmetry() {
        let a = set(&[&[1, 2, 2], &[3, 1, 2]]);
        let rev = a.reversed();
        for n in 0..=10 {
            assert_eq!(
                oracle_avoider_count(n, &a, 26).unwrap(),
                oracle_avoider_count(n, &rev, 26).unwrap()
            );
        }
    }

    #[test]
    fn below_min_sum_everything_avoids() {
        let a = set(&[&[2, 3, 2]]);
        for n in 1..7 {
            assert_eq!(oracle_avoider_count(n, &a, 26).unwrap(), 1 << (n - 1));
        }
    }
}
