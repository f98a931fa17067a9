//! Instrumented quicksort and the exhaustive enumeration oracle.
//!
//! The pivot is always the first element, and the remaining elements are
//! split stably into the smaller block followed by the larger block. With
//! that partition both sub-arrays of a uniformly random permutation are
//! again uniformly random and independent, which is what the generating
//! function recurrences assume.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::distribution::ComparisonDistribution;
use crate::error::{invalid, Result};

/// Comparisons charged for one partition stage on an array of length `len`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PivotCostModel {
    /// `len - 1`: the pivot is compared against every other element.
    #[default]
    NMinusOne,
    /// `len + 1`: the sentinel-based variant. Arrays of length 0 or 1 are
    /// never partitioned and cost nothing.
    NPlusOne,
}

impl PivotCostModel {
    pub fn stage_cost(self, len: usize) -> u64 {
        if len < 2 {
            return 0;
        }
        match self {
            PivotCostModel::NMinusOne => len as u64 - 1,
            PivotCostModel::NPlusOne => len as u64 + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PivotCostModel::NMinusOne => "n-1",
            PivotCostModel::NPlusOne => "n+1",
        }
    }
}

impl std::str::FromStr for PivotCostModel {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n-1" | "n_minus_one" => Ok(Self::NMinusOne),
            "n+1" | "n_plus_one" => Ok(Self::NPlusOne),
            other => Err(invalid(format!("unknown pivot cost model {other:?}"))),
        }
    }
}

/// Comparisons used to sort `perm`. Fails if `perm` has repeated values.
pub fn quicksort_count<T: Ord + Copy>(perm: &[T], model: PivotCostModel) -> Result<u64> {
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("quicksort_count needs distinct values"));
    }
    let mut work = perm.to_vec();
    Ok(count_distinct(&mut work, &mut Vec::new(), model))
}

/// Same as [`quicksort_count`] without the distinctness check. Sorts `v`
/// in place; `scratch` is reused across calls.
pub(crate) fn count_distinct<T: Ord + Copy>(v: &mut [T], scratch: &mut Vec<T>, model: PivotCostModel) -> u64 {
    let mut total = 0u64;
    // explicit stack: sorted input would otherwise recurse n deep
    let mut stack = vec![(0usize, v.len())];
    while let Some((lo, hi)) = stack.pop() {
        let len = hi - lo;
        if len < 2 {
            continue;
        }
        total += model.stage_cost(len);
        let part = &mut v[lo..hi];
        let pivot = part[0];
        scratch.clear();
        let mut less = 0;
        for i in 1..len {
            let x = part[i];
            if x < pivot {
                part[less] = x;
                less += 1;
            } else {
                scratch.push(x);
            }
        }
        part[less] = pivot;
        part[less + 1..].copy_from_slice(scratch);
        stack.push((lo + less + 1, hi));
        stack.push((lo, lo + less));
    }
    total
}

/// Number of partition stages (calls on arrays of length ≥ 2).
pub fn partition_stages<T: Ord + Copy>(perm: &[T]) -> u64 {
    // under n+1 vs n-1 the per-stage difference is exactly 2
    let mut a = perm.to_vec();
    let mut b = perm.to_vec();
    let plus = count_distinct(&mut a, &mut Vec::new(), PivotCostModel::NPlusOne);
    let minus = count_distinct(&mut b, &mut Vec::new(), PivotCostModel::NMinusOne);
    (plus - minus) / 2
}

pub const BRUTE_FORCE_MAX_N: usize = 9;

/// Runs the instrumented sort on all `n!` permutations and tallies counts.
pub fn brute_force_distribution(n: usize, model: PivotCostModel) -> Result<ComparisonDistribution> {
    if !(1..=BRUTE_FORCE_MAX_N).contains(&n) {
        return Err(invalid(format!(
            "brute force enumeration supports 1 <= n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )));
    }
    let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
    for_each_permutation(n, |perm| {
        let mut work = perm.to_vec();
        let k = count_distinct(&mut work, &mut Vec::new(), model);
        *tally.entry(k).or_default() += 1;
    });
    let counts = tally.into_iter().map(|(k, c)| (k, BigUint::from(c))).collect();
    Ok(ComparisonDistribution::from_counts(n, counts))
}

/// Visits every permutation of `1..=n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[u32])) {
    let mut a: Vec<u32> = (1..=n as u32).collect();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
