//! Cross-checks between the exact routes and independent enumeration.

use num_bigint::BigUint;
use qsmoments_core::{
    distribution, factorial, factorial_moments_recurrence_with_model, partition_stages, pgf, quicksort_count,
    ExactRational, MomentMode, PgfEngine, PivotCostModel,
};

/// Lexicographic enumeration, kept separate from the library's own.
fn all_permutations(n: usize) -> Vec<Vec<u32>> {
    let mut p: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

fn mean_over_perms(n: usize, f: impl Fn(&[u32]) -> u64) -> ExactRational {
    let perms = all_permutations(n);
    let total: u64 = perms.iter().map(|p| f(p)).sum();
    ExactRational::new(total, perms.len() as u64).unwrap()
}

#[test]
fn enumeration_oracle_is_complete() {
    for n in 1..=6 {
        assert_eq!(BigUint::from(all_permutations(n).len()), factorial(n));
    }
}

#[test]
fn n_plus_one_model_adds_two_per_stage() {
    let plus = factorial_moments_recurrence_with_model(6, 1, MomentMode::Exact, PivotCostModel::NPlusOne).unwrap();
    let minus = factorial_moments_recurrence_with_model(6, 1, MomentMode::Exact, PivotCostModel::NMinusOne).unwrap();
    for n in 1..=6 {
        let stages = mean_over_perms(n, partition_stages);
        let diff = plus.exact(n, 1).unwrap() - minus.exact(n, 1).unwrap();
        assert_eq!(diff, ExactRational::from(2u32) * stages, "n={n}");

        let brute = mean_over_perms(n, |p| quicksort_count(p, PivotCostModel::NPlusOne).unwrap());
        assert_eq!(plus.exact(n, 1).unwrap(), &brute, "n={n}");
    }
}

#[test]
fn normalization_and_unit_evaluation() {
    let mut engine = PgfEngine::new(PivotCostModel::NMinusOne);
    for n in 0..=40 {
        let d = engine.distribution(n).unwrap();
        assert_eq!(d.total(), factorial(n), "n={n}");
        assert!(
            engine.pgf(n).evaluate(&ExactRational::one()) == ExactRational::one(),
            "n={n}"
        );
    }
    for n in 0..=12 {
        let g = pgf(n, PivotCostModel::NPlusOne);
        assert!(g.evaluate(&ExactRational::one()) == ExactRational::one());
        assert_eq!(distribution(n, PivotCostModel::NPlusOne).unwrap().total(), factorial(n));
    }
}

#[test]
fn support_is_bounded_by_worst_case() {
    let mut engine = PgfEngine::new(PivotCostModel::NMinusOne);
    for n in 1..=30 {
        let worst = (n * (n - 1) / 2) as u64;
        let d = engine.distribution(n).unwrap();
        assert_eq!(*d.counts().keys().last().unwrap(), worst);
        assert!(d.counts().keys().all(|&k| k <= worst));
    }
}
