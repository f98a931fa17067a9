//! Exact probability generating functions of the comparison count.
//!
//! `G_0 = 1` and, for `n ≥ 1`,
//! `G_n(z) = z^{c(n)} / n · Σ_{j=1..n} G_{n-j}(z) G_{j-1}(z)`
//! where `c(n)` is the partition cost of the chosen [`PivotCostModel`].

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::quicksort::PivotCostModel;
use crate::rational::ExactRational;
use crate::series::convolve;

/// `G_n(z)`: coefficient `k` is the probability that a random permutation
/// of size `n` costs exactly `k` comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PgfPolynomial {
    n: usize,
    coeffs: Vec<ExactRational>,
}

impl PgfPolynomial {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn probability(&self, k: usize) -> ExactRational {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactRational::zero)
    }

    /// Horner evaluation at an exact point.
    pub fn evaluate(&self, z: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * z + c)
    }
}

/// Exact counts `a_{n,k}`: permutations of size `n` needing `k` comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonDistribution {
    n: usize,
    counts: BTreeMap<u64, BigUint>,
}

impl ComparisonDistribution {
    /// Zero counts are dropped.
    pub fn from_counts(n: usize, counts: BTreeMap<u64, BigUint>) -> Self {
        let counts = counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { n, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &BTreeMap<u64, BigUint> {
        &self.counts
    }

    pub fn count(&self, k: u64) -> BigUint {
        self.counts.get(&k).cloned().unwrap_or_default()
    }

    /// `Σ_k a_{n,k}`, which must equal `n!`.
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn probability(&self, k: u64) -> ExactRational {
        ExactRational::new(BigInt::from(self.count(k)), BigInt::from(factorial(self.n))).expect("n! is positive")
    }

    /// `(k, a_{n,k})` pairs; panics if a count overflows `u64`.
    pub fn as_u64_pairs(&self) -> Vec<(u64, u64)> {
        self.counts
            .iter()
            .map(|(&k, c)| (k, c.to_u64().expect("count fits in u64")))
            .collect()
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// Bottom-up PGF builder; keeps `G_0..G_n` for reuse within one instance.
#[derive(Clone, Debug)]
pub struct PgfEngine {
    model: PivotCostModel,
    cache: Vec<PgfPolynomial>,
}

impl PgfEngine {
    pub fn new(model: PivotCostModel) -> Self {
        let g0 = PgfPolynomial {
            n: 0,
            coeffs: vec![ExactRational::one()],
        };
        Self { model, cache: vec![g0] }
    }

    pub fn model(&self) -> PivotCostModel {
        self.model
    }

    pub fn pgf(&mut self, n: usize) -> &PgfPolynomial {
        while self.cache.len() <= n {
            let next = self.step();
            self.cache.push(next);
        }
        &self.cache[n]
    }

    fn step(&self) -> PgfPolynomial {
        let n = self.cache.len();
        let g = |m: usize| &self.cache[m].coeffs;
        // Σ_{j=1..n} G_{n-j} G_{j-1}; the summand is symmetric in j ↔ n+1-j
        let mut sum: Vec<ExactRational> = Vec::new();
        let mut accumulate = |a: &[ExactRational], b: &[ExactRational], weight: u32| {
            let len = a.len() + b.len() - 1;
            let prod = convolve(a, b, len);
            if sum.len() < len {
                sum.resize(len, ExactRational::zero());
            }
            let w = ExactRational::from(weight);
            for (s, p) in sum.iter_mut().zip(prod) {
                if !p.is_zero() {
                    *s += if weight == 1 { p } else { p * &w };
                }
            }
        };
        for j in 1..=n / 2 {
            accumulate(g(n - j), g(j - 1), 2);
        }
        if n % 2 == 1 {
            let mid = (n - 1) / 2;
            accumulate(g(mid), g(mid), 1);
        }
        let shift = self.model.stage_cost(n) as usize;
        let inv_n = ExactRational::recip_of(n as u64);
        let mut coeffs = vec![ExactRational::zero(); shift];
        coeffs.extend(sum.into_iter().map(|c| c * &inv_n));
        PgfPolynomial { n, coeffs }
    }

    /// `a_{n,k} = n! · [z^k] G_n`. Every count is checked to be an integer.
    pub fn distribution(&mut self, n: usize) -> Result<ComparisonDistribution> {
        let scale = ExactRational::from(BigInt::from(factorial(n)));
        let g = self.pgf(n);
        let mut counts = BTreeMap::new();
        for (k, p) in g.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let c = p * &scale;
            let c = c
                .to_integer()
                .ok_or_else(|| Error::InvariantViolation(format!("n! * [z^{k}] G_{n} = {c} is not an integer")))?;
            let c = c
                .to_biguint()
                .ok_or_else(|| Error::InvariantViolation(format!("negative count at z^{k} for n = {n}")))?;
            counts.insert(k as u64, c);
        }
        Ok(ComparisonDistribution::from_counts(n, counts))
    }
}

/// `G_n` under `model`, built from scratch.
pub fn pgf(n: usize, model: PivotCostModel) -> PgfPolynomial {
    PgfEngine::new(model).pgf(n).clone()
}

/// `a_{n,·}` under `model`, derived from the PGF.
pub fn distribution(n: usize, model: PivotCostModel) -> Result<ComparisonDistribution> {
    PgfEngine::new(model).distribution(n)
}
