//! Exact distribution and factorial moments of the number of comparisons
//! made by randomized quicksort, with singularity-analysis asymptotics and
//! a Monte Carlo cross-check.
//!
//! Three independent routes compute the factorial moments `β_s(n)`:
//!
//! * [`distribution()`] builds the probability generating function `G_n`
//!   exactly and the moments are read off the counts,
//! * [`factorial_moments_recurrence`] differentiates the PGF recurrence at
//!   `z = 1` and never forms `G_n`,
//! * [`moment_series`] solves the linear ODE satisfied by
//!   `f_s(u) = Σ_n β_s(n) u^n` coefficient by coefficient.
//!
//! [`brute_force_distribution`] enumerates all permutations for small `n`.

pub mod asymptotics;
pub mod distribution;
pub mod error;
pub mod moment_series;
pub mod moments;
pub mod quicksort;
pub mod rational;
pub mod series;
pub mod sim;

pub use distribution::{distribution, factorial, pgf, ComparisonDistribution, PgfEngine, PgfPolynomial};
pub use error::{Error, Result};
pub use moment_series::{moment_series, moment_series_family};
pub use moments::{
    factorial_moment_from_distribution, factorial_moments_recurrence, factorial_moments_recurrence_with_model,
    raw_moment, variance, MomentMode, MomentTable, MomentValue,
};
pub use quicksort::{brute_force_distribution, partition_stages, quicksort_count, PivotCostModel};
pub use rational::ExactRational;
pub use series::{binomial_pow_series, coeff_exact, log_inv_series, TruncatedSeries};
pub use sim::{random_permutation, simulate, SimConfig, SimResult};
