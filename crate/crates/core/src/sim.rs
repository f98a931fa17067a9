//! Monte Carlo estimates of the comparison-count moments.
//!
//! Trials are split into shards. Shard `i` draws from a ChaCha8 stream
//! seeded with the master seed and stream id `i`, so a run is reproducible
//! given `(seed, trials, shards)`. Changing the shard count changes the
//! random streams and therefore the result.

use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::quicksort::{count_distinct, PivotCostModel};
use crate::rational::ExactRational;

pub const RNG_ID: &str = "chacha8/stream-per-shard";

/// Highest factorial-moment order estimated by [`simulate`].
pub const MAX_ORDER: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub model: PivotCostModel,
    pub shards: u32,
}

impl SimConfig {
    pub fn new(n: usize, trials: u64, seed: u64) -> Self {
        Self {
            n,
            trials,
            seed,
            model: PivotCostModel::NMinusOne,
            shards: 1,
        }
    }

    pub fn with_shards(mut self, shards: u32) -> Self {
        self.shards = shards;
        self
    }

    pub fn with_model(mut self, model: PivotCostModel) -> Self {
        self.model = model;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("simulation needs n >= 1"));
        }
        if self.trials == 0 {
            return Err(invalid("simulation needs at least one trial"));
        }
        if self.shards == 0 {
            return Err(invalid("simulation needs at least one shard"));
        }
        Ok(())
    }
}

/// Uniform random permutation of `1..=n` (Fisher–Yates).
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(rng);
    v
}

/// The generator used for shard `shard` of a run seeded with `seed`.
pub fn shard_rng(seed: u64, shard: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

/// Exact sums over trials of `(k)_s` and `(k)_s²`, `s = 0..=4`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Accumulators {
    pub falling: [BigUint; MAX_ORDER + 1],
    pub falling_sq: [BigUint; MAX_ORDER + 1],
    pub min: Option<u64>,
    pub max: Option<u64>,
}

impl Accumulators {
    fn record(&mut self, k: u64) {
        let mut f = BigUint::from(1u32);
        for s in 0..=MAX_ORDER {
            if s > 0 {
                if k < s as u64 {
                    break;
                }
                f *= k - (s as u64 - 1);
            }
            self.falling[s] += &f;
            self.falling_sq[s] += &f * &f;
        }
        self.min = Some(self.min.map_or(k, |m| m.min(k)));
        self.max = Some(self.max.map_or(k, |m| m.max(k)));
    }

    fn merge(&mut self, other: &Accumulators) {
        for s in 0..=MAX_ORDER {
            self.falling[s] += &other.falling[s];
            self.falling_sq[s] += &other.falling_sq[s];
        }
        if let Some(m) = other.min {
            self.min = Some(self.min.map_or(m, |x| x.min(m)));
        }
        if let Some(m) = other.max {
            self.max = Some(self.max.map_or(m, |x| x.max(m)));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimResult {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub rng_id: &'static str,
    pub shards: u32,
    pub model: &'static str,
    pub mean: f64,
    pub variance: f64,
    pub stderr: f64,
    /// `β̂_1..β̂_4`.
    pub beta_hat: [f64; MAX_ORDER],
    /// Standard error of each `β̂_s`.
    pub beta_stderr: [f64; MAX_ORDER],
    pub min_count: u64,
    pub max_count: u64,
    #[serde(skip)]
    pub accumulators: Accumulators,
}

/// Runs `trials` instrumented sorts on uniform random permutations.
pub fn simulate(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let shards = config.shards as u64;
    let per_shard = |i: u64| config.trials / shards + u64::from(i < config.trials % shards);

    let run_shard = |i: u32| {
        let mut rng = shard_rng(config.seed, i);
        let mut acc = Accumulators::default();
        let mut scratch = Vec::with_capacity(config.n);
        let mut perm: Vec<u32> = (1..=config.n as u32).collect();
        for _ in 0..per_shard(i as u64) {
            perm.shuffle(&mut rng);
            let mut work = perm.clone();
            acc.record(count_distinct(&mut work, &mut scratch, config.model));
        }
        acc
    };

    let parts: Vec<Accumulators> = if config.shards == 1 {
        vec![run_shard(0)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..config.shards).map(|i| scope.spawn(move || run_shard(i))).collect();
            handles.into_iter().map(|h| h.join().expect("shard panicked")).collect()
        })
    };
    let mut total = Accumulators::default();
    for part in &parts {
        total.merge(part);
    }
    Ok(summarize(config, total))
}

fn summarize(config: &SimConfig, acc: Accumulators) -> SimResult {
    let t = config.trials;
    let t_rat = ExactRational::from(t);
    let sample_var = |sum: &BigUint, sum_sq: &BigUint| -> ExactRational {
        if t < 2 {
            return ExactRational::zero();
        }
        let sum = ExactRational::from(sum.clone());
        let sum_sq = ExactRational::from(sum_sq.clone());
        (sum_sq - &sum * &sum * t_rat.recip()) * ExactRational::from(t - 1).recip()
    };
    let mean = ExactRational::from(acc.falling[1].clone()) * t_rat.recip();
    // Σ k² = Σ (k)_2 + Σ k
    let sum_k2 = &acc.falling[2] + &acc.falling[1];
    let var = sample_var(&acc.falling[1], &sum_k2);
    let mut beta_hat = [0.0; MAX_ORDER];
    let mut beta_stderr = [0.0; MAX_ORDER];
    for s in 1..=MAX_ORDER {
        beta_hat[s - 1] = (ExactRational::from(acc.falling[s].clone()) * t_rat.recip()).to_f64();
        let v = sample_var(&acc.falling[s], &acc.falling_sq[s]).to_f64();
        beta_stderr[s - 1] = (v / t as f64).sqrt();
    }
    let variance = var.to_f64();
    SimResult {
        n: config.n,
        trials: t,
        seed: config.seed,
        rng_id: RNG_ID,
        shards: config.shards,
        model: config.model.name(),
        mean: mean.to_f64(),
        variance,
        stderr: (variance / t as f64).sqrt(),
        beta_hat,
        beta_stderr,
        min_count: acc.min.unwrap_or(0),
        max_count: acc.max.unwrap_or(0),
        accumulators: acc,
    }
}

impl SimResult {
    /// `(β̂_s - exact) / stderr(β̂_s)`; zero when both the spread and the
    /// error vanish.
    pub fn z_score(&self, s: usize, exact: f64) -> f64 {
        let diff = self.beta_hat[s - 1] - exact;
        let se = self.beta_stderr[s - 1];
        if se == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY.copysign(diff)
            }
        } else {
            diff / se
        }
    }

    /// Exact `Σ (k)_s` as an integer.
    pub fn falling_sum(&self, s: usize) -> BigInt {
        BigInt::from(self.accumulators.falling[s].clone())
    }
}
