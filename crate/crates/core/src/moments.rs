//! Factorial and raw moments of the comparison count.
//!
//! Differentiating `G_n(z) = z^{c(n)}/n · Σ_j G_{n-j}(z) G_{j-1}(z)` `s`
//! times at `z = 1` with the general Leibniz rule gives
//!
//! ```text
//! β_s(n) = 1/n · Σ_{a+b+c=s} s!/(a! b! c!) · (c(n))_a · T_{b,c}(n)
//! T_{b,c}(n) = Σ_{j=1..n} β_b(n-j) β_c(j-1)
//! ```
//!
//! with `β_0 ≡ 1`. `T_{0,c}` is a prefix sum of `β_c` and is carried along
//! incrementally; only `T_{b,c}` with `b, c ≥ 1` needs a convolution, and
//! `T_{b,c} = T_{c,b}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use twofloat::TwoFloat;

use crate::distribution::{factorial, ComparisonDistribution};
use crate::error::{invalid, Error, Result};
use crate::quicksort::PivotCostModel;
use crate::rational::ExactRational;

/// Arithmetic used by the moment tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MomentMode {
    /// Arbitrary-precision rationals.
    #[default]
    Exact,
    /// Double-double floating point (about 31 significant digits).
    Float,
}

impl MomentMode {
    pub fn name(self) -> &'static str {
        match self {
            MomentMode::Exact => "exact",
            MomentMode::Float => "float",
        }
    }
}

impl std::str::FromStr for MomentMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "float" => Ok(Self::Float),
            other => Err(invalid(format!("unknown moment mode {other:?}"))),
        }
    }
}

/// One table entry, in whichever arithmetic the table was built with.
#[derive(Clone, Debug, PartialEq)]
pub enum MomentValue {
    Exact(ExactRational),
    Float(TwoFloat),
}

impl MomentValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            MomentValue::Exact(x) => x.to_f64(),
            MomentValue::Float(x) => x.hi() + x.lo(),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactRational> {
        match self {
            MomentValue::Exact(x) => Some(x),
            MomentValue::Float(_) => None,
        }
    }
}

impl fmt::Display for MomentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentValue::Exact(x) => write!(f, "{x}"),
            MomentValue::Float(x) => write!(f, "{:.16e}", x.hi() + x.lo()),
        }
    }
}

pub(crate) trait MomentScalar: Clone + for<'a> Add<&'a Self, Output = Self> {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_u64(v: u64) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_u64(&self, d: u64) -> Self;
}

impl MomentScalar for ExactRational {
    fn zero() -> Self {
        ExactRational::zero()
    }
    fn one() -> Self {
        ExactRational::one()
    }
    fn from_u64(v: u64) -> Self {
        ExactRational::from(v)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_u64(&self, d: u64) -> Self {
        self * ExactRational::recip_of(d)
    }
}

impl MomentScalar for TwoFloat {
    fn zero() -> Self {
        TwoFloat::from(0.0)
    }
    fn one() -> Self {
        TwoFloat::from(1.0)
    }
    fn from_u64(v: u64) -> Self {
        TwoFloat::from(v)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Mul::mul(*self, *other)
    }
    fn div_u64(&self, d: u64) -> Self {
        *self / TwoFloat::from(d)
    }
}

#[derive(Clone, Debug)]
enum Storage {
    Exact(Vec<Vec<ExactRational>>),
    Float(Vec<Vec<TwoFloat>>),
}

/// `β_s(n)` for `0 ≤ s ≤ s_max`, `0 ≤ n ≤ n_max`.
#[derive(Clone, Debug)]
pub struct MomentTable {
    n_max: usize,
    s_max: usize,
    model: PivotCostModel,
    storage: Storage,
}

impl MomentTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn model(&self) -> PivotCostModel {
        self.model
    }

    pub fn mode(&self) -> MomentMode {
        match self.storage {
            Storage::Exact(_) => MomentMode::Exact,
            Storage::Float(_) => MomentMode::Float,
        }
    }

    fn check(&self, n: usize, s: usize) -> Result<()> {
        if n > self.n_max || s > self.s_max {
            return Err(Error::MissingEntry { n, s });
        }
        Ok(())
    }

    pub fn get(&self, n: usize, s: usize) -> Result<MomentValue> {
        self.check(n, s)?;
        Ok(match &self.storage {
            Storage::Exact(t) => MomentValue::Exact(t[s][n].clone()),
            Storage::Float(t) => MomentValue::Float(t[s][n]),
        })
    }

    /// Exact entry; fails on a float-mode table.
    pub fn exact(&self, n: usize, s: usize) -> Result<&ExactRational> {
        self.check(n, s)?;
        match &self.storage {
            Storage::Exact(t) => Ok(&t[s][n]),
            Storage::Float(_) => Err(invalid("exact value requested from a float-mode moment table")),
        }
    }

    pub fn get_f64(&self, n: usize, s: usize) -> Result<f64> {
        Ok(self.get(n, s)?.to_f64())
    }
}

/// Fills a [`MomentTable`] under the default `n - 1` cost model.
pub fn factorial_moments_recurrence(n_max: usize, s_max: usize, mode: MomentMode) -> Result<MomentTable> {
    factorial_moments_recurrence_with_model(n_max, s_max, mode, PivotCostModel::NMinusOne)
}

pub fn factorial_moments_recurrence_with_model(
    n_max: usize,
    s_max: usize,
    mode: MomentMode,
    model: PivotCostModel,
) -> Result<MomentTable> {
    if s_max < 1 {
        return Err(invalid("s_max must be at least 1"));
    }
    let storage = match mode {
        MomentMode::Exact => Storage::Exact(leibniz_table(n_max, s_max, model)),
        MomentMode::Float => Storage::Float(leibniz_table(n_max, s_max, model)),
    };
    Ok(MomentTable {
        n_max,
        s_max,
        model,
        storage,
    })
}

/// `table[s][n] = β_s(n)`.
#[allow(clippy::needless_range_loop)]
pub(crate) fn leibniz_table<S: MomentScalar>(n_max: usize, s_max: usize, model: PivotCostModel) -> Vec<Vec<S>> {
    let mut beta: Vec<Vec<S>> = (0..=s_max).map(|_| Vec::with_capacity(n_max + 1)).collect();
    // prefix[s] = Σ_{m < current n} β_s(m)
    let mut prefix: Vec<S> = vec![S::zero(); s_max + 1];
    let multinomial = multinomials(s_max);

    for n in 0..=n_max {
        if n == 0 {
            beta[0].push(S::one());
            for row in beta.iter_mut().skip(1) {
                row.push(S::zero());
            }
        } else {
            let cost = model.stage_cost(n);
            let falling: Vec<S> = (0..=s_max)
                .scan(S::one(), |acc, a| {
                    let cur = acc.clone();
                    *acc = if cost >= a as u64 {
                        acc.mul_ref(&S::from_u64(cost - a as u64))
                    } else {
                        S::zero()
                    };
                    Some(cur)
                })
                .collect();
            let mut conv: HashMap<(usize, usize), S> = HashMap::new();
            let mut new_values = Vec::with_capacity(s_max);
            for s in 1..=s_max {
                let mut total = S::zero();
                for a in 0..=s {
                    if cost < a as u64 {
                        break;
                    }
                    for b in 0..=(s - a) {
                        let c = s - a - b;
                        let t = match (b, c) {
                            (0, c) => prefix[c].clone(),
                            (b, 0) => prefix[b].clone(),
                            (b, c) => {
                                let key = (b.min(c), b.max(c));
                                conv.entry(key)
                                    .or_insert_with(|| convolution(&beta[b], &beta[c], n))
                                    .clone()
                            }
                        };
                        let weight = S::from_u64(multinomial[s][a][b]);
                        total = total + &weight.mul_ref(&falling[a]).mul_ref(&t);
                    }
                }
                new_values.push(total.div_u64(n as u64));
            }
            beta[0].push(S::one());
            for (s, v) in new_values.into_iter().enumerate() {
                beta[s + 1].push(v);
            }
        }
        for s in 0..=s_max {
            prefix[s] = prefix[s].clone() + &beta[s][n];
        }
    }
    beta
}

/// `Σ_{i=0..n-1} x[n-1-i] · y[i]`, where `x`, `y` are moment rows of
/// positive order (so their entries at 0 and 1 vanish).
fn convolution<S: MomentScalar>(x: &[S], y: &[S], n: usize) -> S {
    let mut acc = S::zero();
    if n < 5 {
        return acc;
    }
    for i in 2..=(n - 3) {
        acc = acc + &x[n - 1 - i].mul_ref(&y[i]);
    }
    acc
}

/// `m[s][a][b] = s! / (a! b! (s-a-b)!)`.
fn multinomials(s_max: usize) -> Vec<Vec<Vec<u64>>> {
    let fact: Vec<u128> = (0..=s_max as u128)
        .scan(1u128, |f, k| {
            if k > 0 {
                *f *= k;
            }
            Some(*f)
        })
        .collect();
    (0..=s_max)
        .map(|s| {
            (0..=s)
                .map(|a| {
                    (0..=(s - a))
                        .map(|b| {
                            let c = s - a - b;
                            u64::try_from(fact[s] / (fact[a] * fact[b] * fact[c])).expect("multinomial fits in u64")
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `Σ_k (k)_s · a_{n,k} / n!`.
pub fn factorial_moment_from_distribution(dist: &ComparisonDistribution, s: usize) -> ExactRational {
    let mut sum = BigUint::default();
    for (&k, count) in dist.counts() {
        if k < s as u64 {
            continue;
        }
        let falling: BigUint = ((k - s as u64 + 1)..=k).map(BigUint::from).product();
        sum += falling * count;
    }
    ExactRational::new(BigInt::from(sum), BigInt::from(factorial(dist.n()))).expect("n! > 0")
}

/// Stirling numbers of the second kind, `S(s, j)` for `j = 0..=s`.
pub fn stirling2_row(s: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::from(1u32)];
    for m in 1..=s {
        let mut next = vec![BigUint::default(); m + 1];
        for j in 1..=m {
            let mut v = BigUint::from(j) * row.get(j).cloned().unwrap_or_default();
            v += &row[j - 1];
            next[j] = v;
        }
        row = next;
    }
    row
}

/// `E[C_n^s] = Σ_j S(s, j) β_j(n)`.
pub fn raw_moment(table: &MomentTable, n: usize, s: usize) -> Result<MomentValue> {
    table.check(n, s)?;
    let stirling = stirling2_row(s);
    Ok(match &table.storage {
        Storage::Exact(t) => MomentValue::Exact(
            (0..=s)
                .map(|j| ExactRational::from(stirling[j].clone()) * &t[j][n])
                .sum(),
        ),
        Storage::Float(t) => MomentValue::Float((0..=s).fold(TwoFloat::from(0.0), |acc, j| {
            acc + TwoFloat::from(ExactRational::from(stirling[j].clone()).to_f64()) * t[j][n]
        })),
    })
}

/// `Var[C_n] = β_2 + β_1 - β_1²`.
pub fn variance(table: &MomentTable, n: usize) -> Result<MomentValue> {
    table.check(n, 2)?;
    Ok(match &table.storage {
        Storage::Exact(t) => MomentValue::Exact(&t[2][n] + &t[1][n] - &t[1][n] * &t[1][n]),
        Storage::Float(t) => MomentValue::Float(t[2][n] + t[1][n] - t[1][n] * t[1][n]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::distribution;
    use crate::rational::rat;

    const M: PivotCostModel = PivotCostModel::NMinusOne;

    #[test]
    fn from_distribution_values() {
        let d3 = distribution(3, M).unwrap();
        assert_eq!(factorial_moment_from_distribution(&d3, 0), rat(1, 1));
        assert_eq!(factorial_moment_from_distribution(&d3, 1), rat(8, 3));
        assert_eq!(factorial_moment_from_distribution(&d3, 2), rat(14, 3));
    }

    #[test]
    fn recurrence_small_values() {
        let t = factorial_moments_recurrence(6, 3, MomentMode::Exact).unwrap();
        assert_eq!(t.exact(4, 1).unwrap(), &rat(29, 6));
        assert_eq!(t.exact(3, 2).unwrap(), &rat(14, 3));
        assert_eq!(t.exact(2, 1).unwrap(), &rat(1, 1));
        for s in 1..=3 {
            assert!(t.exact(0, s).unwrap().is_zero());
            assert!(t.exact(1, s).unwrap().is_zero());
        }
        for n in 0..=6 {
            assert_eq!(t.exact(n, 0).unwrap(), &rat(1, 1));
        }
    }

    #[test]
    fn recurrence_matches_distribution_route() {
        let t = factorial_moments_recurrence(14, 4, MomentMode::Exact).unwrap();
        for n in 0..=14 {
            let d = distribution(n, M).unwrap();
            for s in 0..=4 {
                assert_eq!(
                    t.exact(n, s).unwrap(),
                    &factorial_moment_from_distribution(&d, s),
                    "n={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn plus_one_model_recurrence_matches_its_distribution() {
        let m = PivotCostModel::NPlusOne;
        let t = factorial_moments_recurrence_with_model(10, 3, MomentMode::Exact, m).unwrap();
        for n in 0..=10 {
            let d = distribution(n, m).unwrap();
            for s in 1..=3 {
                assert_eq!(t.exact(n, s).unwrap(), &factorial_moment_from_distribution(&d, s));
            }
        }
    }

    #[test]
    fn float_mode_tracks_exact() {
        let e = factorial_moments_recurrence(150, 4, MomentMode::Exact).unwrap();
        let f = factorial_moments_recurrence(150, 4, MomentMode::Float).unwrap();
        assert_eq!(f.mode(), MomentMode::Float);
        for n in 2..=150 {
            for s in 1..=4 {
                let x = e.get_f64(n, s).unwrap();
                let y = f.get_f64(n, s).unwrap();
                let err = if x == 0.0 { y.abs() } else { ((x - y) / x).abs() };
                assert!(err < 1e-14, "n={n} s={s} {x} {y}");
            }
        }
        assert!(f.exact(3, 1).is_err());
    }

    #[test]
    fn raw_moments_and_variance() {
        let t = factorial_moments_recurrence(5, 3, MomentMode::Exact).unwrap();
        assert_eq!(raw_moment(&t, 3, 2).unwrap(), MomentValue::Exact(rat(22, 3)));
        assert_eq!(variance(&t, 3).unwrap(), MomentValue::Exact(rat(2, 9)));
        for n in 0..=5 {
            assert_eq!(
                raw_moment(&t, n, 1).unwrap().as_exact().unwrap(),
                t.exact(n, 1).unwrap()
            );
        }
        assert!(matches!(raw_moment(&t, 6, 1), Err(Error::MissingEntry { n: 6, s: 1 })));
        assert!(raw_moment(&t, 3, 4).is_err());
    }

    #[test]
    fn raw_moment_matches_direct_power_sum() {
        let t = factorial_moments_recurrence(7, 4, MomentMode::Exact).unwrap();
        let d = distribution(7, M).unwrap();
        for s in 1..=4u32 {
            let direct: ExactRational = d
                .counts()
                .iter()
                .map(|(&k, c)| ExactRational::from(BigUint::from(k).pow(s) * c))
                .sum::<ExactRational>()
                * ExactRational::from(BigInt::from(factorial(7))).recip();
            assert_eq!(raw_moment(&t, 7, s as usize).unwrap(), MomentValue::Exact(direct));
        }
    }

    #[test]
    fn stirling_rows() {
        let r: Vec<u64> = stirling2_row(4).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(r, vec![0, 1, 7, 6, 1]);
        assert_eq!(stirling2_row(0), vec![BigUint::from(1u32)]);
    }

    #[test]
    fn rejects_zero_order() {
        assert!(factorial_moments_recurrence(5, 0, MomentMode::Exact).is_err());
    }
}
