//! Truncated formal power series over exact rationals.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0..=c_N` and stands for
//! `c_0 + c_1 u + ... + c_N u^N + O(u^{N+1})`. Binary operations on
//! series of different orders truncate to the smaller one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::rational::ExactRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactRational>,
}

impl TruncatedSeries {
    /// Builds a series whose order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient vector; a series always knows at
    /// least its constant term.
    pub fn from_coeffs(coeffs: Vec<ExactRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ExactRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(ExactRational::one(), 0, order)
    }

    /// `c · u^k`, truncated at `order`.
    pub fn monomial(c: ExactRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 + u + u^2 + ...`
    pub fn geometric(order: usize) -> Self {
        Self {
            coeffs: vec![ExactRational::one(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[u^n]`. Panics when `n` exceeds the known order.
    pub fn coeff(&self, n: usize) -> &ExactRational {
        assert!(
            n <= self.order(),
            "coefficient u^{n} unknown beyond order {}",
            self.order()
        );
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..len).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..len).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: convolve(&self.coeffs, &other.coeffs, len),
        }
    }

    /// `k`-th formal derivative. The result has order `order - k`.
    pub fn derivative(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(invalid(format!(
                "derivative of order {k} exceeds series order {}",
                self.order()
            )));
        }
        let coeffs = (k..self.coeffs.len())
            .map(|n| {
                // n (n-1) ... (n-k+1)
                let falling: BigInt = ((n - k + 1)..=n).map(BigInt::from).product();
                &self.coeffs[n] * ExactRational::from_integer(falling)
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// Multiplication by `u^k`. Raises the order by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }
}

/// `[u^0..len)` of the product of two coefficient slices.
///
/// Both operands are lifted to a common denominator so that the inner
/// loop runs on integers, and each output coefficient is reduced once.
pub(crate) fn convolve(a: &[ExactRational], b: &[ExactRational], len: usize) -> Vec<ExactRational> {
    let (an, ad) = common_denominator(&a[..len.min(a.len())]);
    let (bn, bd) = common_denominator(&b[..len.min(b.len())]);
    let denom = ad * bd;

    let a_nz: Vec<(usize, &BigInt)> = an.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    let mut out = Vec::with_capacity(len);
    let mut acc = BigInt::zero();
    for n in 0..len {
        acc.set_zero();
        for &(i, x) in &a_nz {
            if i > n {
                break;
            }
            if let Some(y) = bn.get(n - i) {
                if !y.is_zero() {
                    acc += x * y;
                }
            }
        }
        out.push(ExactRational::new(acc.clone(), denom.clone()).expect("nonzero denominator"));
    }
    out
}

/// Returns integer numerators `N_i` and `D` with `x_i = N_i / D`.
fn common_denominator(xs: &[ExactRational]) -> (Vec<BigInt>, BigInt) {
    let mut d = BigInt::one();
    for x in xs {
        if !x.denom().is_one() {
            d = d.lcm(x.denom());
        }
    }
    let nums = xs
        .iter()
        .map(|x| {
            if x.denom().is_one() {
                x.numer() * &d
            } else {
                x.numer() * (&d / x.denom())
            }
        })
        .collect();
    (nums, d)
}

/// `L(u) = log(1/(1-u)) = Σ_{m≥1} u^m / m`, truncated at `order`.
pub fn log_inv_series(order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|m| {
            if m == 0 {
                ExactRational::zero()
            } else {
                ExactRational::recip_of(m as u64)
            }
        })
        .collect();
    TruncatedSeries { coeffs }
}

/// `(1-u)^{-α}`: coefficient of `u^n` is `binomial(n+α-1, α-1)`.
pub fn binomial_pow_series(alpha: u32, order: usize) -> Result<TruncatedSeries> {
    if alpha == 0 {
        return Err(invalid("binomial_pow_series needs alpha >= 1"));
    }
    let k = alpha as usize - 1;
    // binomial(n+k, k) = binomial(n-1+k, k) * (n+k) / n
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = BigInt::one();
    coeffs.push(ExactRational::from_integer(c.clone()));
    for n in 1..=order {
        c = c * BigInt::from(n + k) / BigInt::from(n);
        coeffs.push(ExactRational::from_integer(c.clone()));
    }
    Ok(TruncatedSeries { coeffs })
}

/// Exact `[u^n] L(u)^β (1-u)^{-α}`, by series multiplication at order `n`.
pub fn coeff_exact(alpha: u32, beta: u32, n: usize) -> Result<ExactRational> {
    let log = log_inv_series(n);
    let mut f = binomial_pow_series(alpha, n)?;
    for _ in 0..beta {
        f = f.mul(&log);
    }
    Ok(f.coeff(n).clone())
}
