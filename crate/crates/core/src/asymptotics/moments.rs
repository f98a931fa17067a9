//! Two-term asymptotics of the factorial moments and their diagnostics.

use super::special::{harmonic, EULER_GAMMA};
use crate::error::{invalid, Result};
use crate::moments::MomentTable;
use crate::rational::ExactRational;
use crate::series::{binomial_pow_series, log_inv_series, TruncatedSeries};

/// `β_s(n) ≈ 2^s n^s log^s n + 2^s s (γ - 2) n^s log^{s-1} n`, with an
/// `O(n^s log^{s-2} n)` remainder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentAsymptote {
    pub s: u32,
}

impl MomentAsymptote {
    pub fn new(s: u32) -> Result<Self> {
        if s == 0 {
            return Err(invalid("moment order must be at least 1"));
        }
        Ok(Self { s })
    }

    pub fn leading_coefficient(&self) -> f64 {
        2f64.powi(self.s as i32)
    }

    pub fn second_coefficient(&self) -> f64 {
        2f64.powi(self.s as i32) * self.s as f64 * (EULER_GAMMA - 2.0)
    }

    /// `(s, s - 2)`: powers of `n` and `log n` in the remainder bound.
    pub fn remainder_exponents(&self) -> (i32, i32) {
        (self.s as i32, self.s as i32 - 2)
    }

    pub fn evaluate(&self, n: u64) -> Result<f64> {
        self.evaluate_terms(n, 2)
    }

    /// The asymptote truncated after `terms` (1 or 2) terms.
    pub fn evaluate_terms(&self, n: u64, terms: usize) -> Result<f64> {
        if n < 2 {
            return Err(invalid("moment asymptote needs n >= 2"));
        }
        if !(1..=2).contains(&terms) {
            return Err(invalid(format!("the asymptote has two terms, {terms} requested")));
        }
        let s = self.s as i32;
        let nf = n as f64;
        let log_n = nf.ln();
        let ns = nf.powi(s);
        let mut v = self.leading_coefficient() * ns * log_n.powi(s);
        if terms == 2 {
            v += self.second_coefficient() * ns * log_n.powi(s - 1);
        }
        Ok(v)
    }
}

pub fn moment_asymptotic(s: u32, n: u64) -> Result<f64> {
    MomentAsymptote::new(s)?.evaluate(n)
}

/// `(β_s(n) - asymptote) / (n^s log^{s-2} n)` at each grid point.
pub fn residual_diagnostic(table: &MomentTable, s: u32, grid: &[u64]) -> Result<Vec<(u64, f64)>> {
    let asym = MomentAsymptote::new(s)?;
    grid.iter()
        .map(|&n| {
            let beta = table.get_f64(n as usize, s as usize)?;
            Ok((n, scaled_residual(&asym, beta, n)?))
        })
        .collect()
}

pub(crate) fn scaled_residual(asym: &MomentAsymptote, beta: f64, n: u64) -> Result<f64> {
    let (p, q) = asym.remainder_exponents();
    let nf = n as f64;
    Ok((beta - asym.evaluate(n)?) / (nf.powi(p) * nf.ln().powi(q)))
}

/// Leading terms of `f_s(u)`:
/// `2^s s! L^s (1-u)^{-(s+1)} + s (H_s - 2) 2^s s! L^{s-1} (1-u)^{-(s+1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsLeadingForm {
    pub s: u32,
    pub first: ExactRational,
    pub second: ExactRational,
}

impl FsLeadingForm {
    /// `second / first = s (H_s - 2)`.
    pub fn ratio(&self) -> ExactRational {
        &self.second / &self.first
    }

    /// The two-term form as an exact truncated series.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let s = self.s;
        let log = log_inv_series(order);
        let pole = binomial_pow_series(s + 1, order).expect("s + 1 >= 1");
        let mut first = pole.clone();
        for _ in 0..s {
            first = first.mul(&log);
        }
        let mut out = first.scale(&self.first);
        if s >= 1 && !self.second.is_zero() {
            let mut second = pole;
            for _ in 0..s - 1 {
                second = second.mul(&log);
            }
            out = out.add(&second.scale(&self.second));
        }
        out
    }
}

pub fn fs_leading_terms(s: u32) -> FsLeadingForm {
    let two_s_fact =
        ExactRational::from(2u64).pow(s as i32) * (1..=s as u64).map(ExactRational::from).product::<ExactRational>();
    let second = ExactRational::from(s) * (harmonic(s as u64) - ExactRational::from(2u32)) * &two_s_fact;
    FsLeadingForm {
        s,
        first: two_s_fact,
        second,
    }
}

/// Checks `Σ_{k=1..s-1} k H_k = s(s-1)/2 · (H_s - 1/2)` exactly.
pub fn harmonic_weighted_identity_check(s: u64) -> Result<bool> {
    if s < 2 {
        return Err(invalid("identity is stated for s >= 2"));
    }
    let mut h = ExactRational::zero();
    let mut lhs = ExactRational::zero();
    for k in 1..s {
        h += ExactRational::recip_of(k);
        lhs += ExactRational::from(k) * &h;
    }
    let h_s = harmonic(s);
    let rhs =
        ExactRational::new(s * (s - 1), 2u32).expect("nonzero") * (h_s - ExactRational::new(1, 2).expect("nonzero"));
    Ok(lhs == rhs)
}
