//! Harmonic numbers and polygamma values at positive integers.

#![allow(clippy::excessive_precision)]

use crate::error::{invalid, Result};
use crate::rational::ExactRational;
use num_bigint::BigInt;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082402431;

/// ζ(2) through ζ(12); index `k` holds ζ(k), entries 0 and 1 unused.
pub const ZETA: [f64; 13] = [
    f64::NAN,
    f64::INFINITY,
    1.644934066848226436472415166646025189,
    1.202056903159594285399738161511449991,
    1.082323233711138191516003696541167903,
    1.036927755143369926331365486457034168,
    1.017343061984449139714517929790920528,
    1.008349277381922826839797549849796760,
    1.004077356197944339378685238508652465,
    1.002008392826082214417852769232412060,
    1.000994575127818085337145958900319017,
    1.000494188604119464558702282526469936,
    1.000246086553308048298637998047739671,
];

/// Highest polygamma order supported by the embedded ζ table.
pub const MAX_POLYGAMMA_ORDER: usize = ZETA.len() - 2;

/// Constants feeding the polygamma evaluator. Swappable so the self-test
/// can prove it catches a corrupted table.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialConstants {
    pub euler_gamma: f64,
    pub zeta: [f64; 13],
}

impl Default for SpecialConstants {
    fn default() -> Self {
        Self {
            euler_gamma: EULER_GAMMA,
            zeta: ZETA,
        }
    }
}

impl SpecialConstants {
    /// ψ^{(r)}(m) for a positive integer `m`.
    ///
    /// `ψ(m) = H_{m-1} - γ` and, for `r ≥ 1`,
    /// `ψ^{(r)}(m) = (-1)^{r+1} r! (ζ(r+1) - H_{m-1}^{(r+1)})`.
    pub fn polygamma(&self, r: usize, m: u64) -> Result<f64> {
        if m == 0 {
            return Err(invalid("polygamma is evaluated at positive integers only"));
        }
        if r > MAX_POLYGAMMA_ORDER {
            return Err(invalid(format!("polygamma order {r} exceeds {MAX_POLYGAMMA_ORDER}")));
        }
        let h = if m == 1 {
            0.0
        } else {
            harmonic_generalized(m - 1, r as u32 + 1).to_f64()
        };
        if r == 0 {
            return Ok(h - self.euler_gamma);
        }
        let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
        let fact: f64 = (1..=r).map(|k| k as f64).product();
        Ok(sign * fact * (self.zeta[r + 1] - h))
    }
}

/// `H_s = Σ_{k=1..s} 1/k`, exact. `H_0 = 0`.
pub fn harmonic(s: u64) -> ExactRational {
    harmonic_generalized(s, 1)
}

/// `H_s^{(r)} = Σ_{k=1..s} k^{-r}`, exact.
pub fn harmonic_generalized(s: u64, r: u32) -> ExactRational {
    // sum over a common denominator, then reduce once
    let mut num = BigInt::from(0u32);
    let mut den = BigInt::from(1u32);
    for k in 1..=s {
        let kr = BigInt::from(k).pow(r);
        num = num * &kr + &den;
        den *= kr;
        if k % 64 == 0 {
            let x = ExactRational::new(num, den).expect("positive denominator");
            num = x.numer().clone();
            den = x.denom().clone();
        }
    }
    ExactRational::new(num, den).expect("positive denominator")
}

/// [`harmonic_generalized`] with the `s ≥ 1, r ≥ 1` precondition enforced.
pub fn harmonic_checked(s: u64, r: u32) -> Result<ExactRational> {
    if s == 0 || r == 0 {
        return Err(invalid("harmonic numbers need s >= 1 and r >= 1"));
    }
    Ok(harmonic_generalized(s, r))
}

/// ψ^{(r)}(m) with the standard constants.
pub fn polygamma_at_integer(r: usize, m: u64) -> Result<f64> {
    SpecialConstants::default().polygamma(r, m)
}
