//! Descending-logarithm expansion of `[u^n] (1-u)^{-α} L(u)^β`.
//!
//! ```text
//! [u^n] f ~ n^{α-1}/(α-1)! · (log n)^β · Σ_k C_k/k! · (β)_k / (log n)^k
//! C_k = (α-1)! · (d/dx)^k [1/Γ(x)] at x = α
//! ```

use super::special::{SpecialConstants, MAX_POLYGAMMA_ORDER};
use crate::error::{invalid, Result};

/// Transfer coefficients `C_0..=C_K` for a given `(α, β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferExpansion {
    pub alpha: u32,
    pub beta: u32,
    pub c: Vec<f64>,
}

impl TransferExpansion {
    /// Depth defaults to `min(β, 3)`.
    pub fn new(alpha: u32, beta: u32) -> Result<Self> {
        Self::with_depth(alpha, beta, beta.min(3) as usize)
    }

    pub fn with_depth(alpha: u32, beta: u32, depth: usize) -> Result<Self> {
        if depth > beta as usize {
            return Err(invalid(format!(
                "truncation depth {depth} exceeds beta = {beta}; terms beyond k = beta vanish"
            )));
        }
        let c = reciprocal_gamma_derivatives(alpha, depth)?;
        Ok(Self { alpha, beta, c })
    }

    pub fn depth(&self) -> usize {
        self.c.len() - 1
    }

    /// Evaluates the expansion truncated after `C_depth`, natural log.
    pub fn evaluate(&self, n: u64, depth: usize) -> Result<f64> {
        if n < 2 {
            return Err(invalid("transfer expansion needs n >= 2"));
        }
        if depth > self.depth() {
            return Err(invalid(format!(
                "depth {depth} exceeds computed depth {}",
                self.depth()
            )));
        }
        let log_n = (n as f64).ln();
        let prefactor = (n as f64).powi(self.alpha as i32 - 1) / factorial_f64(self.alpha as usize - 1);
        let mut sum = 0.0;
        let mut falling = 1.0; // (β)_k
        let mut k_fact = 1.0;
        let mut log_pow = 1.0;
        for k in 0..=depth {
            if k > 0 {
                falling *= (self.beta as f64) - (k as f64 - 1.0);
                k_fact *= k as f64;
                log_pow *= log_n;
            }
            sum += self.c[k] / k_fact * falling / log_pow;
        }
        Ok(prefactor * log_n.powi(self.beta as i32) * sum)
    }
}

fn factorial_f64(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `C_0..=C_K` at `α`, using the standard constants.
pub fn reciprocal_gamma_derivatives(alpha: u32, k_max: usize) -> Result<Vec<f64>> {
    reciprocal_gamma_derivatives_with(&SpecialConstants::default(), alpha, k_max)
}

/// `C_k = (α-1)!/Γ(α) · B_k(g_1, ..., g_k)` where `g_i = -ψ^{(i-1)}(α)` are
/// the derivatives of `-log Γ` and `B_k` is the complete exponential Bell
/// polynomial. The prefactor is exactly 1 at integer `α`.
pub fn reciprocal_gamma_derivatives_with(consts: &SpecialConstants, alpha: u32, k_max: usize) -> Result<Vec<f64>> {
    if alpha == 0 {
        return Err(invalid("alpha must be a positive integer"));
    }
    if k_max > MAX_POLYGAMMA_ORDER + 1 {
        return Err(invalid(format!(
            "at most {} transfer coefficients are supported",
            MAX_POLYGAMMA_ORDER + 1
        )));
    }
    let g: Vec<f64> = (1..=k_max)
        .map(|i| consts.polygamma(i - 1, alpha as u64).map(|p| -p))
        .collect::<Result<_>>()?;
    // B_{m+1} = Σ_{i=0..m} binom(m, i) B_{m-i} g_{i+1}
    let mut bell = vec![1.0];
    for m in 0..k_max {
        let mut next = 0.0;
        let mut binom = 1.0;
        for i in 0..=m {
            next += binom * bell[m - i] * g[i];
            binom = binom * (m - i) as f64 / (i + 1) as f64;
        }
        bell.push(next);
    }
    Ok(bell)
}

/// Asymptotic estimate of `[u^n] (1-u)^{-α} L(u)^β` truncated at depth `K`.
pub fn transfer_coeff_asymptotic(alpha: u32, beta: u32, n: u64, depth: usize) -> Result<f64> {
    if n < 2 {
        return Err(invalid("transfer expansion needs n >= 2"));
    }
    TransferExpansion::with_depth(alpha, beta, depth)?.evaluate(n, depth)
}
