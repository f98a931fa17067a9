//! Generating functions `f_s(u) = Σ_n β_s(n) u^n` of the factorial moments,
//! obtained by solving the first-order linear ODE for `f_s` coefficient by
//! coefficient.
//!
//! With `X_{j,k} = u^k f_j^{(k)}(u) / (j! k!)` the source term is
//!
//! ```text
//! p_s = s! · Σ_{j+k+l+m=s, j≠s, l≠s} X_{j,k} X_{l,m}
//!     = s! · Σ_{r=0..s} Y_r Y_{s-r},   Y_r = Σ_{j+k=r, (j,k)≠(s,0)} X_{j,k}
//! ```
//!
//! and `(1-u) f_s' - 2 f_s = (1-u) p_s` advances the coefficients:
//! `f_{s,n+1} = ((n+2) f_{s,n} + p_{s,n} - p_{s,n-1}) / (n+1)`, `f_{s,0} = 0`.

use crate::error::{invalid, Result};
use crate::rational::ExactRational;
use crate::series::TruncatedSeries;

/// `f_s(u)` modulo `u^{order+1}`, for `s ≥ 1`.
pub fn moment_series(s: usize, order: usize) -> Result<TruncatedSeries> {
    if s == 0 {
        return Err(invalid("moment_series needs s >= 1"));
    }
    Ok(moment_series_family(s, order).pop().expect("family is non-empty"))
}

/// `[f_0, f_1, ..., f_{s_max}]`, each modulo `u^{order+1}`.
pub fn moment_series_family(s_max: usize, order: usize) -> Vec<TruncatedSeries> {
    let mut family = vec![TruncatedSeries::geometric(order)];
    for s in 1..=s_max {
        let p = source_term(&family, s, order);
        family.push(solve_linear_ode(&p));
    }
    family
}

/// `p_s(u)` from `f_0..f_{s-1}`.
pub fn source_term(lower: &[TruncatedSeries], s: usize, order: usize) -> TruncatedSeries {
    assert!(lower.len() >= s, "need f_0..f_(s-1) to build p_s");
    let mut fact = vec![ExactRational::one()];
    for k in 1..=s {
        fact.push(&fact[k - 1] * ExactRational::from(k));
    }
    // x(j, k) = u^k f_j^(k) / (j! k!)
    let x = |j: usize, k: usize| -> TruncatedSeries {
        let d = lower[j]
            .truncate(order)
            .derivative(k)
            .expect("k <= order is checked by the caller")
            .shift_up(k);
        d.scale(&(&fact[j] * &fact[k]).recip())
    };
    let level = |r: usize| -> TruncatedSeries {
        let mut y = TruncatedSeries::zero(order);
        for j in 0..=r {
            let k = r - j;
            if j == s || k > order {
                continue;
            }
            y = y.add(&x(j, k));
        }
        y
    };
    let levels: Vec<TruncatedSeries> = (0..=s).map(level).collect();

    let mut p = TruncatedSeries::zero(order);
    for r in 0..=s / 2 {
        let prod = levels[r].mul(&levels[s - r]);
        p = if r == s - r {
            p.add(&prod)
        } else {
            p.add(&prod.scale(&ExactRational::from(2u32)))
        };
    }
    p.scale(&fact[s])
}

/// The solution of `f' - 2f/(1-u) = p` with `f(0) = 0`, same order as `p`.
pub fn solve_linear_ode(p: &TruncatedSeries) -> TruncatedSeries {
    let order = p.order();
    let mut f = Vec::with_capacity(order + 1);
    f.push(ExactRational::zero());
    for n in 0..order {
        let prev_p = if n == 0 {
            ExactRational::zero()
        } else {
            p.coeff(n - 1).clone()
        };
        let next = (ExactRational::from(n + 2) * &f[n] + p.coeff(n) - prev_p) * ExactRational::recip_of(n as u64 + 1);
        f.push(next);
    }
    TruncatedSeries::from_coeffs(f)
}
