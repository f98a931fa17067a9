//! Acceptance gate. Each test checks one criterion and prints a
//! `[PASS]`/`[FAIL]` line per sub-check; run with `--nocapture` to see them.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use qsmoments_core::asymptotics::{
    harmonic, harmonic_weighted_identity_check, moment_asymptotic, reciprocal_gamma_derivatives, residual_diagnostic,
    transfer_coeff_asymptotic, EULER_GAMMA,
};
use qsmoments_core::{
    brute_force_distribution, coeff_exact, distribution, factorial_moment_from_distribution,
    factorial_moments_recurrence, moment_series, simulate, variance, ExactRational, MomentMode, MomentValue, PgfEngine,
    PivotCostModel, SimConfig,
};

const M: PivotCostModel = PivotCostModel::NMinusOne;

fn report(criterion: u32, what: &str, ok: bool) -> bool {
    println!("[{}] criterion {criterion}: {what}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn within_budget(criterion: u32, start: Instant, budget: Duration) -> bool {
    let elapsed = start.elapsed();
    report(
        criterion,
        &format!("runtime {:.2?} < {:?}", elapsed, budget),
        elapsed < budget,
    )
}

fn rat(p: i64, q: i64) -> ExactRational {
    ExactRational::new(p, q).unwrap()
}

/// Closed form of the mean, `2(n+1)H_n - 4n`, built from a plain harmonic sum.
fn mean_closed_form(n: u64) -> ExactRational {
    let h: ExactRational = (1..=n).map(|k| rat(1, k as i64)).sum();
    ExactRational::from(2 * (n + 1)) * h - ExactRational::from(4 * n)
}

#[test]
fn criterion_01_oracle_equivalence() {
    let start = Instant::now();
    let mut engine = PgfEngine::new(M);
    let mut all = true;
    for n in 1..=8 {
        let ok = engine.distribution(n).unwrap() == brute_force_distribution(n, M).unwrap();
        all &= report(1, &format!("distribution({n}) == brute force"), ok);
    }
    all &= within_budget(1, start, Duration::from_secs(60));
    assert!(all);
}

#[test]
fn criterion_02_three_route_agreement() {
    let start = Instant::now();
    let table = factorial_moments_recurrence(200, 4, MomentMode::Exact).unwrap();
    let series: Vec<_> = (1..=4).map(|s| moment_series(s, 200).unwrap()).collect();
    let mut engine = PgfEngine::new(M);
    let mut all = true;

    let mut three_route = true;
    for n in 0..=40 {
        let dist = engine.distribution(n).unwrap();
        for s in 1..=4 {
            let a = factorial_moment_from_distribution(&dist, s);
            let b = table.exact(n, s).unwrap();
            let c = series[s - 1].coeff(n);
            if &a != b || b != c {
                println!("  mismatch at n={n} s={s}: {a} / {b} / {c}");
                three_route = false;
            }
        }
    }
    all &= report(
        2,
        "distribution, recurrence and series agree for s<=4, n<=40",
        three_route,
    );

    let mut two_route = true;
    for n in 0..=200 {
        for s in 1..=4 {
            if table.exact(n, s).unwrap() != series[s - 1].coeff(n) {
                println!("  mismatch at n={n} s={s}");
                two_route = false;
            }
        }
    }
    all &= report(2, "recurrence and series agree for s<=4, n<=200", two_route);
    all &= within_budget(2, start, Duration::from_secs(120));
    assert!(all);
}

#[test]
fn criterion_03_known_values() {
    let t = factorial_moments_recurrence(4, 2, MomentMode::Exact).unwrap();
    let mut all = true;
    all &= report(3, "beta_1(3) = 8/3", t.exact(3, 1).unwrap() == &rat(8, 3));
    all &= report(3, "beta_1(4) = 29/6", t.exact(4, 1).unwrap() == &rat(29, 6));
    all &= report(3, "beta_2(3) = 14/3", t.exact(3, 2).unwrap() == &rat(14, 3));
    all &= report(
        3,
        "variance(3) = 2/9",
        variance(&t, 3).unwrap() == MomentValue::Exact(rat(2, 9)),
    );

    // the same values straight from exhaustive enumeration
    let b3 = brute_force_distribution(3, M).unwrap();
    let b4 = brute_force_distribution(4, M).unwrap();
    all &= report(3, "brute force beta_1(3), beta_2(3)", {
        factorial_moment_from_distribution(&b3, 1) == rat(8, 3)
            && factorial_moment_from_distribution(&b3, 2) == rat(14, 3)
    });
    all &= report(
        3,
        "brute force beta_1(4)",
        factorial_moment_from_distribution(&b4, 1) == rat(29, 6),
    );
    all &= report(3, "a_4 = {4:12, 5:4, 6:8}", {
        distribution(4, M).unwrap().as_u64_pairs() == vec![(4, 12), (5, 4), (6, 8)]
            && b4.as_u64_pairs() == vec![(4, 12), (5, 4), (6, 8)]
    });

    let mut engine = PgfEngine::new(M);
    let tail = (1..=40usize).all(|n| {
        let d = engine.distribution(n).unwrap();
        d.count((n * (n - 1) / 2) as u64) == BigUint::from(2u32).pow(n as u32 - 1)
    });
    all &= report(3, "a_{n, n(n-1)/2} = 2^(n-1) for n <= 40", tail);
    assert!(all);
}

#[test]
fn criterion_04_mean_closed_form() {
    let mut all = true;
    let oracle_ok = (1..=8).all(|n| {
        let d = brute_force_distribution(n, M).unwrap();
        factorial_moment_from_distribution(&d, 1) == mean_closed_form(n as u64)
    });
    all &= report(4, "closed form matches brute force for n <= 8", oracle_ok);
    let t = factorial_moments_recurrence(200, 1, MomentMode::Exact).unwrap();
    let rec_ok = (0..=200).all(|n| t.exact(n, 1).unwrap() == &mean_closed_form(n as u64));
    all &= report(4, "beta_1(n) = 2(n+1)H_n - 4n for n <= 200", rec_ok);
    assert!(all);
}

#[test]
fn criterion_05_two_term_convergence() {
    let start = Instant::now();
    let table = factorial_moments_recurrence(10_000, 3, MomentMode::Float).unwrap();
    let mut all = true;
    let grid = [100u64, 1_000, 10_000];
    for s in 1..=3u32 {
        let errs: Vec<f64> = grid
            .iter()
            .map(|&n| {
                let exact = table.get_f64(n as usize, s as usize).unwrap();
                ((moment_asymptotic(s, n).unwrap() - exact) / exact).abs()
            })
            .collect();
        println!("  s={s} relative errors {errs:?}");
        if s == 1 {
            all &= report(
                5,
                &format!("s=1 relative error {:.3e} < 0.5% at n=10^4", errs[2]),
                errs[2] < 5e-3,
            );
        }
        let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
        all &= report(5, &format!("s={s} relative error strictly decreasing"), decreasing);
    }

    let residual_grid = [100u64, 300, 1_000, 3_000, 10_000];
    for s in 1..=3u32 {
        let r = residual_diagnostic(&table, s, &residual_grid).unwrap();
        let mags: Vec<f64> = r.iter().map(|(_, v)| v.abs()).collect();
        println!("  s={s} scaled residuals {r:?}");
        let last = *mags.last().unwrap();
        let grid_max = mags.iter().cloned().fold(0.0, f64::max);
        let earlier_max = mags[..mags.len() - 1].iter().cloned().fold(0.0, f64::max);
        all &= report(
            5,
            &format!("s={s} residuals finite"),
            mags.iter().all(|v| v.is_finite()),
        );
        all &= report(5, &format!("s={s} |r(10^4)| <= 2 x grid max"), last <= 2.0 * grid_max);
        all &= report(
            5,
            &format!("s={s} |r(10^4)| <= 2 x max over smaller n"),
            last <= 2.0 * earlier_max,
        );
    }
    all &= within_budget(5, start, Duration::from_secs(60));
    assert!(all);
}

#[test]
fn criterion_06_transfer_accuracy() {
    let start = Instant::now();
    let mut all = true;
    let exact = coeff_exact(2, 1, 2000).unwrap().to_f64();
    let asym = transfer_coeff_asymptotic(2, 1, 2000, 1).unwrap();
    let rel = ((asym - exact) / exact).abs();
    println!("  (2,1,2000): exact {exact:.6} asymptotic {asym:.6}");
    all &= report(
        6,
        &format!("(2,1) n=2000 K=1 relative error {rel:.3e} <= 0.5%"),
        rel <= 5e-3,
    );

    let exact = coeff_exact(3, 2, 1000).unwrap().to_f64();
    let e0 = ((transfer_coeff_asymptotic(3, 2, 1000, 0).unwrap() - exact) / exact).abs();
    let e2 = ((transfer_coeff_asymptotic(3, 2, 1000, 2).unwrap() - exact) / exact).abs();
    all &= report(
        6,
        &format!("(3,2) n=1000 error at K=2 ({e2:.3e}) < K=0 ({e0:.3e})"),
        e2 < e0,
    );
    all &= within_budget(6, start, Duration::from_secs(30));
    assert!(all);
}

/// `(α-1)! · (1/Γ)''(α)` by a central second difference with step 1e-4.
fn c2_finite_difference(alpha: u32) -> f64 {
    let h = 1e-4;
    let x = alpha as f64;
    let rg = |t: f64| 1.0 / libm::tgamma(t);
    let second = (rg(x + h) - 2.0 * rg(x) + rg(x - h)) / (h * h);
    let fact: f64 = (1..alpha).map(|k| k as f64).product();
    fact * second
}

#[test]
fn criterion_07_transfer_coefficients() {
    let mut all = true;
    for s in 1..=10u32 {
        let c = reciprocal_gamma_derivatives(s + 1, 1).unwrap();
        let expected = EULER_GAMMA - harmonic(s as u64).to_f64();
        all &= report(
            7,
            &format!("C_1 at alpha={} within 1e-10", s + 1),
            (c[1] - expected).abs() < 1e-10,
        );
    }
    for alpha in [2u32, 3] {
        let c = reciprocal_gamma_derivatives(alpha, 2).unwrap();
        let fd = c2_finite_difference(alpha);
        let diff = (c[2] - fd).abs();
        all &= report(
            7,
            &format!("C_2 at alpha={alpha} vs finite difference ({diff:.2e}) within 1e-6"),
            diff < 1e-6,
        );
    }
    assert!(all);
}

#[test]
fn criterion_08_harmonic_identity() {
    let ok = (2..=50).all(|s| harmonic_weighted_identity_check(s).unwrap());
    assert!(report(8, "sum k H_k identity exact for s = 2..50", ok));
}

#[test]
fn criterion_09_simulation_agreement() {
    let start = Instant::now();
    let mut all = true;

    let exact_128 = factorial_moments_recurrence(128, 1, MomentMode::Exact)
        .unwrap()
        .exact(128, 1)
        .unwrap()
        .to_f64();
    let cfg = SimConfig::new(128, 200_000, 42);
    let r = simulate(&cfg).unwrap();
    let z = r.z_score(1, exact_128);
    all &= report(
        9,
        &format!(
            "n=128: beta_hat_1 = {:.4}, exact {exact_128:.4}, |z| = {:.3} <= 4",
            r.beta_hat[0],
            z.abs()
        ),
        z.abs() <= 4.0,
    );

    let r3 = simulate(&SimConfig::new(3, 60_000, 1)).unwrap();
    let z3 = r3.z_score(1, 8.0 / 3.0);
    all &= report(9, &format!("n=3: |z| = {:.3} <= 5", z3.abs()), z3.abs() <= 5.0);

    let again = simulate(&cfg).unwrap();
    let same = serde_json::to_string(&r).unwrap() == serde_json::to_string(&again).unwrap()
        && r.accumulators == again.accumulators;
    all &= report(9, "rerun is byte-identical", same);
    all &= within_budget(9, start, Duration::from_secs(30));
    assert!(all);
}

#[test]
fn criterion_10_unreproducible_constants_note() {
    // The remainder constants are unspecified; only the boundedness check of
    // criterion 5 covers them.
    report(10, "remainder constants covered by criterion 5 boundedness check", true);
}
