//! Desk-scale invariant suite behind `qsmoments selftest`.

use qsmoments_core::asymptotics::{
    harmonic, harmonic_weighted_identity_check, reciprocal_gamma_derivatives_with, SpecialConstants,
};
use qsmoments_core::{
    brute_force_distribution, factorial_moment_from_distribution, factorial_moments_recurrence, moment_series,
    ExactRational, MomentMode, PgfEngine, PivotCostModel,
};

use crate::table::{Cell, OutputTable};

/// `Γ(α) · (1/Γ)^{(k)}(α)` for `k = 2, 3`, from a 40-digit evaluation.
#[allow(clippy::excessive_precision)]
const C_REFERENCE: [(u32, usize, f64); 4] = [
    (2, 2, -0.466187472843573483),
    (2, 3, 1.146546608326149037),
    (3, 2, 0.456596862254893656),
    (3, 3, 0.461651314943808553),
];

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub struct SelfTestReport {
    pub checks: Vec<CheckResult>,
}

impl SelfTestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    pub fn to_table(&self) -> OutputTable {
        let mut t = OutputTable::new(&["check", "status", "detail"], "exact");
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            t.push(vec![
                Cell::text(c.name),
                Cell::text(status),
                Cell::text(c.detail.clone()),
            ])
            .expect("three cells");
        }
        t
    }
}

fn check(name: &'static str, outcome: Result<String, String>) -> CheckResult {
    match outcome {
        Ok(detail) => CheckResult {
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckResult {
            name,
            passed: false,
            detail,
        },
    }
}

fn oracle_equivalence() -> Result<String, String> {
    let mut engine = PgfEngine::new(PivotCostModel::NMinusOne);
    for n in 1..=8 {
        let pgf = engine.distribution(n).map_err(|e| e.to_string())?;
        let brute = brute_force_distribution(n, PivotCostModel::NMinusOne).map_err(|e| e.to_string())?;
        if pgf != brute {
            return Err(format!("distributions differ at n={n}"));
        }
    }
    Ok("n = 1..8".into())
}

fn three_route_agreement() -> Result<String, String> {
    const N: usize = 40;
    let table = factorial_moments_recurrence(N, 4, MomentMode::Exact).map_err(|e| e.to_string())?;
    let mut engine = PgfEngine::new(PivotCostModel::NMinusOne);
    let series: Vec<_> = (1..=4)
        .map(|s| moment_series(s, N))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for n in 0..=N {
        let dist = engine.distribution(n).map_err(|e| e.to_string())?;
        for s in 1..=4 {
            let a = factorial_moment_from_distribution(&dist, s);
            let b = table.exact(n, s).map_err(|e| e.to_string())?;
            if &a != b || b != series[s - 1].coeff(n) {
                return Err(format!("routes disagree at n={n}, s={s}"));
            }
        }
    }
    Ok(format!("s = 1..4, n = 0..{N}"))
}

fn mean_closed_form() -> Result<String, String> {
    const N: usize = 200;
    let table = factorial_moments_recurrence(N, 1, MomentMode::Exact).map_err(|e| e.to_string())?;
    for n in 0..=N {
        let closed = ExactRational::from(2 * (n as u64 + 1)) * harmonic(n as u64) - ExactRational::from(4 * n as u64);
        if table.exact(n, 1).map_err(|e| e.to_string())? != &closed {
            return Err(format!("mean differs from 2(n+1)H_n - 4n at n={n}"));
        }
    }
    Ok(format!("n = 0..{N}"))
}

fn harmonic_identity() -> Result<String, String> {
    for s in 2..=50 {
        if !harmonic_weighted_identity_check(s).map_err(|e| e.to_string())? {
            return Err(format!("identity fails at s={s}"));
        }
    }
    Ok("s = 2..50".into())
}

fn c1_check(consts: &SpecialConstants) -> Result<String, String> {
    let gamma = SpecialConstants::default().euler_gamma;
    for alpha in 2..=11u32 {
        let c = reciprocal_gamma_derivatives_with(consts, alpha, 1).map_err(|e| e.to_string())?;
        let expected = gamma - harmonic(alpha as u64 - 1).to_f64();
        if (c[1] - expected).abs() >= 1e-10 {
            return Err(format!("C_1 at alpha={alpha} is {} (expected {expected})", c[1]));
        }
    }
    Ok("alpha = 2..11 within 1e-10".into())
}

fn ck_check(consts: &SpecialConstants) -> Result<String, String> {
    for &(alpha, k, expected) in &C_REFERENCE {
        let c = reciprocal_gamma_derivatives_with(consts, alpha, k).map_err(|e| e.to_string())?;
        if (c[k] - expected).abs() >= 1e-12 {
            return Err(format!("C_{k} at alpha={alpha} is {} (expected {expected})", c[k]));
        }
    }
    Ok("k = 2, 3 at alpha = 2, 3 within 1e-12".into())
}

/// Runs every check against the given constant table. Production callers
/// pass `SpecialConstants::default()`; tests pass corrupted tables.
pub fn run_selftest(consts: &SpecialConstants) -> SelfTestReport {
    SelfTestReport {
        checks: vec![
            check("oracle-equivalence", oracle_equivalence()),
            check("three-route-agreement", three_route_agreement()),
            check("mean-closed-form", mean_closed_form()),
            check("harmonic-identity", harmonic_identity()),
            check("C_1", c1_check(consts)),
            check("C_k", ck_check(consts)),
        ],
    }
}
