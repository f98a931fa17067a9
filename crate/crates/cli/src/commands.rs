//! One function per subcommand, each producing an [`OutputTable`].

use qsmoments_core::asymptotics::{residual_diagnostic, MomentAsymptote, TransferExpansion};
use qsmoments_core::sim::{MAX_ORDER, RNG_ID};
use qsmoments_core::{
    coeff_exact, factorial, factorial_moments_recurrence_with_model, moment_series, raw_moment, simulate, variance,
    ExactRational, MomentMode, PgfEngine, PivotCostModel, SimConfig,
};

use crate::error::{CliError, CliResult};
use crate::table::{Cell, OutputTable};

/// Largest `n` for which `simulate` reports z-scores against the moment
/// recurrence.
pub const Z_SCORE_MAX_N: usize = 10_000;

/// Rows `(k, a_{n,k}, a_{n,k}/n!)` over the support.
pub fn cmd_dist(n: usize, model: PivotCostModel, mode: MomentMode) -> CliResult<OutputTable> {
    let dist = PgfEngine::new(model).distribution(n)?;
    let total = ExactRational::from(factorial(n));
    let mut t = OutputTable::new(&["k", "count", "probability"], mode.name());
    for (k, c) in dist.counts() {
        let p = ExactRational::from(c.clone()) / total.clone();
        t.push(vec![Cell::int(*k), Cell::int(c.clone()), Cell::exact_or_real(p, mode)])?;
    }
    Ok(t)
}

/// Rows `(n, s, β_s(n), E[C_n^s])`, plus the variance on `s = 2` rows.
pub fn cmd_moments(n_max: usize, s_max: usize, mode: MomentMode, model: PivotCostModel) -> CliResult<OutputTable> {
    let table = factorial_moments_recurrence_with_model(n_max, s_max, mode, model)?;
    let mut columns = vec!["n", "s", "factorial_moment", "raw_moment"];
    if s_max >= 2 {
        columns.push("variance");
    }
    let mut t = OutputTable::new(&columns, mode.name());
    for n in 0..=n_max {
        for s in 1..=s_max {
            let mut row = vec![
                Cell::int(n as u64),
                Cell::int(s as u64),
                Cell::moment(table.get(n, s)?),
                Cell::moment(raw_moment(&table, n, s)?),
            ];
            if s_max >= 2 {
                row.push(if s == 2 {
                    Cell::moment(variance(&table, n)?)
                } else {
                    Cell::Empty
                });
            }
            t.push(row)?;
        }
    }
    Ok(t)
}

/// Coefficients `0..=order` of `f_s(u) = Σ β_s(n) u^n`.
pub fn cmd_series(s: usize, order: usize, mode: MomentMode) -> CliResult<OutputTable> {
    let f = moment_series(s, order)?;
    let mut t = OutputTable::new(&["n", "coefficient"], mode.name());
    for (n, c) in f.coeffs().iter().enumerate() {
        t.push(vec![Cell::int(n as u64), Cell::exact_or_real(c.clone(), mode)])?;
    }
    Ok(t)
}

/// Exact `β_s(n)` against the asymptote truncated after `terms` terms.
///
/// The exact column comes from the double-double recurrence whatever the
/// requested mode: exact tables at `n` in the thousands are impractical and
/// every other column is real anyway. The meta mode says so. The scaled
/// residual is always taken against the full two-term asymptote.
pub fn cmd_compare(s: usize, grid: &[u64], terms: usize) -> CliResult<OutputTable> {
    if s == 0 {
        return Err(CliError::Usage("moment order --s must be at least 1".into()));
    }
    if !(1..=2).contains(&terms) {
        return Err(CliError::Usage(format!("--terms must be 1 or 2, got {terms}")));
    }
    if let Some(&n) = grid.iter().find(|&&n| n < 2) {
        return Err(CliError::Usage(format!("grid sizes must be at least 2, got {n}")));
    }
    let mut t = OutputTable::new(
        &["n", "exact", "asymptote", "relative_error", "scaled_residual"],
        "float",
    );
    let Some(&n_max) = grid.iter().max() else { return Ok(t) };
    let table =
        factorial_moments_recurrence_with_model(n_max as usize, s, MomentMode::Float, PivotCostModel::NMinusOne)?;
    let asym = MomentAsymptote::new(s as u32)?;
    let residuals = residual_diagnostic(&table, s as u32, grid)?;
    for (&n, (_, r)) in grid.iter().zip(residuals) {
        let exact = table.get_f64(n as usize, s)?;
        let approx = asym.evaluate_terms(n, terms)?;
        let rel = ((approx - exact) / exact).abs();
        t.push(vec![
            Cell::int(n),
            Cell::Real(exact),
            Cell::Real(approx),
            Cell::Real(rel),
            Cell::Real(r),
        ])?;
    }
    Ok(t)
}

/// Transfer expansion of `[u^n] (1-u)^{-α} L(u)^β` at every depth `0..=K`.
pub fn cmd_transfer(alpha: u32, beta: u32, n: u64, k: Option<usize>, mode: MomentMode) -> CliResult<OutputTable> {
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
    }
    let expansion = match k {
        Some(k) => TransferExpansion::with_depth(alpha, beta, k)?,
        None => TransferExpansion::new(alpha, beta)?,
    };
    let exact = coeff_exact(alpha, beta, n as usize)?;
    let exact_f = exact.to_f64();
    let mut t = OutputTable::new(&["depth", "asymptotic", "exact", "relative_error"], mode.name());
    for depth in 0..=expansion.depth() {
        let approx = expansion.evaluate(n, depth)?;
        let rel = ((approx - exact_f) / exact_f).abs();
        t.push(vec![
            Cell::int(depth as u64),
            Cell::Real(approx),
            Cell::exact_or_real(exact.clone(), mode),
            Cell::Real(rel),
        ])?;
    }
    Ok(t)
}

/// A single summary row; z-scores against the recurrence are appended when
/// `n <= Z_SCORE_MAX_N`.
pub fn cmd_simulate(config: &SimConfig) -> CliResult<OutputTable> {
    let r = simulate(config)?;
    let with_z = config.n <= Z_SCORE_MAX_N;
    let mut columns: Vec<String> = ["n", "trials", "seed", "shards", "model", "mean", "variance", "stderr"]
        .iter()
        .map(|c| c.to_string())
        .collect();
    for s in 1..=MAX_ORDER {
        columns.push(format!("beta_hat_{s}"));
        columns.push(format!("beta_stderr_{s}"));
    }
    columns.extend(["min_count".to_string(), "max_count".to_string()]);
    if with_z {
        columns.extend((1..=MAX_ORDER).map(|s| format!("z_{s}")));
    }
    let names: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut t = OutputTable::new(&names, "float");
    t.meta.seed = Some(config.seed);
    t.meta.rng_id = Some(RNG_ID);

    let mut row = vec![
        Cell::int(r.n as u64),
        Cell::int(r.trials),
        Cell::int(r.seed),
        Cell::int(r.shards),
        Cell::text(r.model),
        Cell::Real(r.mean),
        Cell::Real(r.variance),
        Cell::Real(r.stderr),
    ];
    for s in 0..MAX_ORDER {
        row.push(Cell::Real(r.beta_hat[s]));
        row.push(Cell::Real(r.beta_stderr[s]));
    }
    row.push(Cell::int(r.min_count));
    row.push(Cell::int(r.max_count));
    if with_z {
        let table = factorial_moments_recurrence_with_model(config.n, MAX_ORDER, MomentMode::Float, config.model)?;
        for s in 1..=MAX_ORDER {
            row.push(Cell::Real(r.z_score(s, table.get_f64(config.n, s)?)));
        }
    }
    t.push(row)?;
    Ok(t)
}
