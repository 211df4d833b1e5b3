//! Numerical checks of the identities, bounds and monotonicity results for
//! one law at a time, plus a pairwise characterization comparison.
//!
//! Each check evaluates on a grid of quantiles of the law under test, so the
//! same suite runs on parametric and tabulated laws alike. Checks whose
//! hypothesis does not hold for the law pass vacuously with a note.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::distributions::Distribution;
use crate::error::Result;
use crate::measures::{self, EvalOptions, Monotonicity};
use crate::order_stats::{self, conditional_max_density};
use crate::quadrature::integrate_piecewise;
use crate::reconstruction::{self, reconstruct_past_extropy, TauFunction, Verdict};

pub const DECOMPOSITION_TOLERANCE: f64 = 1e-8;
pub const CLOSED_FORM_REL_TOLERANCE: f64 = 1e-8;
pub const TAU_REPRESENTATION_TOLERANCE: f64 = 1e-10;
pub const FINITE_DIFFERENCE_STEP: f64 = 1e-5;
pub const DERIVATIVE_TOLERANCE: f64 = 1e-5;
pub const SIGN_MAGNITUDE_FLOOR: f64 = 1e-9;
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-6;
pub const N1_TOLERANCE: f64 = 1e-10;
pub const EXPECTATION_TOLERANCE: f64 = 1e-8;
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;
pub const LIMIT_TOLERANCE: f64 = 1e-6;
/// Largest `n` used by the order-statistic consistency checks.
pub const ORDER_STAT_N: usize = 6;
pub const THEOREM7_N_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub detail: String,
}

impl Witness {
    fn at_t(t: f64, detail: impl Into<String>) -> Self {
        Self {
            t: Some(t),
            n: None,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub pass: bool,
    pub max_error: f64,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

impl CheckResult {
    fn vacuous(note: impl Into<String>) -> Self {
        Self {
            pass: true,
            max_error: 0.0,
            witnesses: Vec::new(),
            note: Some(note.into()),
            verdict: None,
        }
    }

    fn failed(err: impl std::fmt::Display) -> Self {
        Self {
            pass: false,
            max_error: f64::INFINITY,
            witnesses: Vec::new(),
            note: Some(format!("evaluation failed: {err}")),
            verdict: None,
        }
    }

    fn from_errors(errors: Vec<(f64, f64)>, tol: f64) -> Self {
        let max_error = errors.iter().map(|e| e.1).fold(0.0, f64::max);
        let witnesses = errors
            .iter()
            .filter(|e| !(e.1 <= tol))
            .map(|&(t, e)| Witness::at_t(t, format!("error {e:e} exceeds {tol:e}")))
            .collect::<Vec<_>>();
        Self {
            pass: witnesses.is_empty(),
            max_error,
            witnesses,
            note: None,
            verdict: None,
        }
    }
}

/// Named check results, sorted by name.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub checks: BTreeMap<String, CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|c| c.pass)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

/// Quantile levels `0.05, 0.15, ..., 0.95`.
pub fn default_levels() -> Vec<f64> {
    (0..10).map(|k| 0.05 + 0.1 * k as f64).collect()
}

fn quantile_grid(dist: &Distribution, levels: &[f64]) -> Result<Vec<f64>> {
    levels.iter().map(|&u| dist.quantile(u)).collect()
}

type CheckFn = fn(&Distribution, &EvalOptions) -> Result<CheckResult>;

const CHECKS: [(&str, CheckFn); 12] = [
    ("nonpositivity", check_nonpositivity),
    ("decomposition", check_decomposition),
    ("closed_form_agreement", check_closed_form),
    ("tau_representation", check_tau_representation),
    ("theorem1_derivative", check_derivative),
    ("theorem2_round_trip", check_round_trip),
    ("theorem3_sufficiency", check_theorem3),
    ("theorem7_max_decreasing", check_theorem7),
    ("theorem8_lower_bound", check_theorem8),
    ("order_stats_consistency", check_order_stats),
    ("limit_at_upper_end", check_limit),
    ("characterization_self", check_self_characterization),
];

/// Runs every single-law check; keys are `"{label}/{check}"`.
pub fn verify_distribution(dist: &Distribution, label: &str, opts: &EvalOptions) -> VerificationReport {
    let results = opts.execution.map(&CHECKS, |(_, check)| {
        check(dist, opts).unwrap_or_else(CheckResult::failed)
    });
    VerificationReport {
        checks: CHECKS
            .iter()
            .zip(results)
            .map(|((name, _), r)| (format!("{label}/{name}"), r))
            .collect(),
    }
}

/// Compares two laws through the lattice of past extropies of sample maxima.
/// The check passes whenever the comparison runs; the outcome is its verdict.
pub fn compare(
    x: &Distribution,
    x_label: &str,
    y: &Distribution,
    y_label: &str,
    opts: &EvalOptions,
) -> VerificationReport {
    let key = format!("characterization/{x_label} vs {y_label}");
    let result = shared_grid(x, y).and_then(|grid| {
        reconstruction::characterize(x, y, 5, &grid, reconstruction::CHARACTERIZATION_THRESHOLD, opts)
    });
    let check = match result {
        Ok(report) => CheckResult {
            pass: true,
            max_error: report.max_discrepancy,
            witnesses: report
                .witness
                .iter()
                .map(|c| Witness {
                    t: Some(c.t),
                    n: Some(c.n),
                    detail: format!("J_x = {:e}, J_y = {:e}, |diff| = {:e}", c.x, c.y, c.discrepancy),
                })
                .collect(),
            note: Some(format!(
                "lattice n = 1..={} x {} t-points; quantile-profile discrepancy {:e}",
                report.n_max,
                report.t_grid.len(),
                report.profile_discrepancy
            )),
            verdict: Some(report.verdict),
        },
        Err(e) => CheckResult::failed(e),
    };
    VerificationReport {
        checks: BTreeMap::from([(key, check)]),
    }
}

/// `t` points inside the positive-cdf region of both laws.
fn shared_grid(x: &Distribution, y: &Distribution) -> Result<Vec<f64>> {
    let levels = [0.25, 0.5, 0.75];
    let mut grid: Vec<f64> = quantile_grid(x, &levels)?
        .into_iter()
        .chain(quantile_grid(y, &levels)?)
        .filter(|&t| x.cdf(t) > 0.0 && y.cdf(t) > 0.0)
        .collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    if grid.is_empty() {
        return Err(crate::error::domain(
            "the two laws share no region where both cdfs are positive",
        ));
    }
    Ok(grid)
}

fn check_nonpositivity(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let mut errors = Vec::new();
    for t in quantile_grid(dist, &default_levels())? {
        let past = measures::past_extropy(dist, t, opts)?.value;
        let residual = measures::residual_extropy(dist, t, opts)?.value;
        errors.push((t, past.max(residual).max(0.0)));
    }
    Ok(CheckResult::from_errors(errors, 0.0))
}

fn check_decomposition(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let mut errors = Vec::new();
    for t in quantile_grid(dist, &default_levels())? {
        let (lhs, rhs) = measures::decomposition_residual(dist, t, opts)?;
        errors.push((t, (lhs - rhs).abs()));
    }
    Ok(CheckResult::from_errors(errors, DECOMPOSITION_TOLERANCE))
}

fn check_closed_form(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    if !dist.capabilities().past_extropy {
        return Ok(CheckResult::vacuous("no closed-form past extropy for this law"));
    }
    let quad = opts.forcing_quadrature();
    let closed = EvalOptions {
        force_quadrature: false,
        ..*opts
    };
    let mut errors = Vec::new();
    for t in quantile_grid(dist, &default_levels())? {
        let a = measures::past_extropy(dist, t, &closed)?.value;
        let b = measures::past_extropy(dist, t, &quad)?.value;
        errors.push((t, ((a - b) / a).abs()));
    }
    Ok(CheckResult::from_errors(errors, CLOSED_FORM_REL_TOLERANCE))
}

fn check_tau_representation(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let mut errors = Vec::new();
    for t in quantile_grid(dist, &default_levels())? {
        let a = measures::past_extropy(dist, t, opts)?.value;
        let b = measures::past_extropy_via_tau(dist, t, opts)?.value;
        errors.push((t, (a - b).abs() / a.abs().max(1.0)));
    }
    Ok(CheckResult::from_errors(errors, TAU_REPRESENTATION_TOLERANCE))
}

/// Analytic derivative against a central difference, and the sign of the
/// difference quotient against the sign of `-(J + tau/4)`. The error is
/// relative once the derivative exceeds one in magnitude.
fn check_derivative(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let levels: Vec<f64> = (1..=9).map(|k| 0.1 * k as f64).collect();
    let h = FINITE_DIFFERENCE_STEP;
    let mut errors = Vec::new();
    let mut sign_witnesses = Vec::new();
    for t in quantile_grid(dist, &levels)? {
        let analytic = measures::past_extropy_derivative(dist, t, opts)?;
        let fd = (measures::past_extropy(dist, t + h, opts)?.value - measures::past_extropy(dist, t - h, opts)?.value)
            / (2.0 * h);
        errors.push((t, (analytic - fd).abs() / analytic.abs().max(1.0)));
        let criterion = -(measures::past_extropy(dist, t, opts)?.value + 0.25 * dist.reversed_failure_rate(t)?);
        if fd.abs() > SIGN_MAGNITUDE_FLOOR
            && criterion.abs() > SIGN_MAGNITUDE_FLOOR
            && fd.signum() != criterion.signum()
        {
            sign_witnesses.push(Witness::at_t(
                t,
                format!("difference quotient {fd:e} vs criterion {criterion:e}"),
            ));
        }
    }
    let mut r = CheckResult::from_errors(errors, DERIVATIVE_TOLERANCE);
    r.pass &= sign_witnesses.is_empty();
    r.witnesses.extend(sign_witnesses);
    Ok(r)
}

fn check_round_trip(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let ts = quantile_grid(dist, &default_levels())?;
    let rows = crate::scan::reconstruction_table(dist, &ts, opts)?;
    Ok(CheckResult::from_errors(
        rows.iter().map(|r| (r.t, r.abs_diff)).collect(),
        ROUND_TRIP_TOLERANCE,
    ))
}

fn check_theorem3(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let u: Vec<f64> = (1..200).map(|k| k as f64 / 200.0).collect();
    if !measures::theorem3_hypothesis_holds(dist, &u) {
        return Ok(CheckResult::vacuous("f(F^-1(u)) is not non-increasing"));
    }
    let ts = quantile_grid(dist, &default_levels())?;
    let verdict = measures::classify_monotonicity(dist, &ts, opts)?;
    let pass = verdict.classification == Monotonicity::Increasing;
    Ok(CheckResult {
        pass,
        max_error: 0.0,
        witnesses: verdict
            .witness_points
            .iter()
            .filter(|w| w.1 < 0)
            .map(|&(t, _)| Witness::at_t(t, "past extropy decreasing"))
            .collect(),
        note: Some(format!("classification {:?}", verdict.classification)),
        verdict: None,
    })
}

/// Time well inside the stretch where the pdf increases, if there is one.
fn increasing_region_point(dist: &Distribution) -> Option<(f64, f64)> {
    let lower = dist.support().lower;
    dist.increasing_density_until()
        .filter(|&end| end > lower)
        .map(|end| (lower + 0.5 * (end - lower), end))
}

fn check_theorem7(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let Some((t, _)) = increasing_region_point(dist) else {
        return Ok(CheckResult::vacuous("pdf is not increasing on an initial interval"));
    };
    let out = order_stats::theorem7_check(dist, t, THEOREM7_N_MAX, opts)?;
    let worst_rise = out
        .values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(CheckResult {
        pass: out.holds,
        max_error: worst_rise.max(0.0),
        witnesses: out
            .first_violation
            .map(|n| Witness {
                t: Some(t),
                n: Some(n),
                detail: format!("J(n+1) > J(n) at n = {n}"),
            })
            .into_iter()
            .collect(),
        note: Some(format!("t = {t}, n = 1..={THEOREM7_N_MAX}")),
        verdict: None,
    })
}

fn check_theorem8(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let Some((_, end)) = increasing_region_point(dist) else {
        return Ok(CheckResult::vacuous("pdf is not increasing on an initial interval"));
    };
    let lower = dist.support().lower;
    let mut errors = Vec::new();
    for k in 1..=20 {
        let t = lower + (end - lower) * k as f64 / 21.0;
        let j = measures::past_extropy(dist, t, opts)?.value;
        let bound = measures::past_extropy_lower_bound(dist, t)?;
        // equality holds for constant densities, so allow rounding-level slack
        let slack = 1e-12 * bound.abs().max(1.0);
        errors.push((t, (bound - j - slack).max(0.0)));
    }
    Ok(CheckResult::from_errors(errors, 0.0))
}

fn check_order_stats(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut witnesses = Vec::new();
    let mut record = |t: f64, n: usize, err: f64, tol: f64, what: &str| {
        worst = worst.max(err);
        if !(err <= tol) {
            witnesses.push(Witness {
                t: Some(t),
                n: Some(n),
                detail: format!("{what}: error {err:e} exceeds {tol:e}"),
            });
        }
    };
    for t in quantile_grid(dist, &[0.25, 0.5, 0.75])? {
        let direct = measures::past_extropy(dist, t, opts)?.value;
        let n1 = order_stats::past_extropy_max(dist, 1, t, opts)?.value;
        record(
            t,
            1,
            (direct - n1).abs() / direct.abs().max(1.0),
            N1_TOLERANCE,
            "n = 1 reduction",
        );
        for n in 1..=ORDER_STAT_N {
            let a = order_stats::past_extropy_max(dist, n, t, opts)?.value;
            let b = order_stats::past_extropy_max_via_expectation(dist, n, t, opts)?.value;
            record(
                t,
                n,
                (a - b).abs() / a.abs().max(1.0),
                EXPECTATION_TOLERANCE,
                "expectation form",
            );
            let lo = dist.support().lower;
            let mass = integrate_piecewise(
                |x| conditional_max_density(dist, n, t, x).unwrap_or(0.0),
                &dist.breakpoints(lo, t.min(dist.support().upper)),
                &opts.quadrature,
            )?
            .value;
            record(
                t,
                n,
                (mass - 1.0).abs(),
                NORMALIZATION_TOLERANCE,
                "conditional density mass",
            );
        }
    }
    Ok(CheckResult {
        pass: witnesses.is_empty(),
        max_error: worst,
        witnesses,
        note: None,
        verdict: None,
    })
}

fn check_limit(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let t = dist.quantile(1.0 - 1e-9)?;
    let j = measures::extropy(dist, opts)?.value;
    let jp = measures::past_extropy(dist, t, opts)?.value;
    Ok(CheckResult::from_errors(vec![(t, (j - jp).abs())], LIMIT_TOLERANCE))
}

fn check_self_characterization(dist: &Distribution, opts: &EvalOptions) -> Result<CheckResult> {
    let grid = quantile_grid(dist, &[0.25, 0.5, 0.75])?;
    let r = reconstruction::characterize(dist, dist, 4, &grid, reconstruction::CHARACTERIZATION_THRESHOLD, opts)?;
    Ok(CheckResult {
        pass: r.verdict == Verdict::Indistinguishable,
        max_error: r.max_discrepancy,
        witnesses: Vec::new(),
        note: None,
        verdict: Some(r.verdict),
    })
}

/// Round trip with the integrating factor taken from `log F` instead of nested quadrature.
pub fn round_trip_with_log_cdf(dist: &Distribution, t: f64, opts: &EvalOptions) -> Result<f64> {
    let j = measures::extropy(dist, opts)?.value;
    reconstruct_past_extropy(&TauFunction::from_distribution(dist), j, t, opts)
}
