//! Past extropy of the extremes of `n` i.i.d. lifetimes.
//!
//! The maximum `X_{n:n}` is the lifetime of a parallel system with cdf `F^n`;
//! the minimum `X_{1:n}` is the lifetime of a series system with cdf
//! `1 - S^n`. Powers of `F(x) / F(t)` are formed as exponentials of log
//! differences so that large `n` does not underflow.

use serde::Serialize;

use crate::distributions::Distribution;
use crate::error::{domain, Result};
use crate::measures::{guard_square_integrable, integrate_on_support, EvalOptions, MeasureValue};

/// Slack allowed on consecutive differences when checking monotonicity in `n`.
pub const SEQUENCE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Extreme {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderStatSpec {
    pub n: usize,
    pub which: Extreme,
}

impl OrderStatSpec {
    pub fn new(n: usize, which: Extreme) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n, which })
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(domain("sample size n must be >= 1"))
    } else {
        Ok(())
    }
}

fn positive_ln_cdf(dist: &Distribution, t: f64) -> Result<f64> {
    let ln_ft = dist.ln_cdf(t);
    if ln_ft.is_finite() && t.is_finite() {
        Ok(ln_ft)
    } else {
        Err(domain(format!("F({t}) = 0 for the {} law", dist.name())))
    }
}

/// `(F(x)/F(t))^k` in log space; `k = 0` gives 1 even where `F(x) = 0`.
fn cdf_ratio_pow(dist: &Distribution, x: f64, ln_ft: f64, k: f64) -> f64 {
    if k == 0.0 {
        1.0
    } else {
        (k * (dist.ln_cdf(x) - ln_ft)).exp()
    }
}

/// `J(_tX_{n:n}) = -n²/(2 F(t)^{2n}) ∫_0^t f(x)² F(x)^{2n-2} dx`.
pub fn past_extropy_max(dist: &Distribution, n: usize, t: f64, opts: &EvalOptions) -> Result<MeasureValue> {
    check_n(n)?;
    let ln_ft = positive_ln_cdf(dist, t)?;
    guard_square_integrable(dist)?;
    let nf = n as f64;
    let k = 2.0 * nf - 2.0;
    // F(x)^{2n-2} / F(t)^{2n} = (F(x)/F(t))^{2n-2} / F(t)^2
    let r = integrate_on_support(
        dist,
        dist.support().lower,
        t,
        |x| dist.pdf(x).powi(2) * cdf_ratio_pow(dist, x, ln_ft, k),
        &opts.quadrature,
    )?;
    let scale = 0.5 * nf * nf * (-2.0 * ln_ft).exp();
    Ok(MeasureValue::quadrature(-scale * r.value, scale * r.error_estimate))
}

/// Past extropy of the minimum, `-1/(2 F_{1:n}(t)²) ∫_0^t n² f² S^{2n-2}`
/// with `F_{1:n} = 1 - S^n`.
pub fn past_extropy_min(dist: &Distribution, n: usize, t: f64, opts: &EvalOptions) -> Result<MeasureValue> {
    check_n(n)?;
    positive_ln_cdf(dist, t)?;
    guard_square_integrable(dist)?;
    let nf = n as f64;
    let f_min = -(nf * dist.ln_survival(t)).exp_m1();
    if !(f_min > 0.0) {
        return Err(domain(format!("F_1:n({t}) = 0")));
    }
    let k = 2.0 * nf - 2.0;
    let r = integrate_on_support(
        dist,
        dist.support().lower,
        t,
        |x| {
            let tail = if k == 0.0 { 1.0 } else { (k * dist.ln_survival(x)).exp() };
            dist.pdf(x).powi(2) * tail
        },
        &opts.quadrature,
    )?;
    let scale = 0.5 * nf * nf / (f_min * f_min);
    Ok(MeasureValue::quadrature(-scale * r.value, scale * r.error_estimate))
}

/// Density of `X_{n:n} | X_{n:n} <= t` at `x`: `n f(x) F(x)^{n-1} / F(t)^n`, zero for `x > t`.
pub fn conditional_max_density(dist: &Distribution, n: usize, t: f64, x: f64) -> Result<f64> {
    check_n(n)?;
    let ln_ft = positive_ln_cdf(dist, t)?;
    if !(x > 0.0) {
        return Err(domain(format!("conditional density needs x > 0, got {x}")));
    }
    if x > t {
        return Ok(0.0);
    }
    let nf = n as f64;
    Ok(nf * dist.pdf(x) * cdf_ratio_pow(dist, x, ln_ft, nf - 1.0) * (-ln_ft).exp())
}

/// The same value as [`past_extropy_max`] via
/// `-n²/(2(2n-1)F(t)) E[f(X_{m:m}) | X_{m:m} <= t]` with `m = 2n - 1`.
pub fn past_extropy_max_via_expectation(
    dist: &Distribution,
    n: usize,
    t: f64,
    opts: &EvalOptions,
) -> Result<MeasureValue> {
    check_n(n)?;
    let ln_ft = positive_ln_cdf(dist, t)?;
    guard_square_integrable(dist)?;
    let m = 2 * n - 1;
    let r = integrate_on_support(
        dist,
        dist.support().lower,
        t,
        |x| {
            // x is strictly interior, so the density is defined
            dist.pdf(x) * conditional_max_density(dist, m, t, x).unwrap_or(0.0)
        },
        &opts.quadrature,
    )?;
    let nf = n as f64;
    let scale = nf * nf / (2.0 * (2.0 * nf - 1.0)) * (-ln_ft).exp();
    Ok(MeasureValue::quadrature(-scale * r.value, scale * r.error_estimate))
}

/// Extropy of the maximum, `-n²/2 ∫ F^{2n-2} f²`.
pub fn extropy_max(dist: &Distribution, n: usize, opts: &EvalOptions) -> Result<MeasureValue> {
    check_n(n)?;
    guard_square_integrable(dist)?;
    let k = 2.0 * n as f64 - 2.0;
    let s = dist.support();
    let r = integrate_on_support(
        dist,
        s.lower,
        s.upper,
        |x| dist.pdf(x).powi(2) * cdf_ratio_pow(dist, x, 0.0, k),
        &opts.quadrature,
    )?;
    let scale = 0.5 * (n * n) as f64;
    Ok(MeasureValue::quadrature(-scale * r.value, scale * r.error_estimate))
}

/// `J(_tX_{n:n})` or `J(_tX_{1:n})` for `n = 1..=n_max`, evaluated per index
/// under the configured execution strategy.
pub fn past_extropy_sequence(
    dist: &Distribution,
    which: Extreme,
    t: f64,
    n_max: usize,
    opts: &EvalOptions,
) -> Result<Vec<f64>> {
    let ns: Vec<usize> = (1..=n_max).collect();
    opts.execution.try_map(&ns, |&n| {
        let v = match which {
            Extreme::Max => past_extropy_max(dist, n, t, opts)?,
            Extreme::Min => past_extropy_min(dist, n, t, opts)?,
        };
        Ok(v.value)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem7Outcome {
    /// `J(_tX_{n:n}) >= J(_tX_{n+1:n+1}) - tol` for every `n < n_max`.
    pub holds: bool,
    /// Smallest `n` with `J(n+1) > J(n) + tol`.
    pub first_violation: Option<usize>,
    /// `J(_tX_{n:n})` for `n = 1..=n_max`.
    pub values: Vec<f64>,
}

/// Checks that the past extropy of the maximum is non-increasing in `n`.
///
/// The guarantee applies when the pdf increases on `[0, T]` with `T > t`;
/// the check itself runs for any law and just reports what it finds.
pub fn theorem7_check(dist: &Distribution, t: f64, n_max: usize, opts: &EvalOptions) -> Result<Theorem7Outcome> {
    if n_max < 2 {
        return Err(domain("theorem 7 check needs n_max >= 2"));
    }
    let values = past_extropy_sequence(dist, Extreme::Max, t, n_max, opts)?;
    let first_violation = first_increase(&values, SEQUENCE_TOLERANCE);
    Ok(Theorem7Outcome {
        holds: first_violation.is_none(),
        first_violation,
        values,
    })
}

/// 1-based index `n` of the first step with `values[n] > values[n-1] + tol`.
pub fn first_increase(values: &[f64], tol: f64) -> Option<usize> {
    values.windows(2).position(|w| w[1] > w[0] + tol).map(|i| i + 1)
}

/// True when every consecutive step drops by more than `tol`.
pub fn strictly_decreasing(values: &[f64], tol: f64) -> bool {
    values.windows(2).all(|w| w[0] - w[1] > tol)
}
