//! Extropy, residual and past extropy, their entropy companions, and the
//! monotonicity machinery for the past extropy.
//!
//! For a lifetime `X` with pdf `f`, cdf `F` and survival `S = 1 - F`:
//!
//! | measure | value |
//! |---------|-------|
//! | [`extropy`] | `-1/2 ∫ f²` |
//! | [`residual_extropy`] | `-1/(2 S(t)²) ∫_t^∞ f²` |
//! | [`past_extropy`] | `-1/(2 F(t)²) ∫_0^t f²` |
//! | [`shannon_entropy`] | `-∫ f log f` |
//! | [`residual_entropy`] | `-∫_t^∞ (f/S(t)) log(f/S(t))` |
//! | [`past_entropy`] | `-∫_0^t (f/F(t)) log(f/F(t))` |
//!
//! With the reversed failure rate `tau = f / F`, the past extropy solves
//! `J'(t) = -2 tau(t) J(t) - tau(t)²/2`, so it increases exactly where
//! `J(t) <= -tau(t)/4`.

use serde::Serialize;

use crate::distributions::{Distribution, Family};
use crate::error::{domain, Error, Result};
use crate::exec::Execution;
use crate::quadrature::{integrate_piecewise, IntegralResult, QuadratureConfig};

/// Band around zero inside which `J + tau/4` is treated as zero.
pub const MONOTONICITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    ClosedForm,
    Quadrature,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "ClosedForm",
            Method::Quadrature => "Quadrature",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureValue {
    pub value: f64,
    pub method: Method,
    /// Zero for closed forms.
    pub error_estimate: f64,
}

impl MeasureValue {
    pub fn closed_form(value: f64) -> Self {
        Self {
            value,
            method: Method::ClosedForm,
            error_estimate: 0.0,
        }
    }

    pub fn quadrature(value: f64, error_estimate: f64) -> Self {
        Self {
            value,
            method: Method::Quadrature,
            error_estimate,
        }
    }
}

/// Knobs shared by every measure evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct EvalOptions {
    pub quadrature: QuadratureConfig,
    /// Skip closed-form fast paths.
    pub force_quadrature: bool,
    pub execution: Execution,
}

impl EvalOptions {
    pub fn forcing_quadrature(mut self) -> Self {
        self.force_quadrature = true;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub(crate) fn closed_forms_allowed(&self) -> bool {
        !self.force_quadrature
    }
}

/// `∫_a^b g(x) dx` restricted to the support; zero when the clipped range is empty.
pub(crate) fn integrate_on_support<G>(
    dist: &Distribution,
    a: f64,
    b: f64,
    g: G,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult>
where
    G: Fn(f64) -> f64,
{
    let s = dist.support();
    let lo = a.max(s.lower);
    let hi = b.min(s.upper);
    if !(lo < hi) {
        return Ok(IntegralResult {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions_used: 0,
        });
    }
    integrate_piecewise(g, &dist.breakpoints(lo, hi), cfg)
}

pub(crate) fn guard_square_integrable(dist: &Distribution) -> Result<()> {
    if let Family::Power { alpha } = dist.family() {
        if *alpha <= 0.5 {
            return Err(Error::DivergentIntegral(format!(
                "f² is not integrable near 0 for the power law with alpha = {alpha} <= 1/2"
            )));
        }
    }
    Ok(())
}

fn squared_density(dist: &Distribution, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralResult> {
    guard_square_integrable(dist)?;
    integrate_on_support(dist, a, b, |x| dist.pdf(x).powi(2), cfg)
}

fn require_positive_cdf(dist: &Distribution, t: f64, what: &str) -> Result<f64> {
    let big_f = dist.cdf(t);
    if big_f > 0.0 && t.is_finite() {
        Ok(big_f)
    } else {
        Err(domain(format!(
            "{what} needs F(t) > 0, but F({t}) = {big_f} for the {} law",
            dist.name()
        )))
    }
}

fn require_positive_survival(dist: &Distribution, t: f64, what: &str) -> Result<f64> {
    let s = dist.survival(t);
    if s > 0.0 && t.is_finite() {
        Ok(s)
    } else {
        Err(domain(format!(
            "{what} needs 1 - F(t) > 0, but it vanishes at t = {t} for the {} law",
            dist.name()
        )))
    }
}

/// `J(X) = -1/2 ∫ f²`.
pub fn extropy(dist: &Distribution, opts: &EvalOptions) -> Result<MeasureValue> {
    guard_square_integrable(dist)?;
    if opts.closed_forms_allowed() {
        if let Some(v) = dist.extropy_closed_form() {
            return Ok(MeasureValue::closed_form(v));
        }
    }
    let s = dist.support();
    let r = squared_density(dist, s.lower, s.upper, &opts.quadrature)?;
    Ok(MeasureValue::quadrature(-0.5 * r.value, 0.5 * r.error_estimate))
}

/// Extropy of the residual lifetime `X - t | X > t`.
pub fn residual_extropy(dist: &Distribution, t: f64, opts: &EvalOptions) -> Result<MeasureValue> {
    let s = require_positive_survival(dist, t, "residual extropy")?;
    let r = squared_density(dist, t, dist.support().upper, &opts.quadrature)?;
    let scale = 0.5 / (s * s);
    Ok(MeasureValue::quadrature(-scale * r.value, scale * r.error_estimate))
}

/// Extropy of the inactivity time `t - X | X < t`.
pub fn past_extropy(dist: &Distribution, t: f64, opts: &EvalOptions) -> Result<MeasureValue> {
    let big_f = require_positive_cdf(dist, t, "past extropy")?;
    guard_square_integrable(dist)?;
    if opts.closed_forms_allowed() {
        if let Some(v) = dist.past_extropy_closed_form(t) {
            return Ok(MeasureValue::closed_form(v));
        }
    }
    let r = squared_density(dist, dist.support().lower, t, &opts.quadrature)?;
    let scale = 0.5 / (big_f * big_f);
    Ok(MeasureValue::quadrature(-scale * r.value, scale * r.error_estimate))
}

fn neg_x_log_x(y: f64) -> f64 {
    if y > 0.0 {
        -y * y.ln()
    } else {
        0.0
    }
}

/// Differential entropy `-∫ f log f`.
pub fn shannon_entropy(dist: &Distribution, opts: &EvalOptions) -> Result<MeasureValue> {
    let s = dist.support();
    let r = integrate_on_support(dist, s.lower, s.upper, |x| neg_x_log_x(dist.pdf(x)), &opts.quadrature)?;
    Ok(MeasureValue::quadrature(r.value, r.error_estimate))
}

/// Entropy of the residual lifetime at `t`.
pub fn residual_entropy(dist: &Distribution, t: f64, opts: &EvalOptions) -> Result<MeasureValue> {
    let s = require_positive_survival(dist, t, "residual entropy")?;
    let r = integrate_on_support(
        dist,
        t,
        dist.support().upper,
        |x| neg_x_log_x(dist.pdf(x) / s),
        &opts.quadrature,
    )?;
    Ok(MeasureValue::quadrature(r.value, r.error_estimate))
}

/// Entropy of the inactivity time at `t`.
pub fn past_entropy(dist: &Distribution, t: f64, opts: &EvalOptions) -> Result<MeasureValue> {
    let big_f = require_positive_cdf(dist, t, "past entropy")?;
    let r = integrate_on_support(
        dist,
        dist.support().lower,
        t,
        |x| neg_x_log_x(dist.pdf(x) / big_f),
        &opts.quadrature,
    )?;
    Ok(MeasureValue::quadrature(r.value, r.error_estimate))
}

/// Both sides of `J(X) = F(t)² J(_tX) + S(t)² J(X_t)`.
pub fn decomposition_residual(dist: &Distribution, t: f64, opts: &EvalOptions) -> Result<(f64, f64)> {
    let big_f = dist.cdf(t);
    if !(big_f > 0.0 && big_f < 1.0) {
        return Err(domain(format!(
            "decomposition needs 0 < F(t) < 1, got F({t}) = {big_f}"
        )));
    }
    let s = dist.survival(t);
    let lhs = extropy(dist, opts)?.value;
    let rhs = big_f * big_f * past_extropy(dist, t, opts)?.value + s * s * residual_extropy(dist, t, opts)?.value;
    Ok((lhs, rhs))
}

/// Past extropy through the reversed failure rate: `-tau(t)²/(2 f(t)²) ∫_0^t f²`.
pub fn past_extropy_via_tau(dist: &Distribution, t: f64, opts: &EvalOptions) -> Result<MeasureValue> {
    require_positive_cdf(dist, t, "tau representation")?;
    let f = dist.pdf(t);
    if !(f > 0.0 && f.is_finite()) {
        return Err(domain(format!(
            "tau representation needs 0 < f(t) < inf, got f({t}) = {f}"
        )));
    }
    let tau = dist.reversed_failure_rate(t)?;
    let r = squared_density(dist, dist.support().lower, t, &opts.quadrature)?;
    let scale = 0.5 * (tau / f).powi(2);
    Ok(MeasureValue::quadrature(-scale * r.value, scale * r.error_estimate))
}

/// `d/dt J(_tX) = -2 tau(t) J(_tX) - tau(t)²/2`.
pub fn past_extropy_derivative(dist: &Distribution, t: f64, opts: &EvalOptions) -> Result<f64> {
    let j = past_extropy(dist, t, opts)?.value;
    let tau = dist.reversed_failure_rate(t)?;
    Ok(-2.0 * tau * j - 0.5 * tau * tau)
}

/// The lower bound `-tau(t)/2`, valid while the pdf is increasing up to beyond `t`.
pub fn past_extropy_lower_bound(dist: &Distribution, t: f64) -> Result<f64> {
    Ok(-0.5 * dist.reversed_failure_rate(t)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    NonMonotone,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityVerdict {
    pub classification: Monotonicity,
    /// `(t, sign of d/dt J(_tX))` per grid point; the sign is 0 inside the tolerance band.
    pub witness_points: Vec<(f64, i8)>,
}

fn band_sign(x: f64, tol: f64) -> i8 {
    if x > tol {
        1
    } else if x < -tol {
        -1
    } else {
        0
    }
}

/// Classifies `t -> J(_tX)` on a grid through the sign of `tau (J + tau/4)`,
/// which is the sign of the derivative up to a factor of -2.
pub fn classify_monotonicity(dist: &Distribution, t_grid: &[f64], opts: &EvalOptions) -> Result<MonotonicityVerdict> {
    if t_grid.len() < 2 {
        return Err(domain("monotonicity classification needs at least two grid points"));
    }
    let criteria = opts.execution.try_map(t_grid, |&t| {
        let j = past_extropy(dist, t, opts)?.value;
        let tau = dist.reversed_failure_rate(t)?;
        Ok::<_, Error>(tau * (j + 0.25 * tau))
    })?;
    let tol = MONOTONICITY_TOLERANCE;
    let witness_points = t_grid
        .iter()
        .zip(&criteria)
        .map(|(&t, &c)| (t, -band_sign(c, tol)))
        .collect();
    let classification = if criteria.iter().all(|c| c.abs() <= tol) {
        Monotonicity::Indeterminate
    } else if criteria.iter().all(|&c| c <= tol) {
        Monotonicity::Increasing
    } else if criteria.iter().all(|&c| c >= -tol) {
        Monotonicity::Decreasing
    } else {
        Monotonicity::NonMonotone
    };
    Ok(MonotonicityVerdict {
        classification,
        witness_points,
    })
}

/// Whether `u -> f(F^{-1}(u))` is non-increasing across `u_grid` (points
/// outside `(0, 1)` are skipped).
pub fn theorem3_hypothesis_holds(dist: &Distribution, u_grid: &[f64]) -> bool {
    let values: Vec<f64> = u_grid
        .iter()
        .filter_map(|&u| dist.quantile(u).ok())
        .map(|x| dist.pdf(x))
        .collect();
    values
        .windows(2)
        .all(|w| w[1] <= w[0] + MONOTONICITY_TOLERANCE * w[0].abs().max(1.0))
}
