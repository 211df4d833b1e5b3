//! Rebuilding the past extropy from the reversed failure rate, and comparing
//! two laws through the past extropy of their sample maxima.
//!
//! The past extropy solves the linear equation `J' = -2 tau J - tau²/2`. With
//! the boundary value `J(X)` at the upper end `U` of the support,
//!
//! ```text
//! J(t) = e^{2 I(t)} [ J(X) + 1/2 ∫_t^U tau(s)² e^{-2 I(s)} ds ],   I(t) = ∫_t^U tau
//! ```
//!
//! which is evaluated here as `e^{2 I(t)} J(X) + 1/2 ∫_t^U tau(s)² e^{2 (I(t) - I(s))} ds`
//! so that the inner integrals are bounded. When `tau` comes from a known
//! law, `I(t) = -log F(t)`; otherwise `I` is itself computed by quadrature.

use std::cell::RefCell;

use serde::Serialize;

use crate::distributions::Distribution;
use crate::error::{domain, invalid, Error, Result};
use crate::measures::EvalOptions;
use crate::order_stats::past_extropy_max;
use crate::quadrature::{integrate, integrate_piecewise};

/// Lattice discrepancy above which two laws are declared distinct.
pub const CHARACTERIZATION_THRESHOLD: f64 = 1e-7;
/// Number of interior levels `v = k / (N + 1)` in the quantile-composed profile comparison.
pub const PROFILE_GRID_POINTS: usize = 99;

type RealFn<'a> = Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>;

/// A reversed failure rate `tau(t) >= 0` on `(lower, upper)`.
pub struct TauFunction<'a> {
    tau: RealFn<'a>,
    lower: f64,
    upper: f64,
    knots: Vec<f64>,
    ln_cdf: Option<RealFn<'a>>,
}

impl std::fmt::Debug for TauFunction<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TauFunction")
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("log_cdf_shortcut", &self.ln_cdf.is_some())
            .finish()
    }
}

impl<'a> TauFunction<'a> {
    /// An opaque rate: every integral of it is computed numerically.
    pub fn new<F>(tau: F, lower: f64, upper: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'a,
    {
        if !(lower.is_finite() && lower >= 0.0 && lower < upper) {
            return Err(invalid(format!("tau domain ({lower}, {upper}) is not valid")));
        }
        Ok(Self {
            tau: Box::new(tau),
            lower,
            upper,
            knots: Vec::new(),
            ln_cdf: None,
        })
    }

    /// Points inside the domain where the rate may have kinks; integrals are split there.
    pub fn with_knots(mut self, mut knots: Vec<f64>) -> Self {
        knots.retain(|&k| k > self.lower && k < self.upper);
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        self.knots = knots;
        self
    }

    /// The rate of `dist`, with the integrating factor taken from `log F`.
    pub fn from_distribution(dist: &'a Distribution) -> Self {
        let mut tau = Self::opaque_from_distribution(dist);
        tau.ln_cdf = Some(Box::new(move |x| dist.ln_cdf(x)));
        tau
    }

    /// The rate of `dist` treated as a black box.
    pub fn opaque_from_distribution(dist: &'a Distribution) -> Self {
        let s = dist.support();
        Self {
            tau: Box::new(move |t| {
                dist.reversed_failure_rate_closed_form(t)
                    .or_else(|| dist.reversed_failure_rate(t).ok())
                    .unwrap_or(0.0)
            }),
            lower: s.lower,
            upper: s.upper,
            knots: Vec::new(),
            ln_cdf: None,
        }
        .with_knots(dist.breakpoints(s.lower, s.upper))
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t >= self.upper {
            0.0
        } else {
            (self.tau)(t)
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    pub fn has_log_cdf_shortcut(&self) -> bool {
        self.ln_cdf.is_some()
    }

    /// `[t, knots above t, upper]`.
    fn pieces_from(&self, t: f64) -> Vec<f64> {
        let mut pts = vec![t];
        pts.extend(self.knots.iter().copied().filter(|&k| k > t));
        pts.push(self.upper);
        pts
    }
}

/// Past extropy at `t` rebuilt from `tau` and the boundary value `J(X)`.
pub fn reconstruct_past_extropy(tau: &TauFunction<'_>, j_infinity: f64, t: f64, opts: &EvalOptions) -> Result<f64> {
    if !(t > tau.lower) || t.is_nan() {
        return Err(domain(format!(
            "t = {t} is outside the tau domain ({}, {})",
            tau.lower, tau.upper
        )));
    }
    if j_infinity > 0.0 || !j_infinity.is_finite() {
        return Err(invalid(format!(
            "boundary extropy must be finite and <= 0, got {j_infinity}"
        )));
    }
    if t >= tau.upper {
        return Ok(j_infinity);
    }
    let pts = tau.pieces_from(t);
    // I at every piece boundary, accumulated from the upper end
    let mut tails = vec![0.0; pts.len()];
    if let Some(ln_cdf) = &tau.ln_cdf {
        for (tail, &p) in tails.iter_mut().zip(&pts) {
            *tail = -ln_cdf(p);
        }
        tails[pts.len() - 1] = 0.0;
    } else {
        for k in (0..pts.len() - 1).rev() {
            tails[k] = tails[k + 1] + integrate(|s| tau.eval(s), pts[k], pts[k + 1], &opts.quadrature)?.value;
        }
    }
    let tail_t = tails[0];
    if !tail_t.is_finite() {
        return Err(Error::DivergentIntegral(format!(
            "∫ tau from {t} to the upper end is infinite"
        )));
    }

    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let mut outer = 0.0;
    for k in 0..pts.len() - 1 {
        let (end, tail_end) = (pts[k + 1], tails[k + 1]);
        let tail_at = |s: f64| -> Result<f64> {
            match &tau.ln_cdf {
                Some(ln_cdf) => Ok(-ln_cdf(s)),
                None if s >= end => Ok(tail_end),
                None => Ok(tail_end + integrate(|r| tau.eval(r), s, end, &opts.quadrature)?.value),
            }
        };
        let piece = integrate(
            |s| {
                let r = tau.eval(s);
                if r == 0.0 {
                    return 0.0;
                }
                match tail_at(s) {
                    Ok(tail_s) => r * r * (2.0 * (tail_t - tail_s)).exp(),
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        f64::NAN
                    }
                }
            },
            pts[k],
            end,
            &opts.quadrature,
        );
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        outer += piece?.value;
    }
    Ok((2.0 * tail_t).exp() * j_infinity + 0.5 * outer)
}

/// `(exp(2 ∫_t^U tau), F(t)^{-2})`: the integrating factor by quadrature and analytically.
pub fn tau_log_cdf_identity(dist: &Distribution, t: f64, opts: &EvalOptions) -> Result<(f64, f64)> {
    let big_f = dist.cdf(t);
    if !(big_f > 0.0 && big_f < 1.0) {
        return Err(domain(format!("identity needs 0 < F(t) < 1, got F({t}) = {big_f}")));
    }
    let upper = dist.support().upper;
    let r = integrate_piecewise(
        |s| dist.reversed_failure_rate(s).unwrap_or(0.0),
        &dist.breakpoints(t, upper),
        &opts.quadrature,
    )?;
    Ok(((2.0 * r.value).exp(), big_f.powi(-2)))
}

/// `(v, tau(F^{-1}(v)))` for each level in `v_grid`.
pub fn tau_profile(dist: &Distribution, v_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    v_grid
        .iter()
        .map(|&v| {
            let x = dist.quantile(v)?;
            Ok((v, dist.reversed_failure_rate(x)?))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Indistinguishable,
    Distinct,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeCell {
    pub n: usize,
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterizationReport {
    pub verdict: Verdict,
    pub max_discrepancy: f64,
    /// Worst lattice cell, reported when the verdict is [`Verdict::Distinct`].
    pub witness: Option<LatticeCell>,
    /// `sup_v |tau_X(F_X^{-1}(v)) - tau_Y(F_Y^{-1}(v))|` over the profile grid.
    pub profile_discrepancy: f64,
    pub threshold: f64,
    pub n_max: usize,
    pub t_grid: Vec<f64>,
    pub cells: Vec<LatticeCell>,
}

impl CharacterizationReport {
    pub fn cell(&self, n: usize, t: f64) -> Option<&LatticeCell> {
        self.cells.iter().find(|c| c.n == n && c.t == t)
    }
}

/// Compares `J(_tX_{n:n})` and `J(_tY_{n:n})` on the lattice `1..=n_max × t_grid`.
///
/// Equality on a finite lattice is evidence, not proof, that the laws agree.
pub fn characterize(
    x: &Distribution,
    y: &Distribution,
    n_max: usize,
    t_grid: &[f64],
    threshold: f64,
    opts: &EvalOptions,
) -> Result<CharacterizationReport> {
    if n_max < 3 {
        return Err(domain("characterization needs n_max >= 3"));
    }
    if t_grid.is_empty() {
        return Err(domain("characterization needs a non-empty t grid"));
    }
    if !(threshold > 0.0) {
        return Err(invalid(format!("threshold must be > 0, got {threshold}")));
    }
    for &t in t_grid {
        if !(x.cdf(t) > 0.0 && y.cdf(t) > 0.0) {
            return Err(domain(format!(
                "t = {t} is outside the positive-cdf region of both laws"
            )));
        }
    }
    let lattice: Vec<(usize, f64)> = (1..=n_max).flat_map(|n| t_grid.iter().map(move |&t| (n, t))).collect();
    let cells = opts.execution.try_map(&lattice, |&(n, t)| {
        let xv = past_extropy_max(x, n, t, opts)?.value;
        let yv = past_extropy_max(y, n, t, opts)?.value;
        Ok::<_, Error>(LatticeCell {
            n,
            t,
            x: xv,
            y: yv,
            discrepancy: (xv - yv).abs(),
        })
    })?;
    let worst = cells
        .iter()
        .copied()
        .max_by(|a, b| a.discrepancy.total_cmp(&b.discrepancy))
        .expect("lattice is non-empty");

    let levels: Vec<f64> = (1..=PROFILE_GRID_POINTS)
        .map(|k| k as f64 / (PROFILE_GRID_POINTS + 1) as f64)
        .collect();
    let px = tau_profile(x, &levels)?;
    let py = tau_profile(y, &levels)?;
    let profile_discrepancy = px.iter().zip(&py).map(|(a, b)| (a.1 - b.1).abs()).fold(0.0, f64::max);

    let distinct = worst.discrepancy > threshold;
    Ok(CharacterizationReport {
        verdict: if distinct {
            Verdict::Distinct
        } else {
            Verdict::Indistinguishable
        },
        max_discrepancy: worst.discrepancy,
        witness: distinct.then_some(worst),
        profile_discrepancy,
        threshold,
        n_max,
        t_grid: t_grid.to_vec(),
        cells,
    })
}
