//! Named measures, evaluation grids and the figure datasets.

use serde::Serialize;

use crate::distributions::Distribution;
use crate::error::{domain, invalid, Error, Result};
use crate::measures::{self, EvalOptions, MeasureValue};
use crate::order_stats;
use crate::reconstruction::{reconstruct_past_extropy, TauFunction};

/// Every measure reachable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Measure {
    Extropy,
    ResidualExtropy,
    PastExtropy,
    PastExtropyTau,
    PastExtropyDerivative,
    PastExtropyLowerBound,
    ReversedFailureRate,
    ShannonEntropy,
    ResidualEntropy,
    PastEntropy,
    PastExtropyMax,
    PastExtropyMin,
    ExtropyMax,
}

impl Measure {
    pub const ALL: [Measure; 13] = [
        Measure::Extropy,
        Measure::ResidualExtropy,
        Measure::PastExtropy,
        Measure::PastExtropyTau,
        Measure::PastExtropyDerivative,
        Measure::PastExtropyLowerBound,
        Measure::ReversedFailureRate,
        Measure::ShannonEntropy,
        Measure::ResidualEntropy,
        Measure::PastEntropy,
        Measure::PastExtropyMax,
        Measure::PastExtropyMin,
        Measure::ExtropyMax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Extropy => "extropy",
            Measure::ResidualExtropy => "residual-extropy",
            Measure::PastExtropy => "past-extropy",
            Measure::PastExtropyTau => "past-extropy-tau",
            Measure::PastExtropyDerivative => "past-extropy-derivative",
            Measure::PastExtropyLowerBound => "past-extropy-lower-bound",
            Measure::ReversedFailureRate => "reversed-failure-rate",
            Measure::ShannonEntropy => "entropy",
            Measure::ResidualEntropy => "residual-entropy",
            Measure::PastEntropy => "past-entropy",
            Measure::PastExtropyMax => "past-extropy-max",
            Measure::PastExtropyMin => "past-extropy-min",
            Measure::ExtropyMax => "extropy-max",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }

    pub fn needs_t(self) -> bool {
        !matches!(self, Measure::Extropy | Measure::ShannonEntropy | Measure::ExtropyMax)
    }

    pub fn needs_n(self) -> bool {
        matches!(
            self,
            Measure::PastExtropyMax | Measure::PastExtropyMin | Measure::ExtropyMax
        )
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates `measure`; `t` and `n` are required exactly when the measure uses them.
pub fn evaluate(
    measure: Measure,
    dist: &Distribution,
    t: Option<f64>,
    n: Option<usize>,
    opts: &EvalOptions,
) -> Result<MeasureValue> {
    let need_t = || t.ok_or_else(|| invalid(format!("{measure} needs a time t")));
    let need_n = || n.ok_or_else(|| invalid(format!("{measure} needs a sample size n")));
    match measure {
        Measure::Extropy => measures::extropy(dist, opts),
        Measure::ResidualExtropy => measures::residual_extropy(dist, need_t()?, opts),
        Measure::PastExtropy => measures::past_extropy(dist, need_t()?, opts),
        Measure::PastExtropyTau => measures::past_extropy_via_tau(dist, need_t()?, opts),
        Measure::PastExtropyDerivative => {
            let t = need_t()?;
            let method = measures::past_extropy(dist, t, opts)?.method;
            let value = measures::past_extropy_derivative(dist, t, opts)?;
            Ok(MeasureValue {
                value,
                method,
                error_estimate: 0.0,
            })
        }
        Measure::PastExtropyLowerBound => Ok(MeasureValue::closed_form(measures::past_extropy_lower_bound(
            dist,
            need_t()?,
        )?)),
        Measure::ReversedFailureRate => Ok(MeasureValue::closed_form(dist.reversed_failure_rate(need_t()?)?)),
        Measure::ShannonEntropy => measures::shannon_entropy(dist, opts),
        Measure::ResidualEntropy => measures::residual_entropy(dist, need_t()?, opts),
        Measure::PastEntropy => measures::past_entropy(dist, need_t()?, opts),
        Measure::PastExtropyMax => order_stats::past_extropy_max(dist, need_n()?, need_t()?, opts),
        Measure::PastExtropyMin => order_stats::past_extropy_min(dist, need_n()?, need_t()?, opts),
        Measure::ExtropyMax => order_stats::extropy_max(dist, need_n()?, opts),
    }
}

/// `count` equally spaced points from `start` to `stop`, both included.
pub fn linspace(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite()) {
        return Err(invalid("grid endpoints must be finite"));
    }
    match count {
        0 => Err(invalid("grid needs at least one point")),
        1 if start == stop => Ok(vec![start]),
        1 => Err(invalid("a one-point grid needs start == stop")),
        _ if !(start < stop) => Err(invalid(format!("grid start {start} must be below stop {stop}"))),
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            Ok((0..count)
                .map(|i| if i == count - 1 { stop } else { start + step * i as f64 })
                .collect())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    T,
    N,
}

/// Values of one measure along a grid in `t` or `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanGrid {
    pub axis: Axis,
    pub points: Vec<f64>,
    pub values: Vec<MeasureValue>,
    /// Grid points dropped because the measure is undefined there.
    #[serde(skip)]
    pub skipped: Vec<(f64, Error)>,
}

fn assemble(axis: Axis, points: &[f64], results: Vec<Result<MeasureValue>>) -> Result<ScanGrid> {
    let mut grid = ScanGrid {
        axis,
        points: Vec::new(),
        values: Vec::new(),
        skipped: Vec::new(),
    };
    for (&p, r) in points.iter().zip(results) {
        match r {
            Ok(v) => {
                grid.points.push(p);
                grid.values.push(v);
            }
            Err(e @ Error::Domain(_)) => grid.skipped.push((p, e)),
            Err(e) => return Err(e),
        }
    }
    Ok(grid)
}

/// Scans `measure` over `t_points`. Points where it is undefined are skipped;
/// any other failure aborts the scan.
pub fn scan_t(
    measure: Measure,
    dist: &Distribution,
    t_points: &[f64],
    n: Option<usize>,
    opts: &EvalOptions,
) -> Result<ScanGrid> {
    let results = opts
        .execution
        .map(t_points, |&t| evaluate(measure, dist, Some(t), n, opts));
    assemble(Axis::T, t_points, results)
}

/// Scans an order-statistic measure over `n = n_start..=n_stop`.
pub fn scan_n(
    measure: Measure,
    dist: &Distribution,
    n_start: usize,
    n_stop: usize,
    t: Option<f64>,
    opts: &EvalOptions,
) -> Result<ScanGrid> {
    if !measure.needs_n() {
        return Err(invalid(format!("{measure} does not depend on n")));
    }
    if n_start == 0 || n_start > n_stop {
        return Err(invalid(format!("invalid n range {n_start}:{n_stop}")));
    }
    let ns: Vec<usize> = (n_start..=n_stop).collect();
    let results = opts.execution.map(&ns, |&n| evaluate(measure, dist, t, Some(n), opts));
    let points: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    assemble(Axis::N, &points, results)
}

/// Time at which the order-statistic figures are drawn.
pub const FIGURE_T: f64 = 0.5;
pub const FIGURE_N_MAX: usize = 10;
/// Inclusive `t` range and point count of the bound figure.
pub const FIGURE3_RANGE: (f64, f64, usize) = (0.05, 1.5, 100);

/// The Weibull law with shape 2 and rate 1 used by all figures.
pub fn figure_distribution() -> Distribution {
    Distribution::weibull2(2.0, 1.0).expect("valid parameters")
}

/// Figure 1 (`Extreme::Max`) or figure 2 (`Extreme::Min`): `(n, J)` for `n = 1..=10` at `t = 0.5`.
pub fn order_statistic_figure(which: order_stats::Extreme, opts: &EvalOptions) -> Result<Vec<(usize, f64)>> {
    let values = order_stats::past_extropy_sequence(&figure_distribution(), which, FIGURE_T, FIGURE_N_MAX, opts)?;
    Ok(values.into_iter().enumerate().map(|(i, v)| (i + 1, v)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRow {
    pub t: f64,
    pub past_extropy: f64,
    pub neg_half_tau: f64,
}

/// Figure 3: the past extropy and the bound `-tau/2` over `FIGURE3_RANGE`.
pub fn bound_figure(opts: &EvalOptions) -> Result<Vec<BoundRow>> {
    let dist = figure_distribution();
    let (a, b, count) = FIGURE3_RANGE;
    let ts = linspace(a, b, count)?;
    opts.execution.try_map(&ts, |&t| {
        Ok(BoundRow {
            t,
            past_extropy: measures::past_extropy(&dist, t, opts)?.value,
            neg_half_tau: measures::past_extropy_lower_bound(&dist, t)?,
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReconstructionRow {
    pub t: f64,
    pub reconstructed: f64,
    pub direct: f64,
    pub abs_diff: f64,
}

/// Rebuilds the past extropy from the (opaque) reversed failure rate and
/// `J(X)`, next to the directly computed value.
pub fn reconstruction_table(
    dist: &Distribution,
    t_points: &[f64],
    opts: &EvalOptions,
) -> Result<Vec<ReconstructionRow>> {
    let j = measures::extropy(dist, opts)?.value;
    let tau = TauFunction::opaque_from_distribution(dist);
    opts.execution.try_map(t_points, |&t| {
        if !(dist.cdf(t) > 0.0) {
            return Err(domain(format!("F({t}) = 0")));
        }
        let reconstructed = reconstruct_past_extropy(&tau, j, t, opts)?;
        let direct = measures::past_extropy(dist, t, opts)?.value;
        Ok(ReconstructionRow {
            t,
            reconstructed,
            direct,
            abs_diff: (reconstructed - direct).abs(),
        })
    })
}
