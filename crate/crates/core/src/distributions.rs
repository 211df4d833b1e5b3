//! Lifetime distributions: the parametric catalog and tabulated laws.

use serde::Serialize;

use crate::error::{domain, invalid, Result};

/// Support `[lower, upper]` of a non-negative lifetime; `upper` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl Support {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && lower >= 0.0) {
            return Err(invalid(format!(
                "support lower bound must be finite and >= 0, got {lower}"
            )));
        }
        if upper.is_nan() || !(lower < upper) {
            return Err(invalid(format!("support ({lower}, {upper}) is empty")));
        }
        Ok(Self { lower, upper })
    }

    pub fn is_bounded(&self) -> bool {
        self.upper.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }
}

/// Which measures a family can evaluate without quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ClosedFormCapability {
    pub past_extropy: bool,
    pub extropy: bool,
    pub reversed_failure_rate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Exponential {
        rate: f64,
    },
    /// Uniform on `(0, upper)`.
    Uniform {
        upper: f64,
    },
    /// `f(x) = alpha x^(alpha - 1)` on `(0, 1)`.
    Power {
        alpha: f64,
    },
    /// `f(x) = theta scale^theta / x^(theta + 1)` on `(scale, inf)`.
    Pareto {
        theta: f64,
        scale: f64,
    },
    /// `f(x) = rate shape x^(shape - 1) exp(-rate x^shape)`.
    Weibull2 {
        shape: f64,
        rate: f64,
    },
    Tabulated(Tabulated),
}

/// Largest shortfall of the last tabulated `F` from 1 that is accepted.
pub const TABULATED_MASS_TOLERANCE: f64 = 1e-6;
/// Bracket width at which quantile bisection stops.
pub const QUANTILE_BRACKET_WIDTH: f64 = 1e-12;

/// A cdf given on a grid, interpolated by a monotone piecewise cubic
/// (Fritsch–Carlson); the pdf is the interpolant's derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    xs: Vec<f64>,
    fs: Vec<f64>,
    slopes: Vec<f64>,
}

impl Tabulated {
    /// Builds the interpolant from `(x, F(x))` pairs.
    ///
    /// Both columns must be strictly increasing, `F` must start at 0 and end
    /// within [`TABULATED_MASS_TOLERANCE`] of 1. The last value is rescaled to
    /// exactly 1.
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(invalid("a tabulated cdf needs at least two points"));
        }
        for (i, &(x, f)) in points.iter().enumerate() {
            if !(x.is_finite() && f.is_finite()) {
                return Err(invalid(format!("row {i}: non-finite value")));
            }
            if !(0.0..=1.0).contains(&f) {
                return Err(invalid(format!("row {i}: F = {f} is outside [0, 1]")));
            }
        }
        for (i, w) in points.windows(2).enumerate() {
            if !(w[1].0 > w[0].0) {
                return Err(invalid(format!("row {}: x is not strictly increasing", i + 1)));
            }
            if !(w[1].1 > w[0].1) {
                return Err(invalid(format!("row {}: F is not strictly increasing", i + 1)));
            }
        }
        let (x0, f0) = points[0];
        if x0 < 0.0 {
            return Err(invalid(format!("first x = {x0} is negative")));
        }
        if f0 != 0.0 {
            return Err(invalid(format!("first F must be 0, got {f0}")));
        }
        let last = points[points.len() - 1].1;
        if last < 1.0 - TABULATED_MASS_TOLERANCE {
            return Err(invalid(format!(
                "last F = {last} leaves more than {TABULATED_MASS_TOLERANCE:e} of mass uncovered"
            )));
        }
        let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
        let fs: Vec<f64> = points.iter().map(|p| p.1 / last).collect();
        let slopes = pchip_slopes(&xs, &fs);
        Ok(Self { xs, fs, slopes })
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.fs.iter().copied())
    }

    fn first(&self) -> f64 {
        self.xs[0]
    }

    fn last(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    fn segment(&self, x: f64) -> usize {
        let k = self.xs.partition_point(|&xi| xi <= x);
        k.clamp(1, self.xs.len() - 1) - 1
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= self.first() {
            return 0.0;
        }
        if x >= self.last() {
            return 1.0;
        }
        let k = self.segment(x);
        let h = self.xs[k + 1] - self.xs[k];
        let s = (x - self.xs[k]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let v = (2.0 * s3 - 3.0 * s2 + 1.0) * self.fs[k]
            + (s3 - 2.0 * s2 + s) * h * self.slopes[k]
            + (-2.0 * s3 + 3.0 * s2) * self.fs[k + 1]
            + (s3 - s2) * h * self.slopes[k + 1];
        v.clamp(0.0, 1.0)
    }

    fn pdf(&self, x: f64) -> f64 {
        if x < self.first() || x > self.last() {
            return 0.0;
        }
        let k = self.segment(x);
        let h = self.xs[k + 1] - self.xs[k];
        let s = (x - self.xs[k]) / h;
        let s2 = s * s;
        let v = (6.0 * s2 - 6.0 * s) * self.fs[k] / h
            + (3.0 * s2 - 4.0 * s + 1.0) * self.slopes[k]
            + (-6.0 * s2 + 6.0 * s) * self.fs[k + 1] / h
            + (3.0 * s2 - 2.0 * s) * self.slopes[k + 1];
        v.max(0.0)
    }
}

fn pchip_slopes(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = ys.windows(2).zip(&h).map(|(w, h)| (w[1] - w[0]) / h).collect();
    if n == 2 {
        return vec![delta[0]; 2];
    }
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        let (d0, d1) = (delta[k - 1], delta[k]);
        if d0 * d1 > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / d0 + w2 / d1);
        }
    }
    let end_slope = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s.signum() != d0.signum() {
            0.0
        } else if d0.signum() != d1.signum() && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

/// An immutable lifetime law.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    family: Family,
    support: Support,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(format!("{name} must be a finite positive number, got {v}")))
    }
}

impl Distribution {
    pub fn exponential(rate: f64) -> Result<Self> {
        let rate = positive("exponential rate", rate)?;
        Ok(Self {
            family: Family::Exponential { rate },
            support: Support::new(0.0, f64::INFINITY)?,
        })
    }

    pub fn uniform(upper: f64) -> Result<Self> {
        let upper = positive("uniform upper bound", upper)?;
        Ok(Self {
            family: Family::Uniform { upper },
            support: Support::new(0.0, upper)?,
        })
    }

    pub fn power(alpha: f64) -> Result<Self> {
        let alpha = positive("power exponent", alpha)?;
        Ok(Self {
            family: Family::Power { alpha },
            support: Support::new(0.0, 1.0)?,
        })
    }

    pub fn pareto(theta: f64, scale: f64) -> Result<Self> {
        let theta = positive("pareto shape", theta)?;
        let scale = positive("pareto scale", scale)?;
        Ok(Self {
            family: Family::Pareto { theta, scale },
            support: Support::new(scale, f64::INFINITY)?,
        })
    }

    pub fn weibull2(shape: f64, rate: f64) -> Result<Self> {
        let shape = positive("weibull shape", shape)?;
        let rate = positive("weibull rate", rate)?;
        Ok(Self {
            family: Family::Weibull2 { shape, rate },
            support: Support::new(0.0, f64::INFINITY)?,
        })
    }

    pub fn tabulated(points: &[(f64, f64)]) -> Result<Self> {
        let table = Tabulated::new(points)?;
        let support = Support::new(table.first(), table.last())?;
        Ok(Self {
            family: Family::Tabulated(table),
            support,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            Family::Exponential { .. } => "exponential",
            Family::Uniform { .. } => "uniform",
            Family::Power { .. } => "power",
            Family::Pareto { .. } => "pareto",
            Family::Weibull2 { .. } => "weibull2",
            Family::Tabulated(_) => "tabulated",
        }
    }

    pub fn capabilities(&self) -> ClosedFormCapability {
        match self.family {
            Family::Exponential { .. } | Family::Uniform { .. } | Family::Power { .. } | Family::Pareto { .. } => {
                ClosedFormCapability {
                    past_extropy: true,
                    extropy: true,
                    reversed_failure_rate: true,
                }
            }
            Family::Weibull2 { .. } => ClosedFormCapability {
                reversed_failure_rate: true,
                ..Default::default()
            },
            Family::Tabulated(_) => ClosedFormCapability::default(),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if !self.support.contains(x) {
            return 0.0;
        }
        match &self.family {
            Family::Exponential { rate } => rate * (-rate * x).exp(),
            Family::Uniform { upper } => 1.0 / upper,
            Family::Power { alpha } => alpha * x.powf(alpha - 1.0),
            Family::Pareto { theta, scale } => theta / scale * (scale / x).powf(theta + 1.0),
            Family::Weibull2 { shape, rate } => rate * shape * x.powf(shape - 1.0) * (-rate * x.powf(*shape)).exp(),
            Family::Tabulated(t) => t.pdf(x),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.support.lower {
            return 0.0;
        }
        if x >= self.support.upper {
            return 1.0;
        }
        match &self.family {
            Family::Exponential { rate } => -(-rate * x).exp_m1(),
            Family::Uniform { upper } => x / upper,
            Family::Power { alpha } => x.powf(*alpha),
            Family::Pareto { theta, scale } => -(theta * (scale / x).ln()).exp_m1(),
            Family::Weibull2 { shape, rate } => -(-rate * x.powf(*shape)).exp_m1(),
            Family::Tabulated(t) => t.cdf(x),
        }
    }

    /// `1 - F(x)` without cancellation where the family allows it.
    pub fn survival(&self, x: f64) -> f64 {
        if x <= self.support.lower {
            return 1.0;
        }
        if x >= self.support.upper {
            return 0.0;
        }
        match &self.family {
            Family::Exponential { rate } => (-rate * x).exp(),
            Family::Pareto { theta, scale } => (scale / x).powf(*theta),
            Family::Weibull2 { shape, rate } => (-rate * x.powf(*shape)).exp(),
            _ => 1.0 - self.cdf(x),
        }
    }

    /// `log F(x)`; `-inf` at or below the support's lower end.
    pub fn ln_cdf(&self, x: f64) -> f64 {
        if x <= self.support.lower {
            return f64::NEG_INFINITY;
        }
        if x >= self.support.upper {
            return 0.0;
        }
        match &self.family {
            Family::Uniform { upper } => (x / upper).ln(),
            Family::Power { alpha } => alpha * x.ln(),
            Family::Exponential { .. } | Family::Weibull2 { .. } | Family::Pareto { .. } => {
                let s = self.survival(x);
                if s < 0.5 {
                    (-s).ln_1p()
                } else {
                    self.cdf(x).ln()
                }
            }
            Family::Tabulated(t) => t.cdf(x).ln(),
        }
    }

    /// `log(1 - F(x))`; `-inf` at or above the support's upper end.
    pub fn ln_survival(&self, x: f64) -> f64 {
        if x <= self.support.lower {
            return 0.0;
        }
        if x >= self.support.upper {
            return f64::NEG_INFINITY;
        }
        match &self.family {
            Family::Exponential { rate } => -rate * x,
            Family::Pareto { theta, scale } => theta * (scale / x).ln(),
            Family::Weibull2 { shape, rate } => -rate * x.powf(*shape),
            _ => (-self.cdf(x)).ln_1p(),
        }
    }

    /// Inverse cdf on `(0, 1)`: closed form for parametric families, bisection
    /// for tabulated laws.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(domain(format!("quantile level must lie in (0, 1), got {u}")));
        }
        Ok(match &self.family {
            Family::Exponential { rate } => -(-u).ln_1p() / rate,
            Family::Uniform { upper } => upper * u,
            Family::Power { alpha } => u.powf(1.0 / alpha),
            Family::Pareto { theta, scale } => scale * (-(-u).ln_1p() / theta).exp(),
            Family::Weibull2 { shape, rate } => (-(-u).ln_1p() / rate).powf(1.0 / shape),
            Family::Tabulated(_) => self.bisect_quantile(u),
        })
    }

    fn bisect_quantile(&self, u: f64) -> f64 {
        let (mut lo, mut hi) = (self.support.lower, self.support.upper);
        while hi - lo > QUANTILE_BRACKET_WIDTH {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cdf(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `tau(t) = f(t) / F(t)`.
    pub fn reversed_failure_rate(&self, t: f64) -> Result<f64> {
        let big_f = self.cdf(t);
        if big_f <= 0.0 {
            return Err(domain(format!(
                "reversed failure rate needs F(t) > 0; F({t}) = 0 for the {} law",
                self.name()
            )));
        }
        Ok(self.pdf(t) / big_f)
    }

    /// Analytic reversed failure rate, written to stay accurate deep in the tail.
    pub fn reversed_failure_rate_closed_form(&self, t: f64) -> Option<f64> {
        if !(t > self.support.lower) {
            return None;
        }
        if t >= self.support.upper {
            return Some(0.0);
        }
        match &self.family {
            Family::Exponential { rate } => Some(rate / (rate * t).exp_m1()),
            Family::Uniform { .. } => Some(1.0 / t),
            Family::Power { alpha } => Some(alpha / t),
            Family::Pareto { theta, scale } => Some(theta / (t * (theta * (t / scale).ln()).exp_m1())),
            Family::Weibull2 { shape, rate } => {
                let z = rate * t.powf(*shape);
                Some(rate * shape * t.powf(shape - 1.0) / z.exp_m1())
            }
            Family::Tabulated(_) => None,
        }
    }

    /// `J(X) = -1/2 ∫ f²` where a closed form exists. `None` for families
    /// without one and for divergent cases (power law with `alpha <= 1/2`).
    pub fn extropy_closed_form(&self) -> Option<f64> {
        match &self.family {
            Family::Exponential { rate } => Some(-rate / 4.0),
            Family::Uniform { upper } => Some(-0.5 / upper),
            Family::Power { alpha } if *alpha > 0.5 => Some(-alpha * alpha / (2.0 * (2.0 * alpha - 1.0))),
            Family::Pareto { theta, scale } => Some(-theta * theta / (2.0 * (2.0 * theta + 1.0) * scale)),
            _ => None,
        }
    }

    /// Closed-form past extropy `J(_tX)` for `t` strictly inside the region `F(t) > 0`.
    pub fn past_extropy_closed_form(&self, t: f64) -> Option<f64> {
        if !(t > self.support.lower) {
            return None;
        }
        match &self.family {
            Family::Exponential { rate } => {
                // -(λ/4)(1 + e^{-λt})/(1 - e^{-λt}), via expm1 for small λt
                let e = (-rate * t).exp();
                Some(-rate / 4.0 * (1.0 + e) / -(-rate * t).exp_m1())
            }
            Family::Uniform { upper } => Some(-0.5 / t.min(*upper)),
            Family::Power { alpha } if *alpha > 0.5 => Some(-alpha * alpha / (2.0 * (2.0 * alpha - 1.0) * t.min(1.0))),
            Family::Pareto { theta, scale } => {
                let (th, x0) = (*theta, *scale);
                let denom = 2.0 * (2.0 * th + 1.0) * (t.powf(th) - x0.powf(th)).powi(2);
                Some(th * th / denom * (x0.powf(2.0 * th) / t - t.powf(2.0 * th) / x0))
            }
            _ => None,
        }
    }

    /// `a`, the interpolation knots strictly inside `(a, b)`, then `b`. The
    /// density of a tabulated law is smooth between knots only.
    pub fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        let mut pts = vec![a];
        if let Family::Tabulated(tab) = &self.family {
            pts.extend(tab.xs.iter().copied().filter(|&x| x > a && x < b));
        }
        pts.push(b);
        pts
    }

    /// Right end of the initial stretch of the support on which the pdf is
    /// non-decreasing, when that stretch is non-degenerate.
    pub fn increasing_density_until(&self) -> Option<f64> {
        match &self.family {
            Family::Exponential { .. } | Family::Pareto { .. } => None,
            Family::Uniform { upper } => Some(*upper),
            Family::Power { alpha } => (*alpha >= 1.0).then_some(1.0),
            Family::Weibull2 { shape, rate } => {
                (*shape > 1.0).then(|| ((shape - 1.0) / (rate * shape)).powf(1.0 / shape))
            }
            Family::Tabulated(t) => {
                let mut end = None;
                for w in t.xs.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let probes = [a + 0.25 * (b - a), a + 0.5 * (b - a), a + 0.75 * (b - a), b];
                    let mut prev = t.pdf(a);
                    for &x in &probes {
                        let v = t.pdf(x);
                        if v < prev {
                            return end;
                        }
                        prev = v;
                        end = Some(x);
                    }
                }
                end
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn w21() -> Distribution {
        Distribution::weibull2(2.0, 1.0).unwrap()
    }

    #[test]
    fn pdf_examples() {
        assert_eq!(Distribution::exponential(1.0).unwrap().pdf(0.0), 1.0);
        assert_relative_eq!(Distribution::power(2.0).unwrap().pdf(0.5), 1.0);
        let d = Distribution::uniform(2.0).unwrap();
        assert_eq!(d.pdf(-0.1), 0.0);
        assert_eq!(d.pdf(2.5), 0.0);
        assert_eq!(Distribution::pareto(1.0, 1.0).unwrap().pdf(0.5), 0.0);
    }

    #[test]
    fn weibull_pdf_peaks_at_mode() {
        let d = w21();
        let mode = d.increasing_density_until().unwrap();
        assert_relative_eq!(mode, std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-15);
        let h = 1e-5;
        let slope = (d.pdf(mode + h) - d.pdf(mode - h)) / (2.0 * h);
        assert!(slope.abs() < 1e-8, "pdf'(T) = {slope}");
        assert!(d.pdf(mode) > d.pdf(mode - 0.01) && d.pdf(mode) > d.pdf(mode + 0.01));
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(Distribution::uniform(2.0).unwrap().cdf(1.0), 0.5);
        assert_relative_eq!(
            Distribution::pareto(1.0, 1.0).unwrap().cdf(2.0),
            0.5,
            max_relative = 1e-15
        );
        assert_relative_eq!(w21().cdf(0.5), 1.0 - (-0.25f64).exp(), max_relative = 1e-15);
        assert_relative_eq!(w21().cdf(0.5), 0.221_199_216_928_595, max_relative = 1e-12);
    }

    #[test]
    fn quantile_examples() {
        let e = Distribution::exponential(1.0).unwrap();
        assert_relative_eq!(e.quantile(1.0 - (-1.0f64).exp()).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(Distribution::power(2.0).unwrap().quantile(0.25).unwrap(), 0.5);
        for bad in [0.0, 1.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(e.quantile(bad), Err(crate::Error::Domain(_))));
        }
    }

    #[test]
    fn reversed_failure_rate_examples() {
        let lam = 1.5;
        let e = Distribution::exponential(lam).unwrap();
        for t in [0.1, 1.0, 3.0] {
            let expected = lam * (-lam * t).exp() / (1.0 - (-lam * t).exp());
            assert_relative_eq!(e.reversed_failure_rate(t).unwrap(), expected, max_relative = 1e-13);
            assert_relative_eq!(
                e.reversed_failure_rate_closed_form(t).unwrap(),
                expected,
                max_relative = 1e-13
            );
        }
        let u = Distribution::uniform(3.0).unwrap();
        assert_relative_eq!(u.reversed_failure_rate(1.2).unwrap(), 1.0 / 1.2, max_relative = 1e-15);
        assert_relative_eq!(
            Distribution::power(2.0).unwrap().reversed_failure_rate(0.5).unwrap(),
            4.0
        );
        assert!(e.reversed_failure_rate(0.0).is_err());
        let p = Distribution::pareto(2.0, 1.0).unwrap();
        assert!(p.reversed_failure_rate(0.9).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(Distribution::exponential(0.0).is_err());
        assert!(Distribution::exponential(f64::INFINITY).is_err());
        assert!(Distribution::uniform(-1.0).is_err());
        assert!(Distribution::power(f64::NAN).is_err());
        assert!(Distribution::pareto(1.0, 0.0).is_err());
        assert!(Distribution::weibull2(2.0, -1.0).is_err());
        assert!(Support::new(1.0, 1.0).is_err());
        assert!(Support::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn tabulated_validation() {
        assert!(Distribution::tabulated(&[(0.0, 0.0)]).is_err());
        assert!(
            Distribution::tabulated(&[(0.0, 0.0), (1.0, 0.5)]).is_err(),
            "mass missing"
        );
        assert!(Distribution::tabulated(&[(0.0, 0.1), (1.0, 1.0)]).is_err(), "F(0) != 0");
        assert!(Distribution::tabulated(&[(0.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(Distribution::tabulated(&[(0.0, 0.0), (1.0, 0.6), (2.0, 0.6), (3.0, 1.0)]).is_err());
        assert!(Distribution::tabulated(&[(-1.0, 0.0), (1.0, 1.0)]).is_err());
        assert!(Distribution::tabulated(&[(0.0, 0.0), (1.0, 1.2)]).is_err());
        let lin = Distribution::tabulated(&[(0.0, 0.0), (2.0, 1.0)]).unwrap();
        assert_relative_eq!(lin.cdf(0.5), 0.25);
        assert_relative_eq!(lin.pdf(1.3), 0.5);
    }

    fn exp_table(n: usize, upper: f64) -> Distribution {
        let e = Distribution::exponential(1.0).unwrap();
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let x = upper * i as f64 / (n - 1) as f64;
                (x, e.cdf(x))
            })
            .collect();
        Distribution::tabulated(&pts).unwrap()
    }

    #[test]
    fn tabulated_exponential_tracks_analytic_law() {
        let e = Distribution::exponential(1.0).unwrap();
        let tab = exp_table(2001, 20.0);
        let mut worst_pdf: f64 = 0.0;
        for i in 0..=4990 {
            let x = 0.01 + i as f64 * 0.001;
            worst_pdf = worst_pdf.max((tab.pdf(x) - e.pdf(x)).abs());
        }
        assert!(worst_pdf <= 1e-3, "sup |pdf diff| = {worst_pdf}");
        for i in 1..100 {
            let u = i as f64 / 100.0;
            let q = tab.quantile(u).unwrap();
            assert!((q - e.quantile(u).unwrap()).abs() <= 1e-4, "u = {u}");
        }
    }

    #[test]
    fn tabulated_density_scan() {
        // increasing then decreasing density, sampled from weibull2(2,1)
        let w = w21();
        let pts: Vec<(f64, f64)> = (0..=500).map(|i| (i as f64 * 0.01, w.cdf(i as f64 * 0.01))).collect();
        let tab = Distribution::tabulated(&pts).unwrap();
        let peak = tab.increasing_density_until().unwrap();
        assert!((peak - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.02, "{peak}");
        assert!(exp_table(101, 20.0).increasing_density_until().is_none());
    }

    #[test]
    fn log_forms_match_direct_evaluation() {
        let laws = [
            Distribution::exponential(0.7).unwrap(),
            Distribution::uniform(2.0).unwrap(),
            Distribution::power(1.5).unwrap(),
            Distribution::pareto(2.0, 1.0).unwrap(),
            w21(),
        ];
        for d in &laws {
            for u in [0.01, 0.3, 0.7, 0.99] {
                let x = d.quantile(u).unwrap();
                assert_relative_eq!(d.ln_cdf(x), d.cdf(x).ln(), max_relative = 1e-10);
                assert_relative_eq!(d.ln_survival(x), d.survival(x).ln(), max_relative = 1e-10);
                assert_relative_eq!(d.survival(x) + d.cdf(x), 1.0, max_relative = 1e-14);
            }
        }
    }
}
