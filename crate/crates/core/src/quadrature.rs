//! Adaptive Gauss–Kronrod integration.
//!
//! A 7-point Gauss / 15-point Kronrod pair is applied on each subinterval and
//! the subinterval with the largest error estimate is bisected until the
//! global estimate meets `max(abs_tol, rel_tol * |value|)`. All nodes are
//! strictly interior, so integrable endpoint singularities (`x^(-p)`, `p < 1`)
//! are never evaluated directly. A semi-infinite range `[a, inf)` is mapped to
//! `(0, 1)` by `x = a + u / (1 - u)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{domain, invalid, Error, Result};

/// Tolerances and subdivision limit shared by every numeric integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let cfg = Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(invalid(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(invalid(format!("abs_tol must be > 0, got {}", self.abs_tol)));
        }
        if self.max_subdivisions < 1 {
            return Err(invalid("max_subdivisions must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions_used: usize,
}

// Kronrod abscissae on [-1, 1], descending; xgk[1], xgk[3], xgk[5] and the
// centre xgk[7] are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Consecutive non-shrinking bisections of an endpoint interval that signal divergence.
const DIVERGENCE_STREAK: u32 = 8;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    touches_lower: bool,
    touches_upper: bool,
    lower_streak: u32,
    upper_streak: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One application of the 15-point Kronrod rule with QUADPACK's error scaling.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

fn divergent(a: f64, b: f64, why: &str) -> Error {
    Error::DivergentIntegral(format!("integral over ({a}, {b}) {why}"))
}

/// Integrates `f` over `(a, b)`; `b` may be `f64::INFINITY`.
///
/// Fails with [`Error::DivergentIntegral`] when an interval touching an
/// endpoint keeps contributing at least as much after every one of
/// [`DIVERGENCE_STREAK`] consecutive bisections (the running estimate then
/// grows without bound), or when the integrand produces non-finite values.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !a.is_finite() || b.is_nan() || !(a < b) {
        return Err(domain(format!("integration range ({a}, {b}) is not a valid interval")));
    }
    if b.is_infinite() {
        // x = a + u/(1-u): u in (0, 1/2] covers (a, a+1] directly, and the far
        // half is written in w = 1 - u so that w -> 0 stays resolvable
        let near = adaptive(&f, a, a + 1.0, cfg, cfg.max_subdivisions)?;
        let tail = |w: f64| {
            let y = f(a + (1.0 - w) / w);
            // far tail where the weight overflows but the integrand is already zero
            if y == 0.0 {
                0.0
            } else {
                y / (w * w)
            }
        };
        let far =
            adaptive(&tail, 0.0, 0.5, cfg, cfg.max_subdivisions - near.subdivisions_used).map_err(|e| match e {
                Error::DivergentIntegral(_) => divergent(a, b, "does not converge"),
                Error::ToleranceNotReached {
                    value,
                    error_estimate,
                    subdivisions,
                } => Error::ToleranceNotReached {
                    value: value + near.value,
                    error_estimate: error_estimate + near.error_estimate,
                    subdivisions: subdivisions + near.subdivisions_used,
                },
                other => other,
            })?;
        Ok(IntegralResult {
            value: near.value + far.value,
            error_estimate: near.error_estimate + far.error_estimate,
            subdivisions_used: near.subdivisions_used + far.subdivisions_used,
        })
    } else {
        adaptive(&f, a, b, cfg, cfg.max_subdivisions)
    }
}

/// Sum of [`integrate`] over consecutive pieces `[points[k], points[k + 1]]`.
///
/// Splitting at known kinks of the integrand lets each piece converge on its
/// first rule application. Only the last point may be infinite.
pub fn integrate_piecewise<F>(f: F, points: &[f64], cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    if points.len() < 2 {
        return Err(domain("piecewise integration needs at least two points"));
    }
    let mut total = IntegralResult {
        value: 0.0,
        error_estimate: 0.0,
        subdivisions_used: 0,
    };
    for w in points.windows(2) {
        let r = integrate(&f, w[0], w[1], cfg)?;
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.subdivisions_used += r.subdivisions_used;
    }
    Ok(total)
}

/// Adaptive bisection of `(a, b)` with at most `budget` bisections.
fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, cfg: &QuadratureConfig, budget: usize) -> Result<IntegralResult> {
    let (value, error) = kronrod15(f, a, b);
    if !value.is_finite() {
        return Err(divergent(a, b, "has a non-finite estimate"));
    }
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        value,
        error,
        touches_lower: true,
        touches_upper: true,
        lower_streak: 0,
        upper_streak: 0,
    });
    let mut settled: Vec<Segment> = Vec::new();
    let mut total = value;
    let mut total_err = error;
    let mut count = 0usize;

    loop {
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if total_err <= tol {
            break;
        }
        let Some(worst) = heap.pop() else {
            // every remaining interval is at the bisection resolution limit
            return Err(Error::ToleranceNotReached {
                value: total,
                error_estimate: total_err,
                subdivisions: count,
            });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            settled.push(worst);
            continue;
        }
        if count >= budget {
            heap.push(worst);
            return Err(Error::ToleranceNotReached {
                value: total,
                error_estimate: total_err,
                subdivisions: count,
            });
        }
        let (lv, le) = kronrod15(f, worst.a, mid);
        let (rv, re) = kronrod15(f, mid, worst.b);
        if !(lv.is_finite() && rv.is_finite()) {
            return Err(divergent(a, b, "has a non-finite estimate"));
        }
        let grew = |child: f64| worst.value != 0.0 && child.abs() >= worst.value.abs();
        let lower_streak = if worst.touches_lower && grew(lv) {
            worst.lower_streak + 1
        } else {
            0
        };
        let upper_streak = if worst.touches_upper && grew(rv) {
            worst.upper_streak + 1
        } else {
            0
        };
        if lower_streak >= DIVERGENCE_STREAK || upper_streak >= DIVERGENCE_STREAK {
            return Err(divergent(a, b, "grows without bound near an endpoint"));
        }
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        count += 1;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
            touches_lower: worst.touches_lower,
            touches_upper: false,
            lower_streak,
            upper_streak: 0,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
            touches_lower: false,
            touches_upper: worst.touches_upper,
            lower_streak: 0,
            upper_streak,
        });
    }

    // resum to shed the drift of the running updates
    let (value, error_estimate) = heap
        .iter()
        .chain(settled.iter())
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
    Ok(IntegralResult {
        value,
        error_estimate,
        subdivisions_used: count,
    })
}
