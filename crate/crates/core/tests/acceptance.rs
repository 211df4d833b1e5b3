//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p extropy-core --test acceptance`. Clauses in
//! `EXPECTED_RED` contradict the closed forms they are derived from and are
//! reported as FAIL without failing the run; any other FAIL, or an expected
//! red clause that starts passing, fails the run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use extropy_core::measures::{self, Monotonicity};
use extropy_core::order_stats::{self, conditional_max_density, Extreme};
use extropy_core::quadrature::integrate_piecewise;
use extropy_core::reconstruction::{characterize, reconstruct_past_extropy, TauFunction, Verdict};
use extropy_core::scan;
use extropy_core::{Distribution, EvalOptions};

const CLOSED_FORM_REL_TOL: f64 = 1e-8;
const CLOSED_FORM_BUDGET: Duration = Duration::from_secs(5);
const DECOMPOSITION_TOL: f64 = 1e-8;
const ROUND_TRIP_TOL: f64 = 1e-6;
const ROUND_TRIP_BUDGET: Duration = Duration::from_secs(30);
const FD_STEP: f64 = 1e-5;
const FD_TOL: f64 = 1e-5;
const SIGN_FLOOR: f64 = 1e-9;
const MONOTONE_TOL: f64 = 1e-10;
const SELF_DISCREPANCY_TOL: f64 = 1e-10;
const WITNESS_GAP: f64 = 0.5;
const N1_TOL: f64 = 1e-10;
const NORMALIZATION_TOL: f64 = 1e-9;
const EXPECTATION_TOL: f64 = 1e-8;

/// Past extropy of Exp(1) and Exp(2) at t = 1 differ by 0.1155 under the
/// closed form `-(λ/4)(1 + e^{-λt})/(1 - e^{-λt})`, not by 0.5.
const EXPECTED_RED: &[&str] = &["7c"];

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn catalog() -> Vec<(&'static str, Distribution)> {
    vec![
        ("exp:1", Distribution::exponential(1.0).unwrap()),
        ("unif:2", Distribution::uniform(2.0).unwrap()),
        ("power:2", Distribution::power(2.0).unwrap()),
        ("pareto:2,1", Distribution::pareto(2.0, 1.0).unwrap()),
        ("weibull2:2,1", Distribution::weibull2(2.0, 1.0).unwrap()),
    ]
}

/// `count` quantiles of `dist` at levels evenly spread over `[lo, hi]`.
fn quantiles(dist: &Distribution, lo: f64, hi: f64, count: usize) -> Vec<f64> {
    scan::linspace(lo, hi, count)
        .unwrap()
        .into_iter()
        .map(|u| dist.quantile(u).unwrap())
        .collect()
}

fn closed_form_agreement() -> Outcome {
    let start = Instant::now();
    let closed = EvalOptions::default();
    let quad = closed.forcing_quadrature();
    let mut worst: f64 = 0.0;
    for (_, d) in catalog().into_iter().take(4) {
        for t in quantiles(&d, 0.02, 0.98, 20) {
            let a = measures::past_extropy(&d, t, &closed).unwrap();
            let b = measures::past_extropy(&d, t, &quad).unwrap();
            assert_eq!(a.method, extropy_core::Method::ClosedForm);
            worst = worst.max(((a.value - b.value) / a.value).abs());
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: "1",
        title: "closed forms vs quadrature, 4 families x 20 t",
        pass: worst <= CLOSED_FORM_REL_TOL && elapsed < CLOSED_FORM_BUDGET,
        detail: format!("max rel err {worst:.2e} (tol {CLOSED_FORM_REL_TOL:e}), {:.2?}", elapsed),
    }
}

fn decomposition() -> Outcome {
    let opts = EvalOptions::default();
    let mut worst: f64 = 0.0;
    for (_, d) in catalog() {
        for t in quantiles(&d, 0.05, 0.95, 10) {
            let (lhs, rhs) = measures::decomposition_residual(&d, t, &opts).unwrap();
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Outcome {
        id: "2",
        title: "decomposition identity, 5 families x 10 t",
        pass: worst <= DECOMPOSITION_TOL,
        detail: format!("max abs err {worst:.2e} (tol {DECOMPOSITION_TOL:e})"),
    }
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let opts = EvalOptions::default();
    let mut worst: f64 = 0.0;
    for (_, d) in catalog() {
        let j = measures::extropy(&d, &opts).unwrap().value;
        let opaque = TauFunction::opaque_from_distribution(&d);
        let shortcut = TauFunction::from_distribution(&d);
        for t in quantiles(&d, 0.05, 0.95, 10) {
            let direct = measures::past_extropy(&d, t, &opts).unwrap().value;
            for tau in [&opaque, &shortcut] {
                let rebuilt = reconstruct_past_extropy(tau, j, t, &opts).unwrap();
                worst = worst.max((rebuilt - direct).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: "3",
        title: "reconstruction round trip, 5 families x 10 t, nested and log-F paths",
        pass: worst <= ROUND_TRIP_TOL && elapsed < ROUND_TRIP_BUDGET,
        detail: format!("max abs err {worst:.2e} (tol {ROUND_TRIP_TOL:e}), {:.2?}", elapsed),
    }
}

fn derivative_consistency() -> Outcome {
    let opts = EvalOptions::default();
    let mut worst: f64 = 0.0;
    let mut sign_mismatches = 0;
    let mut where_worst = String::new();
    for (label, d) in catalog() {
        for t in quantiles(&d, 0.1, 0.9, 50) {
            let j = |s: f64| measures::past_extropy(&d, s, &opts).unwrap().value;
            let analytic = measures::past_extropy_derivative(&d, t, &opts).unwrap();
            let fd = (j(t + FD_STEP) - j(t - FD_STEP)) / (2.0 * FD_STEP);
            let err = (analytic - fd).abs();
            if err > worst {
                worst = err;
                where_worst = format!("{label} t={t:.4}");
            }
            let criterion = -(j(t) + 0.25 * d.reversed_failure_rate(t).unwrap());
            if analytic.abs() > SIGN_FLOOR && criterion.abs() > SIGN_FLOOR && analytic.signum() != criterion.signum() {
                sign_mismatches += 1;
            }
        }
    }
    Outcome {
        id: "4",
        title: "derivative vs central difference and criterion sign, 5 families x 50 t",
        pass: worst <= FD_TOL && sign_mismatches == 0,
        detail: format!("max abs err {worst:.2e} at {where_worst} (tol {FD_TOL:e}), {sign_mismatches} sign mismatches"),
    }
}

fn order_statistic_figures() -> Vec<Outcome> {
    let opts = EvalOptions::default();
    let max: Vec<f64> = scan::order_statistic_figure(Extreme::Max, &opts)
        .unwrap()
        .into_iter()
        .map(|p| p.1)
        .collect();
    let min: Vec<f64> = scan::order_statistic_figure(Extreme::Min, &opts)
        .unwrap()
        .into_iter()
        .map(|p| p.1)
        .collect();
    let rise = order_stats::first_increase(&min, MONOTONE_TOL);
    vec![
        Outcome {
            id: "5a",
            title: "maximum: past extropy strictly decreasing in n = 1..10",
            pass: max.len() == 10 && order_stats::strictly_decreasing(&max, MONOTONE_TOL),
            detail: format!("J(n=1) = {:.6}, J(n=10) = {:.6}", max[0], max[9]),
        },
        Outcome {
            id: "5b",
            title: "minimum: sequence has a consecutive increase",
            pass: min.len() == 10 && rise.is_some(),
            detail: match rise {
                Some(n) => format!("J(n={}) > J(n={n})", n + 1),
                None => "no increase found".into(),
            },
        },
    ]
}

fn lower_bound_figure() -> Outcome {
    let rows = scan::bound_figure(&EvalOptions::default()).unwrap();
    let inside: Vec<_> = rows.iter().filter(|r| r.t > 0.05 && r.t < 0.70).collect();
    let held = inside.iter().all(|r| r.past_extropy >= r.neg_half_tau);
    let witness = rows
        .iter()
        .find(|r| r.t > std::f64::consts::FRAC_1_SQRT_2 && r.past_extropy < r.neg_half_tau);
    Outcome {
        id: "6",
        title: "bound -tau/2 holds below 0.70, fails somewhere above sqrt(2)/2",
        pass: !inside.is_empty() && held && witness.is_some(),
        detail: format!(
            "{} points checked below 0.70, failure witness at t = {}",
            inside.len(),
            witness.map_or("none".into(), |r| format!("{:.4}", r.t))
        ),
    }
}

fn characterization() -> Vec<Outcome> {
    let opts = EvalOptions::default();
    let e1 = Distribution::exponential(1.0).unwrap();
    let e2 = Distribution::exponential(2.0).unwrap();
    let grid = [0.25, 0.5, 1.0, 2.0, 4.0];
    let same = characterize(&e1, &e1, 10, &grid, 1e-7, &opts).unwrap();
    let diff = characterize(&e1, &e2, 10, &grid, 1e-7, &opts).unwrap();
    let cell = diff.cell(1, 1.0).unwrap();
    vec![
        Outcome {
            id: "7a",
            title: "Exp(1) vs Exp(1) indistinguishable",
            pass: same.verdict == Verdict::Indistinguishable && same.max_discrepancy <= SELF_DISCREPANCY_TOL,
            detail: format!("max discrepancy {:.2e}", same.max_discrepancy),
        },
        Outcome {
            id: "7b",
            title: "Exp(1) vs Exp(2) distinct with a witness",
            pass: diff.verdict == Verdict::Distinct && diff.witness.is_some(),
            detail: diff.witness.map_or("no witness".into(), |w| {
                format!("worst cell n={}, t={}: {:.6}", w.n, w.t, w.discrepancy)
            }),
        },
        Outcome {
            id: "7c",
            title: "Exp(1) vs Exp(2) discrepancy >= 0.5 at (n=1, t=1)",
            pass: cell.discrepancy >= WITNESS_GAP,
            detail: format!(
                "J = {:.6} vs {:.6}, discrepancy {:.6}",
                cell.x, cell.y, cell.discrepancy
            ),
        },
    ]
}

fn property_suite() -> Outcome {
    let opts = EvalOptions::default();
    let mut failures = Vec::new();
    let (mut n1_err, mut mass_err, mut expect_err): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (label, d) in catalog() {
        for t in quantiles(&d, 0.05, 0.95, 10) {
            let j = measures::past_extropy(&d, t, &opts).unwrap().value;
            let r = measures::residual_extropy(&d, t, &opts).unwrap().value;
            if j > 0.0 || r > 0.0 {
                failures.push(format!("{label}: positive extropy at t={t}"));
            }
            let j1 = order_stats::past_extropy_max(&d, 1, t, &opts).unwrap().value;
            n1_err = n1_err.max((j - j1).abs());
        }
        for t in quantiles(&d, 0.25, 0.75, 3) {
            let lo = d.support().lower;
            for n in 1..=6 {
                let mass = integrate_piecewise(
                    |x| conditional_max_density(&d, n, t, x).unwrap(),
                    &d.breakpoints(lo, t),
                    &opts.quadrature,
                )
                .unwrap()
                .value;
                mass_err = mass_err.max((mass - 1.0).abs());
                let a = order_stats::past_extropy_max(&d, n, t, &opts).unwrap().value;
                let b = order_stats::past_extropy_max_via_expectation(&d, n, t, &opts)
                    .unwrap()
                    .value;
                expect_err = expect_err.max((a - b).abs());
            }
        }
    }
    let pass =
        failures.is_empty() && n1_err <= N1_TOL && mass_err <= NORMALIZATION_TOL && expect_err <= EXPECTATION_TOL;
    Outcome {
        id: "8",
        title: "J <= 0, n=1 reduction, density normalization, expectation form",
        pass,
        detail: format!(
            "n=1 {n1_err:.1e}, mass {mass_err:.1e}, expectation {expect_err:.1e}, {} sign failures",
            failures.len()
        ),
    }
}

fn sufficiency_not_necessity() -> Outcome {
    let opts = EvalOptions::default();
    let p2 = Distribution::power(2.0).unwrap();
    let u: Vec<f64> = (1..200).map(|k| k as f64 / 200.0).collect();
    let hypothesis = measures::theorem3_hypothesis_holds(&p2, &u);
    let ts = scan::linspace(0.05, 0.95, 19).unwrap();
    let verdict = measures::classify_monotonicity(&p2, &ts, &opts).unwrap();
    let formula_err = ts
        .iter()
        .map(|&t| {
            (measures::past_extropy(&p2, t, &opts.forcing_quadrature())
                .unwrap()
                .value
                + 2.0 / (3.0 * t))
                .abs()
        })
        .fold(0.0, f64::max);
    Outcome {
        id: "9",
        title: "Power(2): hypothesis false yet past extropy increasing",
        pass: !hypothesis && verdict.classification == Monotonicity::Increasing && formula_err <= 1e-9,
        detail: format!(
            "hypothesis {hypothesis}, classification {:?}, |J + 2/(3t)| <= {formula_err:.1e}",
            verdict.classification
        ),
    }
}

fn main() -> ExitCode {
    let mut outcomes = vec![
        closed_form_agreement(),
        decomposition(),
        round_trip(),
        derivative_consistency(),
    ];
    outcomes.extend(order_statistic_figures());
    outcomes.push(lower_bound_figure());
    outcomes.extend(characterization());
    outcomes.push(property_suite());
    outcomes.push(sufficiency_not_necessity());

    let mut unexpected = 0;
    for o in &outcomes {
        let red_expected = EXPECTED_RED.contains(&o.id);
        let status = if o.pass { "PASS" } else { "FAIL" };
        let tag = match (o.pass, red_expected) {
            (false, true) => " [expected: contradicts closed form]",
            (true, true) => " [expected FAIL now passes: update EXPECTED_RED]",
            _ => "",
        };
        println!("{status} {:<3} {}: {}{tag}", o.id, o.title, o.detail);
        if o.pass == red_expected {
            unexpected += 1;
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("{passed}/{} criteria pass", outcomes.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
