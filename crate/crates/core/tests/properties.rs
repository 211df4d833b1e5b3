use extropy_core::measures;
use extropy_core::quadrature::{integrate, integrate_piecewise};
use extropy_core::{Distribution, EvalOptions, QuadratureConfig};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Distribution> {
    prop_oneof![
        (0.1f64..10.0).prop_map(|r| Distribution::exponential(r).unwrap()),
        (0.1f64..10.0).prop_map(|b| Distribution::uniform(b).unwrap()),
        (0.2f64..5.0).prop_map(|a| Distribution::power(a).unwrap()),
        (0.5f64..5.0, 0.1f64..5.0).prop_map(|(th, x0)| Distribution::pareto(th, x0).unwrap()),
        (0.5f64..5.0, 0.1f64..5.0).prop_map(|(k, r)| Distribution::weibull2(k, r).unwrap()),
    ]
}

/// Families with a closed-form extropy.
fn closed_form_family() -> impl Strategy<Value = Distribution> {
    prop_oneof![
        (0.1f64..10.0).prop_map(|r| Distribution::exponential(r).unwrap()),
        (0.1f64..10.0).prop_map(|b| Distribution::uniform(b).unwrap()),
        (0.55f64..5.0).prop_map(|a| Distribution::power(a).unwrap()),
        (0.5f64..5.0, 0.1f64..5.0).prop_map(|(th, x0)| Distribution::pareto(th, x0).unwrap()),
    ]
}

/// Families whose squared density is integrable.
fn square_integrable() -> impl Strategy<Value = Distribution> {
    family().prop_filter("power law needs alpha > 1/2", |d| match d.family() {
        extropy_core::Family::Power { alpha } => *alpha > 0.55,
        extropy_core::Family::Weibull2 { shape, .. } => *shape > 0.55,
        _ => true,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cdf_is_monotone(d in family()) {
        let lo = d.support().lower;
        let hi = if d.support().is_bounded() { d.support().upper } else { d.quantile(0.999_999).unwrap() };
        let mut prev = d.cdf(lo);
        for k in 1..=1000 {
            let x = lo + (hi - lo) * k as f64 / 1000.0;
            let f = d.cdf(x);
            prop_assert!(f >= prev, "cdf drops at {}", x);
            prev = f;
        }
    }

    #[test]
    fn density_integrates_to_one(d in family()) {
        let s = d.support();
        let r = integrate(|x| d.pdf(x), s.lower, s.upper, &QuadratureConfig::default()).unwrap();
        prop_assert!((r.value - 1.0).abs() <= 1e-8, "mass {}", r.value);
    }

    #[test]
    fn quantile_inverts_cdf(d in family(), u in 0.01f64..0.99) {
        let x = d.quantile(u).unwrap();
        let back = d.quantile(d.cdf(x)).unwrap();
        prop_assert!((back - x).abs() <= 1e-8 * x.abs().max(1.0), "{} vs {}", back, x);
    }

    #[test]
    fn rate_times_cdf_is_density(d in family(), u in 0.001f64..0.999) {
        let t = d.quantile(u).unwrap();
        let tau = d.reversed_failure_rate(t).unwrap();
        let f = d.pdf(t);
        prop_assert!((tau * d.cdf(t) - f).abs() <= 4.0 * f64::EPSILON * f.abs());
    }

    #[test]
    fn extropy_measures_are_nonpositive_and_decompose(d in square_integrable(), u in 0.05f64..0.95) {
        let opts = EvalOptions::default();
        let t = d.quantile(u).unwrap();
        let past = measures::past_extropy(&d, t, &opts).unwrap().value;
        let residual = measures::residual_extropy(&d, t, &opts).unwrap().value;
        prop_assert!(past <= 0.0 && residual <= 0.0);
        let (lhs, rhs) = measures::decomposition_residual(&d, t, &opts).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-8, "{} vs {}", lhs, rhs);
        let via_tau = measures::past_extropy_via_tau(&d, t, &opts).unwrap().value;
        prop_assert!((via_tau - past).abs() <= 1e-10 * past.abs().max(1.0));
    }

    #[test]
    fn quadrature_matches_closed_form_extropy(d in closed_form_family()) {
        let closed = measures::extropy(&d, &EvalOptions::default()).unwrap();
        prop_assert_eq!(closed.method, extropy_core::Method::ClosedForm);
        let quad = measures::extropy(&d, &EvalOptions::default().forcing_quadrature()).unwrap();
        let cfg = QuadratureConfig::default();
        prop_assert!(((quad.value - closed.value) / closed.value).abs() <= 10.0 * cfg.rel_tol);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn quadrature_is_linear(c in -50.0f64..50.0, k in 0.2f64..5.0, a in 0.0f64..2.0) {
        let cfg = QuadratureConfig::default();
        let f = |x: f64| (-k * x).exp() * (1.0 + x * x).ln();
        let base = integrate(f, a, f64::INFINITY, &cfg).unwrap();
        let scaled = integrate(|x| c * f(x), a, f64::INFINITY, &cfg).unwrap();
        let tol = cfg.abs_tol.max(cfg.rel_tol * (c * base.value).abs()) * 10.0;
        prop_assert!((scaled.value - c * base.value).abs() <= tol);
    }

    #[test]
    fn quadrature_is_additive(split in 0.01f64..0.99, k in 0.5f64..4.0) {
        let cfg = QuadratureConfig::default();
        let f = |x: f64| x.powf(k - 1.0) * (-x).exp();
        let whole = integrate(f, 0.0, 3.0, &cfg).unwrap();
        let c = 3.0 * split;
        let parts = integrate_piecewise(f, &[0.0, c, 3.0], &cfg).unwrap();
        let tol = whole.error_estimate + parts.error_estimate + 10.0 * cfg.rel_tol * whole.value.abs();
        prop_assert!((whole.value - parts.value).abs() <= tol);
    }
}
