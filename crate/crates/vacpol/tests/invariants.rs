//! Property-style checks from the module contracts that are not already
//! part of the acceptance criteria.

use std::sync::OnceLock;

use vacpol::fseries::{eval_series, FunctionId, Truncation};
use vacpol::kallen_sabry::{iks, iks_series, v_ks, MethodPolicy, PhysicalParams};
use vacpol::quadrature::{eval_integral, iks_fast, InnerSeriesSpec, QuadratureSpec};
use vacpol::specfun::CoefficientCache;
use vacpol::uehling::{iueh_closed, iueh_small};

fn cache() -> &'static CoefficientCache {
    static CACHE: OnceLock<CoefficientCache> = OnceLock::new();
    CACHE.get_or_init(CoefficientCache::default)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Halving both tolerances moves the fast-integral result by less than
/// the error it reported, i.e. the estimate is not optimistic.
#[test]
fn fast_integral_error_estimate_is_conservative() {
    let inner = InnerSeriesSpec::default();
    for &x in &[0.1_f64, 1.0, 4.0, 7.0] {
        let spec = QuadratureSpec::default();
        let tight = QuadratureSpec {
            abs_tol: spec.abs_tol / 2.0,
            rel_tol: spec.rel_tol / 2.0,
            ..spec
        };
        let base = iks_fast(x, &spec, &inner).unwrap();
        let refined = iks_fast(x, &tight, &inner).unwrap();
        assert!(
            (base.value - refined.value).abs() <= base.err_est,
            "x={x}: shift {:.2e} vs err_est {:.2e}",
            (base.value - refined.value).abs(),
            base.err_est
        );
    }
}

/// Doubling the inner-series cap does not move the fast integral.
#[test]
fn fast_integral_inner_series_is_converged() {
    let spec = QuadratureSpec::default();
    let inner = InnerSeriesSpec::default();
    let doubled = InnerSeriesSpec {
        max_k: inner.max_k * 2,
        ..inner
    };
    let a = iks_fast(1.0, &spec, &inner).unwrap();
    let b = iks_fast(1.0, &spec, &doubled).unwrap();
    assert!(rel(a.value, b.value) < 1e-13);
}

/// The KS integral is negative and strictly increasing over the whole
/// tabulated range.
#[test]
fn iks_sign_and_monotonicity() {
    let policy = MethodPolicy::default();
    let mut grid: Vec<f64> = Vec::new();
    let mut x = 1e-5;
    while x < 9.0 {
        grid.push(x);
        x *= 1.35;
    }
    let mut x = 0.05;
    while x <= 9.0 {
        grid.push(x);
        x += 0.05;
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut prev: Option<(f64, f64)> = None;
    for &x in &grid {
        let v = iks(x, &policy, cache()).unwrap().value;
        assert!(v < 0.0, "I({x}) = {v} must be negative");
        if let Some((px, pv)) = prev {
            assert!(v > pv, "I({x}) = {v} not above I({px}) = {pv}");
        }
        prev = Some((x, v));
    }
}

/// Series and fast-integral routes agree within their combined error
/// estimates.
#[test]
fn series_and_fast_integral_agree_within_estimates() {
    let trunc = Truncation::default();
    let spec = QuadratureSpec::default();
    let inner = InnerSeriesSpec::default();
    for &x in &[0.1_f64, 0.5, 1.0, 2.0, 4.0] {
        let s = iks_series(x, &trunc, cache()).unwrap();
        let q = iks_fast(x, &spec, &inner).unwrap();
        assert!(
            (s.value - q.value).abs() <= s.err_est + q.err_est,
            "x={x}: diff {:.2e} vs combined err {:.2e}",
            (s.value - q.value).abs(),
            s.err_est + q.err_est
        );
    }
}

/// Small-argument behavior of the kernel-like functions against
/// quadrature of their defining integrals.
#[test]
fn small_argument_limits_match_quadrature() {
    let trunc = Truncation::default();
    let quad = QuadratureSpec::default();
    let x = 1e-3;
    for id in [
        FunctionId::F04,
        FunctionId::F05,
        FunctionId::F06,
        FunctionId::F08,
    ] {
        let s = eval_series(id, x, &trunc, cache()).unwrap();
        let q = eval_integral(id, x, &quad).unwrap();
        assert!(
            rel(s.value, q.value) < 1e-5,
            "{} at x={x}: series {} vs quadrature {}",
            id.name(),
            s.value,
            q.value
        );
    }
    // and the advertised limiting constants
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let f05 = eval_series(FunctionId::F05, x, &trunc, cache()).unwrap().value;
    assert!((f05 - pi2 / 8.0).abs() < 5e-3);
    let f09 = eval_series(FunctionId::F09, x, &trunc, cache()).unwrap().value;
    assert!((f09 - pi2 / 4.0).abs() < 5e-2);
}

/// Truncation-order scaling of the small-x Uehling form: the remainder
/// falls as x^14 (up to log factors), checked where the difference is
/// comfortably above rounding (at x = 0.1 the remainder is ~1e-26, far
/// below f64 resolution, so the ratio is probed at x = 1 and 2).
#[test]
fn uehling_small_x_truncation_order() {
    let trunc = Truncation::default();
    let d = |x: f64| {
        let closed = iueh_closed(x, &trunc, cache()).unwrap().value;
        let small = iueh_small(x).unwrap().value;
        (small - closed).abs()
    };
    let ratio = d(2.0) / d(1.0);
    let expected = 2f64.powi(14);
    assert!(
        ratio > expected / 3.0 && ratio < expected * 3.0,
        "remainder ratio {ratio:.1} not within 3x of 2^14 = {expected}"
    );
}

/// Composition of the potential with the tabulated integral value at a
/// second radius (the doubled-argument convention).
#[test]
fn v_ks_composition_small_radius() {
    let policy = MethodPolicy::default();
    let params = PhysicalParams::default();
    let v = v_ks(0.005, &params, &policy, cache()).unwrap();
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let expected = params.alpha.powi(3) / (pi2 * 0.005) * (-10.4169006068);
    assert!(rel(v.value, expected) < 1e-8, "got {}, expected {expected}", v.value);
}

/// Evaluations are pure: concurrent use of one shared cache reproduces
/// the serial results bit for bit.
#[test]
fn concurrent_evaluation_is_deterministic() {
    let policy = MethodPolicy::default();
    let xs: Vec<f64> = (1..=32).map(|i| i as f64 * 0.25).collect();
    let serial: Vec<f64> = xs
        .iter()
        .map(|&x| iks(x, &policy, cache()).unwrap().value)
        .collect();
    let threaded: Vec<f64> = std::thread::scope(|scope| {
        let handles: Vec<_> = xs
            .iter()
            .map(|&x| scope.spawn(move || iks(x, &policy, cache()).unwrap().value))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(serial, threaded);
}
