//! The Uehling integral and potential.
//!
//! The closed form combines the same three kernels the KS stack uses
//! (`K0`, `K1`, `∫_x^∞ K0`), so one oracle campaign validates both. The
//! closed form is numerically benign for all x of interest; mild
//! cancellation appears only past x ≈ 10, where the direct quadrature of
//! the defining integral takes over at a fixed threshold.

use crate::eval::{require_positive, EvalError, Evaluation, Method};
use crate::fseries::{eval_series_groups, FunctionId, LogArg, Truncation};
use crate::kallen_sabry::{MethodPolicy, PhysicalParams};
use crate::quadrature;
use crate::specfun::CoefficientCache;

use std::f64::consts::PI;

/// Above this the closed form gives way to direct quadrature.
pub const X_CLOSED_MAX: f64 = 10.0;

/// The three kernels of the closed form, evaluated at the same point with
/// the same truncation settings and a shared log factor.
#[derive(Debug, Clone, Copy)]
pub struct UehlingKernelSet {
    pub k0: Evaluation,
    pub k1: Evaluation,
    pub ik0: Evaluation,
}

/// Evaluate K0, K1 and the Bickley integral at `x`.
pub fn kernels(
    x: f64,
    trunc: &Truncation,
    cache: &CoefficientCache,
) -> Result<UehlingKernelSet, EvalError> {
    require_positive("x", x)?;
    let log = LogArg::new(x);
    let eval_one = |id: FunctionId| -> Result<Evaluation, EvalError> {
        let groups = eval_series_groups(id, x, trunc, cache)?;
        let (value, err) = groups.combine(log);
        Ok(Evaluation::new(value, err, groups.terms_used, Method::Series))
    };
    Ok(UehlingKernelSet {
        k0: eval_one(FunctionId::F02)?,
        k1: eval_one(FunctionId::F03)?,
        ik0: eval_one(FunctionId::F01)?,
    })
}

/// Closed-form Uehling integral:
/// `(12 + x^2)/12 * K0 - x(10 + x^2)/12 * K1 + x(9 + x^2)/12 * ∫_x^∞ K0`.
pub fn iueh_closed(
    x: f64,
    trunc: &Truncation,
    cache: &CoefficientCache,
) -> Result<Evaluation, EvalError> {
    let set = kernels(x, trunc, cache)?;
    let x2 = x * x;
    let w0 = (12.0 + x2) / 12.0;
    let w1 = -x * (10.0 + x2) / 12.0;
    let w2 = x * (9.0 + x2) / 12.0;
    let value = w0 * set.k0.value + w1 * set.k1.value + w2 * set.ik0.value;
    let err = w0.abs() * set.k0.err_est
        + w1.abs() * set.k1.err_est
        + w2.abs() * set.ik0.err_est
        + 2.0 * f64::EPSILON
            * ((w0 * set.k0.value).abs() + (w1 * set.k1.value).abs() + (w2 * set.ik0.value).abs());
    let terms = set.k0.terms_used.max(set.k1.terms_used).max(set.ik0.terms_used);
    Ok(Evaluation::new(value, err, terms, Method::Closed))
}

/// Small-argument expansion of the Uehling integral through `x^12`.
pub fn iueh_small(x: f64) -> Result<Evaluation, EvalError> {
    require_positive("x", x)?;
    let l = LogArg::new(x).value;
    let x2 = x * x;
    let even: [f64; 7] = [
        -5.0 / 6.0 - l,
        -3.0 / 8.0,
        -7.0 / 192.0 + l / 64.0,
        -127.0 / 345600.0 + l / 5760.0,
        -949.0 / 240844800.0 + l / 573440.0,
        -6079.0 / 195084288000.0 + l / 77414400.0,
        -5053.0 / 27748152115200.0 + l / 14014218240.0,
    ];
    let mut even_part = 0.0_f64;
    for &c in even.iter().rev() {
        even_part = even_part * x2 + c;
    }
    let odd = 3.0 * PI / 8.0 * x + PI / 24.0 * x * x2;
    let last = even[6] * x2.powi(6);
    Ok(Evaluation::new(
        even_part + odd,
        last.abs() * x2,
        7,
        Method::SmallX,
    ))
}

/// Dispatching evaluator: closed form below [`X_CLOSED_MAX`], direct
/// quadrature of the defining integral above it.
pub fn iueh(
    x: f64,
    policy: &MethodPolicy,
    cache: &CoefficientCache,
) -> Result<Evaluation, EvalError> {
    require_positive("x", x)?;
    if x < X_CLOSED_MAX {
        iueh_closed(x, &policy.trunc, cache)
    } else {
        quadrature::uehling_integral(x, &policy.quad)
    }
}

/// `V_Uehling(r) = -(2/3) alpha (Z alpha) / (pi r) * I(2r)`; note the sign
/// and the doubled argument. `r` in reduced Compton wavelengths.
pub fn v_uehling(
    r: f64,
    params: &PhysicalParams,
    policy: &MethodPolicy,
    cache: &CoefficientCache,
) -> Result<Evaluation, EvalError> {
    require_positive("r", r)?;
    let integral = iueh(2.0 * r, policy, cache)?;
    let scale = -(2.0 / 3.0) * params.alpha * params.alpha * params.z / (PI * r);
    Ok(integral.scaled(scale))
}
