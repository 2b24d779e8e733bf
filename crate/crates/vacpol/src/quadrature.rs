//! Independent numerical-integration oracle.
//!
//! Every component function has a semi-infinite integral representation in
//! the cosh-substituted variable `w`; this module integrates those
//! directly with a tanh-sinh (double-exponential) rule, entirely
//! independent of the power-series route in [`crate::fseries`]. It also
//! evaluates the fast single-integral form of the KS integral, the
//! original defining double integral (slow, nested, used as a final
//! cross-check), and the Uehling integral.
//!
//! The tanh-sinh transformation tolerates the logarithmic endpoint
//! singularities (`ln sinh w`, `ln coth w`) that several kernels carry at
//! `w = 0`, which is why it is used instead of a Gauss rule.

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use crate::eval::{require_positive, EvalError, Evaluation, Method};
use crate::fseries::FunctionId;
use crate::kahan::KahanSum;

/// Tolerances and refinement limits for the tanh-sinh rule.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Level cap; each level halves the node spacing.
    pub max_refinements: usize,
    /// `W(x)` is the smallest w with `x cosh W >= exp_underflow`, beyond
    /// which the integrand is exactly representable as zero.
    pub exp_underflow: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_refinements: 12,
            exp_underflow: 745.0,
        }
    }
}

impl QuadratureSpec {
    /// Upper cutoff for w-integrals weighted by `exp(-x cosh w)`.
    pub fn w_cutoff(&self, x: f64) -> f64 {
        let ratio = self.exp_underflow / x;
        if ratio <= 1.0 {
            0.0
        } else {
            ratio.acosh()
        }
    }

    fn tightened(&self) -> Self {
        Self {
            abs_tol: self.abs_tol / 10.0,
            rel_tol: self.rel_tol / 10.0,
            ..*self
        }
    }
}

/// Truncation control for the geometric inner sums of the fast KS form.
#[derive(Debug, Clone, Copy)]
pub struct InnerSeriesSpec {
    pub term_tol: f64,
    pub max_k: usize,
}

impl Default for InnerSeriesSpec {
    fn default() -> Self {
        Self {
            term_tol: 1e-18,
            max_k: 400,
        }
    }
}

struct TsOutcome {
    value: f64,
    err: f64,
    evals: usize,
    converged: bool,
    last_delta: f64,
    levels: usize,
}

/// Tanh-sinh quadrature over a finite interval `(a, b)`.
///
/// Open rule: the endpoints themselves are never evaluated, and abscissas
/// near them are formed as offsets from the endpoint so that integrable
/// endpoint singularities are sampled accurately.
fn tanh_sinh<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_levels: usize,
) -> TsOutcome {
    const U_MAX: f64 = 4.0;
    let hw = 0.5 * (b - a);
    if hw <= 0.0 {
        return TsOutcome {
            value: 0.0,
            err: 0.0,
            evals: 0,
            converged: true,
            last_delta: 0.0,
            levels: 0,
        };
    }

    // contribution of the node at parameter u (without the h factor)
    let node = |u: f64| -> (f64, f64) {
        let g = FRAC_PI_2 * u.sinh();
        let cg = g.cosh();
        let dxdu = hw * FRAC_PI_2 * u.cosh() / (cg * cg);
        let x = if g <= 0.0 {
            // 1 + tanh(g) = 2 / (1 + e^{-2g})
            a + hw * (2.0 / (1.0 + (-2.0 * g).exp()))
        } else {
            b - hw * (2.0 / (1.0 + (2.0 * g).exp()))
        };
        (x, dxdu)
    };

    let mut evals = 0usize;
    let mut abs_sum = 0.0_f64;
    let mut eval_at = |u: f64, acc: &mut KahanSum| {
        let (x, dxdu) = node(u);
        if dxdu == 0.0 || x <= a || x >= b {
            return;
        }
        let y = f(x);
        evals += 1;
        if y.is_finite() {
            acc.add(y * dxdu);
            abs_sum += (y * dxdu).abs();
        }
    };

    // level 0: h = 1, nodes at integer u
    let mut h = 1.0_f64;
    let mut sum = KahanSum::new();
    eval_at(0.0, &mut sum);
    let mut k = 1;
    while k as f64 * h <= U_MAX {
        eval_at(k as f64 * h, &mut sum);
        eval_at(-(k as f64) * h, &mut sum);
        k += 1;
    }
    let mut integral = h * sum.value();
    let mut total = sum;
    let mut last_delta = f64::INFINITY;

    for level in 1..=max_levels {
        h *= 0.5;
        let mut new = KahanSum::new();
        let mut k = 1usize;
        while (k as f64) * h <= U_MAX {
            eval_at(k as f64 * h, &mut new);
            eval_at(-(k as f64) * h, &mut new);
            k += 2; // odd multiples only: the new midpoints
        }
        total.add(new.value());
        let refined = h * total.value();
        last_delta = (refined - integral).abs();
        integral = refined;
        // below ~100 eps relative the deltas are rounding noise, not signal
        let tol = abs_tol
            .max(rel_tol * integral.abs())
            .max(100.0 * f64::EPSILON * integral.abs());
        if level >= 3 && last_delta <= tol {
            let floor = 4.0 * f64::EPSILON * h * abs_sum;
            return TsOutcome {
                value: integral,
                err: last_delta.max(floor),
                evals,
                converged: true,
                last_delta,
                levels: level,
            };
        }
    }

    TsOutcome {
        value: integral,
        err: last_delta,
        evals,
        converged: false,
        last_delta,
        levels: max_levels,
    }
}

fn finish(
    out: TsOutcome,
    x: f64,
    extra_evals: usize,
    extra_err: f64,
) -> Result<Evaluation, EvalError> {
    if !out.converged {
        return Err(EvalError::ToleranceNotMet {
            x,
            refinements: out.levels,
            last_delta: out.last_delta,
        });
    }
    Ok(Evaluation::new(
        out.value,
        out.err + extra_err,
        out.evals + extra_evals,
        Method::Quadrature,
    ))
}

/// Kernel of the single-integral representation of each component
/// function: the factor multiplying `exp(-x cosh w)`.
fn kernel(id: FunctionId, w: f64) -> f64 {
    let t = w.tanh();
    match id {
        FunctionId::F01 => 1.0 / w.cosh(),
        FunctionId::F02 => 1.0,
        FunctionId::F03 => w.cosh(),
        FunctionId::F04 => w * t,
        FunctionId::F05 => -t.ln(),
        FunctionId::F06 => -w.cosh() * t.ln(),
        FunctionId::F07 => -t.ln() / w.cosh(),
        FunctionId::F08 => w.cosh() * (w / w.sinh()),
        FunctionId::F09 => w / w.sinh(),
        FunctionId::F16 => w * w.sinh(),
        FunctionId::F17 => w.sinh().ln(),
        _ => unreachable!("kernel only defined for single-integral ids"),
    }
}

/// Numerically integrate the defining representation of `id` at `x`.
///
/// F01-F09, F16, F17 are single w-integrals. For F10-F13 the outer
/// `∫_x^∞ dy/y` layer collapses under the inner exponential:
/// `∫_x^∞ exp(-y cosh w)/y dy = E1(x cosh w)`, so the double integral
/// becomes a single pass with the classical exponential integral as the
/// accelerated inner layer. F14 and F15 reduce to single integrals under
/// `y = x cosh u`.
pub fn eval_integral(
    id: FunctionId,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<Evaluation, EvalError> {
    require_positive("x", x)?;
    let cut = spec.w_cutoff(x);
    let integrand: Box<dyn Fn(f64) -> f64> = match id {
        FunctionId::F10 => Box::new(move |w: f64| exp_integral_e1(x * w.cosh()) / w.cosh()),
        FunctionId::F11 => {
            Box::new(move |w: f64| -w.tanh().ln() * exp_integral_e1(x * w.cosh()))
        }
        FunctionId::F12 => Box::new(move |w: f64| {
            w.cosh() * (w / w.sinh()) * exp_integral_e1(x * w.cosh())
        }),
        FunctionId::F13 => Box::new(move |w: f64| w * w.tanh() * exp_integral_e1(x * w.cosh())),
        FunctionId::F14 => Box::new(move |u: f64| (-x * u.cosh()).exp() * u.tanh()),
        FunctionId::F15 => Box::new(move |u: f64| (-x * u.cosh()).exp() * x * u.sinh()),
        _ => Box::new(move |w: f64| (-x * w.cosh()).exp() * kernel(id, w)),
    };
    let out = tanh_sinh(
        integrand,
        0.0,
        cut,
        spec.abs_tol,
        spec.rel_tol,
        spec.max_refinements,
    );
    finish(out, x, 0, 0.0)
}

/// Exponential integral E1(y) for y > 0, by the classical pair of
/// routes: ascending series below 1.2, modified Lentz continued fraction
/// above. Deliberately self-contained so the F10-F13 oracles stay
/// independent of the series module.
fn exp_integral_e1(y: f64) -> f64 {
    debug_assert!(y > 0.0);
    if y < 1.2 {
        let mut sum = KahanSum::new();
        let mut term = 1.0_f64;
        for k in 1..=60 {
            term *= -y / k as f64;
            let contrib = -term / k as f64;
            sum.add(contrib);
            if contrib.abs() < 1e-18 {
                break;
            }
        }
        -0.577_215_664_901_532_9 - y.ln() + sum.value()
    } else if y > 700.0 {
        0.0
    } else {
        // E1(y) = e^-y / (y + 1 - 1/(y + 3 - 4/(y + 5 - 9/(...))))
        let tiny = 1e-300;
        let mut f = y + 1.0;
        let mut c = f;
        let mut d = 0.0;
        for k in 1..=200u32 {
            let a = -((k * k) as f64);
            let b = y + (2 * k + 1) as f64;
            d = b + a * d;
            if d == 0.0 {
                d = tiny;
            }
            c = b + a / c;
            if c == 0.0 {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-y).exp() / f
    }
}

/// Li2 power series, valid for |z| <= 0.55 where it converges geometrically.
fn li2_series(z: f64, tol: f64, max_k: usize) -> f64 {
    debug_assert!(z.abs() <= 0.55);
    let mut acc = KahanSum::new();
    let mut zk = z;
    for k in 1..=max_k {
        let term = zk / ((k * k) as f64);
        acc.add(term);
        if term.abs() < tol {
            break;
        }
        zk *= z;
    }
    acc.value()
}

/// The pair (Li2(q), Li2(-q)) for q = exp(-2w), w > 0.
///
/// Direct summation is used where the ratio is at most 1/2; nearer the
/// unit circle the reflection and Landen identities map both sums onto
/// arguments at most 1/2, so the term count stays bounded for every node
/// the quadrature rule can produce.
fn dilog_pair(w: f64, spec: &InnerSeriesSpec) -> (f64, f64) {
    let q = (-2.0 * w).exp();
    let s2 = {
        // Landen: Li2(-q) = -Li2(q/(1+q)) - ln^2(1+q)/2
        let z = q / (1.0 + q);
        -li2_series(z, spec.term_tol, spec.max_k) - 0.5 * q.ln_1p().powi(2)
    };
    let s1 = if q <= 0.5 {
        li2_series(q, spec.term_tol, spec.max_k)
    } else {
        // reflection: Li2(q) = pi^2/6 - ln(q) ln(1-q) - Li2(1-q)
        let p = -(-2.0 * w).exp_m1(); // 1 - q, accurately
        PI * PI / 6.0 + 2.0 * w * p.ln() - li2_series(p, spec.term_tol, spec.max_k)
    };
    (s1, s2)
}

/// Bracketed inner-sum factor of the fast single-integral form.
fn fast_bracket(w: f64, spec: &InnerSeriesSpec) -> f64 {
    let (s1, s2) = dilog_pair(w, spec);
    let p = -(-2.0 * w).exp_m1(); // 1 - e^{-2w}
    let q = (-2.0 * w).exp();
    -2.0 * w * p.ln() - w * q.ln_1p() + 2.0 * s1 + s2
}

/// Integrand of the fast single-integral form (the factor multiplying
/// `exp(-x cosh w)`), written so the heavy cancellations at w -> 0 are
/// carried out analytically via tanh^2.
fn fast_kernel(w: f64, inner: &InnerSeriesSpec) -> f64 {
    let ch = w.cosh();
    let sh = w.sinh();
    let sech = 1.0 / ch;
    let s2 = sech * sech;
    let s4 = s2 * s2;
    let t = w.tanh();
    let t2 = t * t;

    // 13/54 - (19/108) sech^2 + (17/108) sech^4 - (2/9) sech^6
    let term_a = t2 * (19.0 / 36.0 + t2 * (-55.0 / 108.0 + t2 * (2.0 / 9.0)));
    let term_b = sech
        * (-44.0 / 9.0 + s2 * (2.0 / 3.0 + s2 * (5.0 / 4.0 + s2 * (2.0 / 9.0))))
        * w
        * sh;
    // 2 - sech^2 - sech^4 = tanh^2 (2 + sech^2), exactly
    let poly2 = t2 * (2.0 + s2);
    let term_c = 2.0 * LN_2 * poly2;
    let term_d = (2.0 / 3.0) * poly2 * (-t.ln());
    let term_e = 2.0 * poly2 * sh.ln();
    let term_f = (2.0 / 3.0) * (sech * (s4 - 4.0)) * sh * fast_bracket(w, inner);

    term_a + term_b + term_c + term_d + term_e + term_f
}

/// Fast convergent single-integral evaluation of the KS integral.
pub fn iks_fast(
    x: f64,
    spec: &QuadratureSpec,
    inner: &InnerSeriesSpec,
) -> Result<Evaluation, EvalError> {
    require_positive("x", x)?;
    let cut = spec.w_cutoff(x);
    let out = tanh_sinh(
        |w| (-x * w.cosh()).exp() * fast_kernel(w, inner),
        0.0,
        cut,
        spec.abs_tol,
        spec.rel_tol,
        spec.max_refinements,
    );
    finish(out, x, 0, 0.0)
}

/// Integrand of the inner y-layer of the defining double integral after
/// `y = cosh u`, written as a difference that stays accurate when both
/// halves grow like 3u.
fn defining_inner_bracket(u: f64) -> f64 {
    if u < 1.0 {
        u * (3.0 / u.tanh() - 2.0 / (2.0 * u).sinh())
            - (3.0 * LN_2 + u.cosh().ln() + 2.0 * u.sinh().ln())
    } else {
        let q = (-2.0 * u).exp();
        let one_minus = -(-2.0 * u).exp_m1();
        u * (6.0 * q / one_minus - 4.0 * q / (1.0 - q * q)) - q.ln_1p() - 2.0 * one_minus.ln()
    }
}

/// Evaluate the original defining double integral by cosh substitution in
/// both layers. Slow but fully independent of the fast form; intended as
/// a cross-check at a handful of points.
pub fn iks_defining(x: f64, spec: &QuadratureSpec) -> Result<Evaluation, EvalError> {
    require_positive("x", x)?;
    let inner_spec = spec.tightened();
    let inner_evals = Cell::new(0usize);
    let inner_bad = Cell::new(false);

    // J(w) = ∫_w^∞ bracket(u) du, substituted u = w + s. The outer
    // integrand suppresses J(w) by exp(-x cosh w), so the inner absolute
    // tolerance is allowed to grow by the same factor; the per-node error
    // budget stays a fixed fraction of the outer absolute tolerance.
    let inner_j = |w: f64| -> f64 {
        const S_MAX: f64 = 27.0;
        let allowance = (x * w.cosh()).min(700.0).exp();
        let out = tanh_sinh(
            |s| defining_inner_bracket(w + s),
            0.0,
            S_MAX,
            spec.abs_tol / 300.0 * allowance,
            inner_spec.rel_tol,
            inner_spec.max_refinements,
        );
        inner_evals.set(inner_evals.get() + out.evals);
        if !out.converged {
            inner_bad.set(true);
        }
        out.value
    };

    let cut = spec.w_cutoff(x);
    let out = tanh_sinh(
        |w| {
            let ch = w.cosh();
            let sh = w.sinh();
            let sech = 1.0 / ch;
            let s2 = sech * sech;
            let s4 = s2 * s2;
            let piece_a = (13.0 / 54.0 + s2 * (7.0 / 108.0 + s2 * (2.0 / 9.0))) * s2 * sh * sh;
            let piece_b =
                sech * (-44.0 / 9.0 + s2 * (2.0 / 3.0 + s2 * (5.0 / 4.0 + s2 * (2.0 / 9.0)))) * w;
            let piece_c = (4.0 / 3.0 + (2.0 / 3.0) * s2) * s2 * sh * sh
                * (8.0_f64.ln() + ch.ln() + 2.0 * sh.ln());
            let piece_d = sech * ((2.0 / 3.0) * s4 - 8.0 / 3.0) * inner_j(w);
            (-x * ch).exp() * (piece_a + piece_b * sh + piece_c + piece_d * sh)
        },
        0.0,
        cut,
        spec.abs_tol,
        spec.rel_tol,
        spec.max_refinements,
    );
    if inner_bad.get() {
        return Err(EvalError::ToleranceNotMet {
            x,
            refinements: spec.max_refinements,
            last_delta: out.last_delta,
        });
    }
    let inner_err = spec.abs_tol / 10.0 + spec.rel_tol / 10.0 * out.value.abs();
    finish(out, x, inner_evals.get(), inner_err)
}

/// Direct quadrature of the Uehling kernel.
pub fn uehling_integral(x: f64, spec: &QuadratureSpec) -> Result<Evaluation, EvalError> {
    require_positive("x", x)?;
    let cut = spec.w_cutoff(x);
    let out = tanh_sinh(
        |w| {
            let sech = 1.0 / w.cosh();
            let s2 = sech * sech;
            let t = w.tanh();
            // 1 - sech^2/2 - sech^4/2 = tanh^2 (2 + sech^2) / 2, exactly
            (-x * w.cosh()).exp() * 0.5 * t * t * (2.0 + s2)
        },
        0.0,
        cut,
        spec.abs_tol,
        spec.rel_tol,
        spec.max_refinements,
    );
    finish(out, x, 0, 0.0)
}
