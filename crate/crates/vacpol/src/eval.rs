//! Evaluation results and the shared error type.

use thiserror::Error;

/// How a value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Power-series evaluation.
    Series,
    /// Numerical integration of a defining integral.
    Quadrature,
    /// Small-argument polynomial approximation.
    SmallX,
    /// Large-argument asymptotic formula.
    Asymptotic,
    /// Closed form assembled from previously validated kernels.
    Closed,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Quadrature => "quadrature",
            Method::SmallX => "small-x",
            Method::Asymptotic => "asymptotic",
            Method::Closed => "closed",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed value with an absolute error estimate and work counters.
///
/// `err_est` is a conservative bound: truncation remainders per series
/// group (scaled by the log-factor weights) plus an `eps * Σ|terms|`
/// rounding floor, or the last refinement delta for quadrature.
#[derive(Debug, Clone, Copy)]
pub struct Evaluation {
    pub value: f64,
    pub err_est: f64,
    /// Series terms consumed, or integrand evaluations for quadrature.
    pub terms_used: usize,
    pub method: Method,
}

impl Evaluation {
    pub fn new(value: f64, err_est: f64, terms_used: usize, method: Method) -> Self {
        Self {
            value,
            err_est,
            terms_used,
            method,
        }
    }

    /// Apply an exact scale factor, e.g. a polynomial prefactor.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            err_est: self.err_est * factor.abs(),
            ..self
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge within {max_terms} terms (x = {x})")]
    NonConvergent { x: f64, max_terms: usize },
    #[error("quadrature tolerance not met after {refinements} refinements (x = {x}, last delta {last_delta:.3e})")]
    ToleranceNotMet {
        x: f64,
        refinements: usize,
        last_delta: f64,
    },
}

impl EvalError {
    pub fn domain(msg: impl Into<String>) -> Self {
        EvalError::Domain(msg.into())
    }
}

/// Guard shared by every evaluator that requires a strictly positive,
/// finite argument.
pub fn require_positive(name: &str, x: f64) -> Result<(), EvalError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(EvalError::domain(format!(
            "{name} must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_arguments() {
        assert!(require_positive("x", 0.0).is_err());
        assert!(require_positive("x", -1.0).is_err());
        assert!(require_positive("x", f64::NAN).is_err());
        assert!(require_positive("x", f64::INFINITY).is_err());
        assert!(require_positive("x", 1e-300).is_ok());
    }

    #[test]
    fn scaling_tracks_error_magnitude() {
        let e = Evaluation::new(2.0, 1e-12, 10, Method::Series).scaled(-3.0);
        assert_eq!(e.value, -6.0);
        assert_eq!(e.err_est, 3e-12);
    }
}
