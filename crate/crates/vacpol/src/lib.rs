//! Vacuum-polarization potentials of a static point charge.
//!
//! This crate evaluates the two lowest-order radiative corrections to the
//! Coulomb potential: the two-loop correction built from the integral
//! `I(x)` (here called the KS integral) and the one-loop (Uehling)
//! correction. Both are computed from exact power-series expansions in
//! terms of modified Bessel kernels `K0`, `K1`, the Bickley integral
//! `Ki1(x) = ∫_x^∞ K0(y) dy`, and a family of related semi-infinite
//! integrals, with independent double-exponential quadrature of the
//! defining integrals used as a cross-check at every level.
//!
//! The main entry points are:
//!
//! - [`kallen_sabry::iks`] — auto-selecting evaluator of the KS integral
//!   (power series below a configurable switch point, fast single-integral
//!   quadrature above it);
//! - [`kallen_sabry::v_ks`] — the physical potential `V_KS(r)`;
//! - [`uehling::iueh`] / [`uehling::v_uehling`] — the Uehling integral and
//!   potential;
//! - [`fseries::eval_series`] / [`quadrature::eval_integral`] — the
//!   seventeen component functions, each with both a series and an
//!   integral route;
//! - [`cli`] — the machinery behind the bundled `vacpol` binary
//!   (`eval` / `table` / `verify`).
//!
//! Every evaluation returns an [`Evaluation`] carrying the value, an
//! absolute error estimate, the number of series terms or refinement work
//! spent, and a tag naming the method that produced it.
//!
//! Run `cargo run --example potential_profile` (or any of the other
//! examples) for a tour.

pub mod cli;
pub mod eval;
pub mod fseries;
pub mod kahan;
pub mod kallen_sabry;
pub mod quadrature;
pub mod specfun;
pub mod uehling;

pub use eval::{EvalError, Evaluation, Method};
pub use fseries::{FunctionId, LogArg, Truncation};
pub use kallen_sabry::{AsymOrder, MethodPolicy, PhysicalParams};
pub use quadrature::{InnerSeriesSpec, QuadratureSpec};
pub use specfun::CoefficientCache;
