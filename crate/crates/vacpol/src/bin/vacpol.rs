//! Command-line front end: `eval`, `table`, `verify`.
//!
//! Exit codes: 0 success, 1 verification failure or I/O error, 2 domain
//! error, 3 non-convergence / tolerance not met.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use vacpol::cli::{self, Options, Quantity};
use vacpol::{CoefficientCache, EvalError};

#[derive(Parser)]
#[command(
    name = "vacpol",
    version,
    about = "Vacuum-polarization potentials: point evaluation, tables, and reference verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Relative tolerance for series truncation and quadrature
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Series term cap
    #[arg(long, global = true)]
    max_terms: Option<usize>,

    /// Series/quadrature switch point for the KS integral
    #[arg(long, global = true)]
    switch_x: Option<f64>,

    /// Fine-structure constant override
    #[arg(long, global = true)]
    alpha: Option<f64>,

    /// Nuclear charge number Z
    #[arg(long, global = true)]
    charge_z: Option<f64>,

    /// Interpret radii in femtometers instead of reduced Compton wavelengths
    #[arg(long, global = true)]
    fm: bool,

    /// Output format for eval/table
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write table output to a file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Drop failing rows from tables instead of aborting
    #[arg(long, global = true)]
    skip_errors: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    /// Every bundled reference row against the auto-selecting evaluator
    PaperTable,
    /// Series vs quadrature routes plus the published error profiles
    CrossMethod,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one quantity at one point
    Eval {
        /// iks | vks | iueh | vueh
        quantity: Quantity,
        /// x (integrals) or r (potentials), must be positive
        point: f64,
    },
    /// Generate a table over a range or an explicit abscissa list
    Table {
        /// iks | vks | iueh | vueh
        quantity: Quantity,
        /// Lowest abscissa
        x_min: Option<f64>,
        /// Highest abscissa
        x_max: Option<f64>,
        /// Number of rows
        steps: Option<usize>,
        /// Comma-separated abscissas, instead of a range
        #[arg(long)]
        points: Option<String>,
    },
    /// Check the library against its bundled reference data
    Verify {
        #[arg(value_enum, default_value = "paper-table")]
        target: VerifyTarget,
    },
}

fn build_options(cli: &Cli) -> Options {
    let mut opts = Options::default();
    if let Some(tol) = cli.tol {
        opts.policy.trunc.rel_tol = tol;
        opts.policy.quad.rel_tol = tol;
        opts.policy.quad.abs_tol = tol / 10.0;
    }
    if let Some(n) = cli.max_terms {
        opts.policy.trunc.max_terms = n;
    }
    if let Some(sx) = cli.switch_x {
        opts.policy.x_series_max = sx;
    }
    if let Some(a) = cli.alpha {
        opts.params.alpha = a;
    }
    if let Some(z) = cli.charge_z {
        opts.params.z = z;
    }
    opts.r_in_fm = cli.fm;
    opts
}

fn exit_code_for(err: &EvalError) -> ExitCode {
    match err {
        EvalError::Domain(_) => ExitCode::from(2),
        EvalError::NonConvergent { .. } | EvalError::ToleranceNotMet { .. } => ExitCode::from(3),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), std::io::Error> {
    match output {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = build_options(&cli);
    let cache = CoefficientCache::default();

    match &cli.cmd {
        Cmd::Eval { quantity, point } => {
            let row = match cli::evaluate(*quantity, *point, &opts, &cache) {
                Ok(row) => row,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_code_for(&e);
                }
            };
            let text = match cli.format {
                Some(Format::Csv) => cli::render_csv(*quantity, std::slice::from_ref(&row)),
                Some(Format::Json) => cli::render_json(std::slice::from_ref(&row)),
                None => format!(
                    "{}={} value={:.12e} err_est={:.3e} method={}\n",
                    quantity.abscissa_key(),
                    point,
                    row.value,
                    row.err_est,
                    row.method
                ),
            };
            if emit(&text, cli.output.as_ref()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Cmd::Table {
            quantity,
            x_min,
            x_max,
            steps,
            points,
        } => {
            let abscissas: Vec<f64> = if let Some(list) = points {
                match list
                    .split(',')
                    .map(|s| s.trim().parse::<f64>())
                    .collect::<Result<Vec<_>, _>>()
                {
                    Ok(v) => v,
                    Err(e) => {
                        eprintln!("error: bad point list: {e}");
                        return ExitCode::from(2);
                    }
                }
            } else {
                match (x_min, x_max, steps) {
                    (Some(lo), Some(hi), Some(n)) if *lo > 0.0 && lo <= hi && *n >= 1 => {
                        cli::linspace(*lo, *hi, *n)
                    }
                    _ => {
                        eprintln!(
                            "error: table needs x_min x_max steps (0 < x_min <= x_max, steps >= 1) or --points"
                        );
                        return ExitCode::from(2);
                    }
                }
            };
            let (rows, skipped) =
                match cli::table_rows(*quantity, &abscissas, &opts, &cache, cli.skip_errors) {
                    Ok(ok) => ok,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return exit_code_for(&e.source);
                    }
                };
            for s in &skipped {
                eprintln!("warning: skipped {s}");
            }
            let text = match cli.format {
                Some(Format::Json) => cli::render_json(&rows),
                _ => cli::render_csv(*quantity, &rows),
            };
            if emit(&text, cli.output.as_ref()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Cmd::Verify { target } => {
            let report = match target {
                VerifyTarget::PaperTable => cli::verify_paper_table(&opts, &cache, cli.tol),
                VerifyTarget::CrossMethod => cli::verify_cross_method(&opts, &cache),
            };
            print!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
