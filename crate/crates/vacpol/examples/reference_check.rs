//! Programmatic version of `vacpol verify`: the bundled reference table
//! and the cross-method checks, with a summary instead of per-row lines.
//!
//!     cargo run --release --example reference_check

use vacpol::cli::{verify_cross_method, verify_paper_table, Options};
use vacpol::CoefficientCache;

fn main() {
    let cache = CoefficientCache::default();
    let opts = Options::default();

    let table = verify_paper_table(&opts, &cache, None);
    let failed = table.failures().count();
    println!(
        "reference table: {}/{} rows pass{}",
        table.checks.len() - failed,
        table.checks.len(),
        if table.passed() { "" } else { " (FAILURES BELOW)" }
    );
    for line in table.checks.iter().filter(|c| c.label.contains('[')) {
        println!("  note: {} (deviation {:.2e})", line.label, line.deviation);
    }
    for line in table.failures() {
        println!("  FAIL {} deviation {:.3e} limit {:.1e}", line.label, line.deviation, line.limit);
    }
    if let Some(worst) = table.worst() {
        println!(
            "  worst margin: {} at {:.3e} of limit {:.1e}",
            worst.label, worst.deviation, worst.limit
        );
    }

    println!("\ncross-method checks:");
    let cross = verify_cross_method(&opts, &cache);
    print!("{cross}");

    std::process::exit(if table.passed() && cross.passed() { 0 } else { 1 });
}
