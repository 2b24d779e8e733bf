//! The seventeen component functions, each evaluated by its power series
//! and by quadrature of its defining integral — the dual-route check the
//! whole crate is built around.
//!
//!     cargo run --release --example component_functions [x]

use vacpol::fseries::{eval_series, FunctionId, Truncation};
use vacpol::quadrature::{eval_integral, QuadratureSpec};
use vacpol::CoefficientCache;

fn main() {
    let x: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0);

    let cache = CoefficientCache::default();
    let trunc = Truncation::default();
    let quad = QuadratureSpec::default();

    println!(
        "{:>4} {:>18} {:>18} {:>10} {:>6}",
        "f", "series", "quadrature", "rel diff", "terms"
    );
    for id in FunctionId::ALL {
        let s = eval_series(id, x, &trunc, &cache).unwrap();
        let q = eval_integral(id, x, &quad).unwrap();
        println!(
            "{:>4} {:>18.12e} {:>18.12e} {:>10.2e} {:>6}",
            id.name(),
            s.value,
            q.value,
            ((s.value - q.value) / q.value).abs(),
            s.terms_used
        );
    }
    println!("\nf02, f03, f01 are K0, K1 and the Bickley integral Ki1;");
    println!("f16 = K0/x and f17 = -(gamma + ln 2 + ln x) K0 / 2 are identity checks.");
}
