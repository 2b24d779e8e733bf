//! The three faces of the Uehling integral: closed form in Bessel
//! kernels, direct quadrature of the defining integral, and the small-x
//! polynomial.
//!
//!     cargo run --example uehling_forms

use vacpol::fseries::Truncation;
use vacpol::quadrature::{uehling_integral, QuadratureSpec};
use vacpol::uehling::{iueh_closed, iueh_small};
use vacpol::CoefficientCache;

fn main() {
    let cache = CoefficientCache::default();
    let trunc = Truncation::default();
    let quad = QuadratureSpec::default();

    println!(
        "{:>6} {:>17} {:>13} {:>13}",
        "x", "closed form", "vs integral", "vs small-x"
    );
    for &x in &[0.01_f64, 0.05, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let closed = iueh_closed(x, &trunc, &cache).unwrap();
        let integral = uehling_integral(x, &quad).unwrap();
        let small = iueh_small(x).unwrap();
        println!(
            "{:>6} {:>17.10e} {:>13.2e} {:>13.2e}",
            x,
            closed.value,
            ((integral.value - closed.value) / closed.value).abs(),
            ((small.value - closed.value) / closed.value).abs()
        );
    }
    println!("\nthe closed form and the defining integral agree everywhere;");
    println!("the small-x truncation drifts in as its x^14 remainder grows.");
}
