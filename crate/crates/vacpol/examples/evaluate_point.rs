//! Minimal entry point: evaluate the KS integral and both potentials at
//! one point and inspect the returned diagnostics.
//!
//!     cargo run --example evaluate_point [x]

use vacpol::kallen_sabry::{iks, v_ks};
use vacpol::uehling::v_uehling;
use vacpol::{CoefficientCache, MethodPolicy, PhysicalParams};

fn main() {
    let x: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0);

    let cache = CoefficientCache::default();
    let policy = MethodPolicy::default();
    let params = PhysicalParams::default();

    let integral = iks(x, &policy, &cache).expect("x must be positive");
    println!(
        "I({x}) = {:.12e}   (err <= {:.1e}, {} terms, method: {})",
        integral.value, integral.err_est, integral.terms_used, integral.method
    );

    // potentials take the radius in reduced Compton wavelengths and
    // evaluate the integral at the doubled argument internally
    let r = x / 2.0;
    let vks = v_ks(r, &params, &policy, &cache).unwrap();
    let vueh = v_uehling(r, &params, &policy, &cache).unwrap();
    println!("V_KS(r = {r})      = {:.12e}  ({})", vks.value, vks.method);
    println!("V_Uehling(r = {r}) = {:.12e}  ({})", vueh.value, vueh.method);
    println!(
        "ratio V_KS / V_Uehling = {:.6e}  (one extra power of alpha/pi)",
        vks.value / vueh.value
    );
}
