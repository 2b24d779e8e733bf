//! Radial profile of both vacuum-polarization corrections for a chosen
//! nuclear charge, printed in Compton-wavelength and femtometer units.
//!
//!     cargo run --example potential_profile [Z]

use vacpol::kallen_sabry::v_ks;
use vacpol::uehling::v_uehling;
use vacpol::{CoefficientCache, MethodPolicy, PhysicalParams};

fn main() {
    let z: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0);

    let cache = CoefficientCache::default();
    let policy = MethodPolicy::default();
    let params = PhysicalParams {
        z,
        ..PhysicalParams::default()
    };

    println!("vacuum-polarization corrections, Z = {z} (natural units, e = 1)");
    println!(
        "{:>10} {:>10} {:>16} {:>16} {:>9}",
        "r [lam_e]", "r [fm]", "V_Uehling", "V_KS", "ratio"
    );
    let mut r = 0.002_f64;
    while r <= 4.0 {
        let vu = v_uehling(r, &params, &policy, &cache).unwrap();
        let vk = v_ks(r, &params, &policy, &cache).unwrap();
        println!(
            "{:>10.4} {:>10.3} {:>16.6e} {:>16.6e} {:>9.5}",
            r,
            r * params.lambda_e_fm,
            vu.value,
            vk.value,
            vk.value / vu.value
        );
        r *= 2.0;
    }
    println!("\nboth corrections are attractive and die off past r ~ lam_e;");
    println!("the two-loop term stays a fraction of the one-loop one everywhere.");
}
