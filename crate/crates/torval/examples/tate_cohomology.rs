//! Tate cohomology of cyclic actions: the unit group of Q(zeta_12) under its
//! quadratic Galois action, the roots of unity as a submodule, and the
//! Herbrand quotient on finite modules.
//!
//! ```bash
//! cargo run -p torval --example tate_cohomology
//! ```

use rand::rngs::StdRng;
use rand::SeedableRng;

use torval::fields::builtin;
use torval::randgen::random_cyclic_module;
use torval::tate::herbrand_quotient;

fn main() {
    let ext = builtin::example_extension().unwrap();

    let units = ext.unit_module().unwrap();
    println!("O_L^* as a lattice: {}", units.module());
    println!("sigma on generators: {:?}", units.sigma().matrix());
    println!(
        "norm = 1 + sigma:    {:?}",
        units.norm_endomorphism().matrix()
    );
    println!("  H^0  (fixed / norms)          = {}", units.tate_h0());
    println!(
        "  H^-1 (norm kernel / twists)   = {}",
        units.tate_h_minus1()
    );
    println!(
        "  Herbrand quotient             = {}",
        herbrand_quotient(&units).unwrap()
    );

    let mu = ext.mu_module().unwrap();
    println!("\nroots of unity mu_L = {}:", mu.module());
    println!("  H^0                           = {}", mu.tate_h0());
    println!("  H^-1                          = {}", mu.tate_h_minus1());

    // on finite modules the Herbrand quotient collapses to 1
    println!("\nrandom finite modules:");
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..5 {
        let cm = random_cyclic_module(&mut rng, 200, 6);
        println!(
            "  module {:<24} order {}  ->  H^0 = {:<8} H^-1 = {:<8} quotient = {}",
            cm.module().to_string(),
            cm.order(),
            cm.tate_h0().to_string(),
            cm.tate_h_minus1().to_string(),
            herbrand_quotient(&cm).unwrap()
        );
    }
}
