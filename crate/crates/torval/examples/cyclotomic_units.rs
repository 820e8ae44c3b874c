//! Exact arithmetic with cyclotomic units: the generators of the unit group
//! of Q(zeta_12), their relative norms down to Q(i), and the log embeddings
//! that produce regulators.
//!
//! ```bash
//! cargo run -p torval --example cyclotomic_units
//! ```

use torval::cyclo::CycloElement;
use torval::fields::{builtin, regulator_of_field};

fn main() {
    let zeta = CycloElement::zeta_pow(12, 1);
    let one = CycloElement::one(12);
    let u = one.sub(&zeta.power(5).unwrap()).unwrap(); // 1 - zeta^5

    println!("zeta            = {zeta}");
    println!("u = 1 - zeta^5  = {u}");
    println!(
        "zeta * u^2      = {}   (this is 2 + sqrt(3))",
        zeta.multiply(&u.power(2).unwrap()).unwrap()
    );
    println!("u^-1            = {}", u.inverse().unwrap());

    // relative norms to Q(i), the subfield fixed by zeta -> zeta^5
    println!("\nnorms to Q(i):");
    println!(
        "  N(zeta)       = {}",
        zeta.norm_to_quadratic_subfield(5).unwrap()
    );
    println!(
        "  N(u)          = {}   (a fourth root of unity)",
        u.norm_to_quadratic_subfield(5).unwrap()
    );

    // archimedean data
    println!("\nlog |.|^2 at the two places of Q(zeta_12):");
    for k in [1u32, 5] {
        println!(
            "  place k = {k}: log|u|^2 = {:+.15}",
            u.log_abs_at_place(k).unwrap()
        );
    }
    let total = u.log_abs_at_place(1).unwrap() + u.log_abs_at_place(5).unwrap();
    println!("  sum over all places = {total:+.3e}   (product formula)");

    // the same data assembled into field regulators
    let k = builtin::gaussian_field().unwrap();
    let l = builtin::cyclotomic12_field().unwrap();
    println!("\nregulators recomputed from the shipped records:");
    println!(
        "  R_K for {} = {}",
        k.label,
        regulator_of_field(&k).unwrap()
    );
    println!(
        "  R_L for {} = {}",
        l.label,
        regulator_of_field(&l).unwrap()
    );
    println!("  log(2 + sqrt(3))  = {}", (2.0 + 3.0_f64.sqrt()).ln());
}
