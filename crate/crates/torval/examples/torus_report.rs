//! The full norm-torus evaluation on the shipped quadratic extension
//! Q(zeta_12) / Q(i): unit-norm kernel, torus regulator, both class-number
//! formulas, and the two independent routes to the leading L-value at zero.
//!
//! ```bash
//! cargo run -p torval --example torus_report
//! ```

use torval::fields::builtin;
use torval::torus;

fn main() {
    let ext = builtin::example_extension().unwrap();
    println!(
        "extension {} / {}  (degree {}, sigma = {} mod {})",
        ext.top.label, ext.base.label, ext.galois_order, ext.sigma, ext.top.conductor
    );

    let report = torus::build_report(&ext).unwrap();
    println!("\nkernel of the unit norm map:");
    println!("  structure           = {}", report.kernel_structure);
    for g in &report.free_generators {
        println!("  free generator      = {g}");
    }
    println!("  w_T                 = {}", report.w_t);

    println!("\nclass numbers:");
    println!("  h_T  (cyclic form)  = {}", report.h_t_ono);
    println!("  h_T' (dual torus)   = {}", report.h_t_katayama_dual);

    println!("\nlocal and global orders:");
    println!("  Sha^1               = {}", report.sha1_order);
    println!("  [H^1(K, char grp)]  = {}", report.h1_char_order);
    println!("  prod of e_v         = {}", report.ramification_product);

    println!("\nleading value at s = 0:");
    println!("  R_T                 = {:.15}", report.r_t);
    println!("  arithmetic route    = {:.15}", report.lstar_galois);
    println!("  analytic route      = {:.15}", report.lstar_analytic);
    println!("  discrepancy         = {:.3e}", report.discrepancy);
    println!(
        "  log(2+sqrt(3))/3    = {:.15}",
        (2.0 + 3.0_f64.sqrt()).ln() / 3.0
    );

    println!("\ngolden checks:");
    let checks = torus::verify_example(&ext).unwrap();
    for c in &checks {
        println!(
            "  {} {:<24} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    assert!(checks.iter().all(|c| c.passed));
}
