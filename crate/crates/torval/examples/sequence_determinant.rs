//! The determinant of an exact sequence, computed two independent ways:
//! geometrically on the realified sequence, and as the alternating product
//! of torsion orders. The two agree exactly, which is the workhorse identity
//! behind every value computation in this crate.
//!
//! ```bash
//! cargo run -p torval --example sequence_determinant
//! ```

use rand::rngs::StdRng;
use rand::SeedableRng;

use torval::abelian::{FgGroup, GroupMap};
use torval::mat::IntegerMatrix;
use torval::randgen::random_exact_fg_sequence;
use torval::seqdet::{check_det_tor, nu, split_at, FgSequence};

fn main() {
    // 0 -> Z -x2-> Z -> Z/2 -> 0
    let z = FgGroup::free(1);
    let z2 = FgGroup::cyclic(2);
    let mul2 = GroupMap::new(z.clone(), z.clone(), IntegerMatrix::from_i64(&[&[2]])).unwrap();
    let proj = GroupMap::new(z.clone(), z2.clone(), IntegerMatrix::from_i64(&[&[1]])).unwrap();
    let seq = FgSequence::new(vec![z.clone(), z, z2], vec![mul2, proj]).unwrap();

    let report = check_det_tor(&seq).unwrap();
    println!("0 -> Z -x2-> Z -> Z/2 -> 0");
    println!("  nu (geometric)        = {}", report.nu_geometric);
    println!("  alternating torsion   = {}", report.nu_torsion);
    println!("  equal                 = {}", report.equal);

    // a random exact sequence: same story
    let mut rng = StdRng::seed_from_u64(2024);
    let seq = random_exact_fg_sequence(&mut rng, 5, 7).unwrap();
    let names: Vec<String> = seq.groups().iter().map(ToString::to_string).collect();
    let report = check_det_tor(&seq).unwrap();
    println!("\n0 -> {} -> 0", names.join(" -> "));
    println!("  nu (geometric)        = {}", report.nu_geometric);
    println!("  alternating torsion   = {}", report.nu_torsion);
    println!("  equal                 = {}", report.equal);

    // splitting the realified sequence anywhere recomposes to the same value
    let real = seq.realify().unwrap();
    let total = nu(&real);
    for i in 0..real.maps().len() {
        let (e1, e2, sign) = split_at(&real, i).unwrap();
        let recomposed = if sign == 1 {
            nu(&e1) * nu(&e2)
        } else {
            nu(&e1) / nu(&e2)
        };
        println!("  split at map {i}: nu(E1) * nu(E2)^({sign}) = {recomposed} (total {total})");
        assert_eq!(recomposed, total);
    }
}
