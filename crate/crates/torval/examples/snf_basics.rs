//! Smith normal form and canonical presentations of finitely generated
//! abelian groups.
//!
//! ```bash
//! cargo run -p torval --example snf_basics
//! ```

use torval::abelian::group_from_presentation;
use torval::mat::IntegerMatrix;

fn main() {
    let a = IntegerMatrix::from_i64(&[&[2, 4], &[6, 8]]);
    let snf = a.smith_normal_form();
    println!("A            = {a:?}");
    println!("U            = {:?}", snf.u);
    println!("S            = {:?}", snf.s);
    println!("V            = {:?}", snf.v);
    println!("U * S * V    = {:?}", snf.u.mul(&snf.s).mul(&snf.v));
    let det = a.det();
    println!(
        "factors      = {:?}   (d1 = gcd of entries, d1*d2 = |det A| = {})",
        snf.invariant_factors(),
        if det < 0.into() { -det } else { det }
    );

    // the cokernel of a relation matrix, canonicalized
    let rel = IntegerMatrix::from_i64(&[&[2, 0], &[0, 4]]);
    let g = group_from_presentation(2, &rel).unwrap();
    println!("\nZ^2 / <2e1, 4e2>        = {g}");

    let rel = IntegerMatrix::from_i64(&[&[12, 0]]);
    let g = group_from_presentation(2, &rel).unwrap();
    println!("Z^2 / <12e1>            = {g}");

    // kernels carry explicit inclusions back into the ambient group
    let dom = torval::abelian::FgGroup::from_factors(&[12], 1);
    let cod = torval::abelian::FgGroup::cyclic(4);
    let norm =
        torval::abelian::GroupMap::new(dom, cod, IntegerMatrix::from_i64(&[&[2, 1]])).unwrap();
    let (kernel, inclusion) = norm.kernel();
    println!("\nker( Z/12 + Z -> Z/4, (a,b) -> 2a+b ) = {kernel}");
    println!("inclusion matrix        = {:?}", inclusion.matrix());
}
