//! Alternating-product identities over commutative exact grids: the product
//! of row determinants equals the product of column determinants, and for a
//! two-row grid of isomorphisms this becomes a plain determinant ratio.
//!
//! ```bash
//! cargo run -p torval --example grid_identity
//! ```

use rand::rngs::StdRng;
use rand::SeedableRng;

use torval::randgen::{random_grid, random_iso_grid};
use torval::seqdet::{grid_check, iso_grid_ratio};

fn main() {
    let mut rng = StdRng::seed_from_u64(7);

    // a random twisted 3x3 grid of exact rows and columns
    let grid = random_grid(&mut rng, &[1, 2], &[2, 1]).unwrap();
    println!(
        "random {}x{} grid, cell dims:",
        grid.num_rows(),
        grid.num_cols()
    );
    for i in 0..grid.num_rows() {
        let dims: Vec<usize> = (0..grid.num_cols())
            .map(|j| grid.row(i).unwrap().dims()[j])
            .collect();
        println!("  {dims:?}");
    }
    let report = grid_check(&grid).unwrap();
    println!(
        "  alternating product over rows    = {}",
        report.row_product
    );
    println!(
        "  alternating product over columns = {}",
        report.col_product
    );
    println!("  equal                            = {}", report.equal);
    assert!(report.equal);

    // two exact rows joined by isomorphisms
    let grid = random_iso_grid(&mut rng, &[2, 1]).unwrap();
    let (det_ratio, nu_ratio) = iso_grid_ratio(&grid).unwrap();
    println!("\ntwo-row grid with isomorphism columns:");
    println!("  |det t0| |det t2| / |det t1|     = {det_ratio}");
    println!("  nu(top row) / nu(bottom row)     = {nu_ratio}");
    assert_eq!(det_ratio, nu_ratio);
}
