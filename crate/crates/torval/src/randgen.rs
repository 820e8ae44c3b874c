//! Seeded random generators for groups, maps, exact sequences, grids and
//! cyclic modules. Everything built here is exact by construction, which is
//! what makes the randomized identity suites meaningful: the generators never
//! rely on the properties they are used to test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::abelian::{compose, FgGroup, GroupMap};
use crate::error::Result;
use crate::mat::{IntegerMatrix, RationalMatrix};
use crate::seqdet::{BasedSequence, FgSequence, Grid};
use crate::tate::CyclicModule;

/// Random finite abelian group with torsion order at most `max_order`.
pub fn random_finite_group<R: Rng>(rng: &mut R, max_factors: usize, max_order: u64) -> FgGroup {
    let mut factors: Vec<u64> = Vec::new();
    let mut order = 1u64;
    for _ in 0..rng.gen_range(0..=max_factors) {
        let d = rng.gen_range(2..=7u64);
        // keep the divisibility chain by lifting d to a multiple of the last factor
        let d = match factors.last() {
            Some(&prev) => {
                let g = gcd(prev, d);
                prev / g * d
            }
            None => d,
        };
        if order.saturating_mul(d) > max_order {
            break;
        }
        order *= d;
        factors.push(d);
    }
    FgGroup::from_factors(&factors, 0)
}

/// Random finitely generated group: finite part as above plus a free part.
pub fn random_group<R: Rng>(rng: &mut R, max_rank: usize, max_order: u64) -> FgGroup {
    let finite = random_finite_group(rng, 2, max_order);
    let factors: Vec<u64> = finite
        .invariant_factors()
        .iter()
        .map(|d| u64::try_from(d.clone()).unwrap())
        .collect();
    FgGroup::from_factors(&factors, rng.gen_range(0..=max_rank))
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A short exact sequence `0 -> k -> B -> c -> 0` with random extension data:
/// each torsion generator of `c` lifts to an element whose multiple is a
/// random element of `k`. This reaches non-split extensions like
/// `0 -> Z/2 -> Z/4 -> Z/2 -> 0`.
pub fn random_extension<R: Rng>(
    rng: &mut R,
    k: &FgGroup,
    c: &FgGroup,
) -> Result<(FgGroup, GroupMap, GroupMap)> {
    let nk = k.num_generators();
    let nc = c.num_generators();
    let n = nk + nc;

    let mut rel_cols: Vec<Vec<BigInt>> = Vec::new();
    for (i, d) in k.invariant_factors().iter().enumerate() {
        let mut col = vec![BigInt::zero(); n];
        col[i] = d.clone();
        rel_cols.push(col);
    }
    for (j, e) in c.invariant_factors().iter().enumerate() {
        let mut col = vec![BigInt::zero(); n];
        for (i, d) in k.invariant_factors().iter().enumerate() {
            let bound = u64::try_from(d.clone()).unwrap();
            col[i] = -BigInt::from(rng.gen_range(0..bound));
        }
        for i in k.torsion_rank()..nk {
            col[i] = -BigInt::from(rng.gen_range(-2i64..=2));
        }
        col[nk + j] = e.clone();
        rel_cols.push(col);
    }

    let mut rel = IntegerMatrix::zero(n, rel_cols.len());
    for (j, col) in rel_cols.iter().enumerate() {
        for i in 0..n {
            rel[(i, j)] = col[i].clone();
        }
    }
    let canon = crate::abelian::canonicalize_presentation(n, &rel);
    let b = canon.group.clone();

    let all_rows: Vec<usize> = (0..canon.to_canonical.rows()).collect();
    let incl_matrix = canon
        .to_canonical
        .select(&all_rows, &(0..nk).collect::<Vec<_>>());
    let incl = GroupMap::new(k.clone(), b.clone(), incl_matrix)?;

    let mut proj_old = IntegerMatrix::zero(nc, n);
    for j in 0..nc {
        proj_old[(j, nk + j)] = BigInt::one();
    }
    let proj_matrix = proj_old.mul(&canon.from_canonical);
    let proj = GroupMap::new(b.clone(), c.clone(), proj_matrix)?;
    Ok((b, incl, proj))
}

/// Random exact sequence of `num_groups` finitely generated groups, built by
/// splicing random extensions along a chain of random link groups. Link
/// ranks at most 2 and link torsion at most `max_link_torsion`, so middle
/// groups have rank at most 4 and torsion at most `max_link_torsion^2`.
pub fn random_exact_fg_sequence<R: Rng>(
    rng: &mut R,
    num_groups: usize,
    max_link_torsion: u64,
) -> Result<FgSequence> {
    assert!(num_groups >= 2);
    let mut links = vec![FgGroup::trivial()];
    for _ in 1..num_groups {
        links.push(random_group(rng, 2, max_link_torsion));
    }
    links.push(FgGroup::trivial());

    let mut groups = Vec::with_capacity(num_groups);
    let mut incls = Vec::with_capacity(num_groups);
    let mut projs = Vec::with_capacity(num_groups);
    for i in 0..num_groups {
        let (g, incl, proj) = random_extension(rng, &links[i], &links[i + 1])?;
        groups.push(g);
        incls.push(incl);
        projs.push(proj);
    }
    let mut maps = Vec::with_capacity(num_groups - 1);
    for i in 0..num_groups - 1 {
        maps.push(compose(&projs[i], &incls[i + 1])?);
    }
    FgSequence::new(groups, maps)
}

/// Random invertible rational matrix with small entries.
pub fn random_invertible_rational<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    loop {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let num = rng.gen_range(-4i64..=4);
                let den = rng.gen_range(1i64..=2);
                m[(i, j)] = BigRational::new(BigInt::from(num), BigInt::from(den));
            }
        }
        if n == 0 || !m.det().is_zero() {
            return m;
        }
    }
}

/// Random exact sequence of rational vector spaces with the given interior
/// link dimensions: space `i` is `J_i (+) J_{i+1}` in scrambled coordinates.
pub fn random_exact_rational_sequence<R: Rng>(
    rng: &mut R,
    link_dims: &[usize],
) -> Result<BasedSequence> {
    // links J_0 = 0, J_1..J_k interior, J_{k+1} = 0
    let mut j = vec![0usize];
    j.extend_from_slice(link_dims);
    j.push(0);
    let n_spaces = j.len() - 1;
    let dims: Vec<usize> = (0..n_spaces).map(|i| j[i] + j[i + 1]).collect();
    let scramble: Vec<RationalMatrix> = dims
        .iter()
        .map(|&d| random_invertible_rational(rng, d))
        .collect();
    let mut maps = Vec::with_capacity(n_spaces - 1);
    for i in 0..n_spaces - 1 {
        // project to the outgoing link, then include as the incoming link
        let b_inv = scramble[i].inverse().expect("scramble is invertible");
        let rows: Vec<usize> = (j[i]..dims[i]).collect();
        let mut proj = RationalMatrix::zero(j[i + 1], dims[i]);
        for (r, &src) in rows.iter().enumerate() {
            for c in 0..dims[i] {
                proj[(r, c)] = b_inv[(src, c)].clone();
            }
        }
        let incl = scramble[i + 1].select_cols(&(0..j[i + 1]).collect::<Vec<_>>());
        maps.push(incl.mul(&proj));
    }
    BasedSequence::from_dims(&dims, maps)
}

/// Random commutative exact grid: the tensor product of two random exact
/// rational sequences, twisted by a random change of basis in every cell.
pub fn random_grid<R: Rng>(rng: &mut R, col_links: &[usize], row_links: &[usize]) -> Result<Grid> {
    let col_seq = random_exact_rational_sequence(rng, col_links)?;
    let row_seq = random_exact_rational_sequence(rng, row_links)?;
    let cd = col_seq.dims();
    let rd = row_seq.dims();
    let m = cd.len();
    let n = rd.len();

    let dims: Vec<Vec<usize>> = cd
        .iter()
        .map(|&a| rd.iter().map(|&b| a * b).collect())
        .collect();
    let twist: Vec<Vec<RationalMatrix>> = dims
        .iter()
        .map(|row| {
            row.iter()
                .map(|&d| random_invertible_rational(rng, d))
                .collect()
        })
        .collect();
    let twist_inv: Vec<Vec<RationalMatrix>> = twist
        .iter()
        .map(|row| {
            row.iter()
                .map(|w| w.inverse().expect("twist is invertible"))
                .collect()
        })
        .collect();

    let mut horizontal = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(n - 1);
        for jx in 0..n - 1 {
            let base = RationalMatrix::identity(cd[i]).kronecker(&row_seq.maps()[jx]);
            row.push(twist_inv[i][jx + 1].mul(&base).mul(&twist[i][jx]));
        }
        horizontal.push(row);
    }
    let mut vertical = Vec::with_capacity(m - 1);
    for i in 0..m - 1 {
        let mut row = Vec::with_capacity(n);
        for jx in 0..n {
            let base = col_seq.maps()[i].kronecker(&RationalMatrix::identity(rd[jx]));
            row.push(twist_inv[i + 1][jx].mul(&base).mul(&twist[i][jx]));
        }
        vertical.push(row);
    }
    Grid::new(dims, horizontal, vertical)
}

/// Random two-row grid whose vertical maps are isomorphisms: a random exact
/// top row transported by random isomorphisms to the bottom row.
pub fn random_iso_grid<R: Rng>(rng: &mut R, links: &[usize]) -> Result<Grid> {
    let top = random_exact_rational_sequence(rng, links)?;
    let dims_top = top.dims();
    let isos: Vec<RationalMatrix> = dims_top
        .iter()
        .map(|&d| random_invertible_rational(rng, d))
        .collect();
    let iso_invs: Vec<RationalMatrix> = isos
        .iter()
        .map(|w| w.inverse().expect("iso is invertible"))
        .collect();
    let bottom: Vec<RationalMatrix> = (0..top.maps().len())
        .map(|i| isos[i + 1].mul(&top.maps()[i]).mul(&iso_invs[i]))
        .collect();
    Grid::new(
        vec![dims_top.clone(), dims_top],
        vec![top.maps().to_vec(), bottom],
        vec![isos],
    )
}

/// Random automorphism of a finite group whose order divides `m`, assembled
/// from unit scalings of m-th-power order on each cyclic factor, then
/// conjugated by random elementary automorphisms so the matrix is not
/// diagonal.
pub fn random_cyclic_module<R: Rng>(rng: &mut R, max_order: u64, max_m: u32) -> CyclicModule {
    let module = random_finite_group(rng, 3, max_order);
    let m = rng.gen_range(1..=max_m);
    let n = module.num_generators();

    let mut sigma = IntegerMatrix::zero(n, n);
    for i in 0..n {
        let d = u64::try_from(module.generator_order(i).unwrap().clone()).unwrap();
        let units: Vec<u64> = (1..d)
            .filter(|&u| gcd(u, d) == 1 && pow_mod(u, m as u64, d) == 1)
            .collect();
        let u = if units.is_empty() {
            1
        } else {
            units[rng.gen_range(0..units.len())]
        };
        sigma[(i, i)] = BigInt::from(u);
    }
    let mut sigma = GroupMap::new(module.clone(), module.clone(), sigma)
        .expect("diagonal unit action is well-defined");

    // conjugate: sigma <- a . sigma . a^-1 for elementary automorphisms a
    for _ in 0..rng.gen_range(0..=3usize) {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if i == j {
            j = (j + 1) % n;
        }
        let di = module.generator_order(i).unwrap();
        let dj = module.generator_order(j).unwrap();
        let g = num_integer::Integer::gcd(di, dj);
        let step = di / &g;
        let c = step * BigInt::from(rng.gen_range(1..=2));
        let mut fwd = IntegerMatrix::identity(n);
        fwd[(i, j)] = c.clone();
        let mut bwd = IntegerMatrix::identity(n);
        bwd[(i, j)] = -c;
        let a = GroupMap::new(module.clone(), module.clone(), fwd)
            .expect("transvection is well-defined");
        let a_inv = GroupMap::new(module.clone(), module.clone(), bwd)
            .expect("inverse transvection is well-defined");
        sigma = compose(&compose(&a_inv, &sigma).unwrap(), &a).unwrap();
    }

    CyclicModule::new(module, sigma, m).expect("constructed action has order dividing m")
}

fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u128;
    let mut b = u128::from(base) % u128::from(modulus);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % u128::from(modulus);
        }
        b = b * b % u128::from(modulus);
        e >>= 1;
    }
    result as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn extensions_are_exact() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..40 {
            let k = random_group(&mut rng, 2, 12);
            let c = random_group(&mut rng, 2, 12);
            let (b, incl, proj) = random_extension(&mut rng, &k, &c).unwrap();
            assert!(incl.kernel().0.is_trivial());
            assert!(proj.cokernel().0.is_trivial());
            assert!(crate::abelian::is_exact_at(&incl, &proj).unwrap());
            // ranks add; torsion only divides the product (the free part of
            // the middle can absorb torsion of the quotient)
            assert_eq!(b.free_rank(), k.free_rank() + c.free_rank());
            let product = k.torsion_order() * c.torsion_order();
            assert!((product % b.torsion_order()).is_zero());
        }
    }

    #[test]
    fn extension_can_be_nonsplit() {
        // with K = C = Z/2 the generator must eventually produce Z/4
        let mut rng = StdRng::seed_from_u64(1);
        let z2 = FgGroup::cyclic(2);
        let mut seen_z4 = false;
        for _ in 0..40 {
            let (b, _, _) = random_extension(&mut rng, &z2, &z2).unwrap();
            if b == FgGroup::cyclic(4) {
                seen_z4 = true;
            }
        }
        assert!(seen_z4);
    }

    #[test]
    fn spliced_sequences_validate() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..25 {
            let len = rng.gen_range(3..=6);
            let seq = random_exact_fg_sequence(&mut rng, len, 7).unwrap();
            assert_eq!(seq.groups().len(), len);
        }
    }

    #[test]
    fn rational_sequences_and_grids_validate() {
        let mut rng = StdRng::seed_from_u64(27);
        for _ in 0..15 {
            // links [2, 1] give three spaces 0 -> Q^2 -> Q^3 -> Q -> 0
            let seq = random_exact_rational_sequence(&mut rng, &[2, 1]).unwrap();
            assert_eq!(seq.dims().len(), 3);
            assert_eq!(seq.dims(), vec![2, 3, 1]);
            // two interior links per direction give a 3x3 grid
            let grid = random_grid(&mut rng, &[1, 1], &[2, 1]).unwrap();
            assert_eq!(grid.num_rows(), 3);
            assert_eq!(grid.num_cols(), 3);
        }
    }

    #[test]
    fn cyclic_modules_validate() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..40 {
            let cm = random_cyclic_module(&mut rng, 60, 6);
            // constructor already verified sigma^m = id
            assert!(cm.order() >= 1);
            assert!(
                cm.module().torsion_order() <= num_bigint::BigInt::from(60)
                    || cm.module().torsion_order().is_one()
            );
        }
    }
}
