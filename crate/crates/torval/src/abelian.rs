//! Finitely generated abelian groups presented in canonical form, and the
//! kernel / image / cokernel calculus on maps between them.
//!
//! A group is stored as its invariant factors `d_1 | d_2 | ... | d_t` (each
//! at least 2) plus a free rank. Elements are integer coordinate vectors on
//! the canonical generators, torsion coordinates read modulo their factor.
//! Maps are integer matrices on generators, validated for well-definedness at
//! construction so that every downstream computation may assume it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::mat::IntegerMatrix;

/// A finitely generated abelian group in canonical form.
#[derive(Clone, Debug)]
pub struct FgGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    generator_labels: Option<Vec<String>>,
}

impl PartialEq for FgGroup {
    fn eq(&self, other: &Self) -> bool {
        // labels are tracing metadata, not part of the isomorphism type
        self.invariant_factors == other.invariant_factors && self.free_rank == other.free_rank
    }
}

impl Eq for FgGroup {}

impl FgGroup {
    /// Canonical constructor. Factors must form a divisibility chain with
    /// every factor at least 2; factors equal to 1 are not stored.
    pub fn new(invariant_factors: Vec<BigInt>, free_rank: usize) -> Result<Self> {
        for w in invariant_factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::validation(format!(
                    "invariant factors do not form a divisibility chain: {w:?}"
                )));
            }
        }
        if invariant_factors.iter().any(|d| d < &BigInt::from(2)) {
            return Err(Error::validation("invariant factors must be >= 2"));
        }
        Ok(FgGroup {
            invariant_factors,
            free_rank,
            generator_labels: None,
        })
    }

    pub fn trivial() -> Self {
        FgGroup {
            invariant_factors: vec![],
            free_rank: 0,
            generator_labels: None,
        }
    }

    pub fn free(rank: usize) -> Self {
        FgGroup {
            invariant_factors: vec![],
            free_rank: rank,
            generator_labels: None,
        }
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1);
        if n == 1 {
            Self::trivial()
        } else {
            FgGroup {
                invariant_factors: vec![BigInt::from(n)],
                free_rank: 0,
                generator_labels: None,
            }
        }
    }

    /// Convenience constructor from small factors, for tests and examples.
    pub fn from_factors(factors: &[u64], free_rank: usize) -> Self {
        let cols: Vec<Vec<BigInt>> = factors
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut col = vec![BigInt::zero(); factors.len() + free_rank];
                col[i] = BigInt::from(d);
                col
            })
            .collect();
        let rel = columns_matrix(factors.len() + free_rank, &cols);
        canonicalize_presentation(factors.len() + free_rank, &rel).group
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.num_generators());
        self.generator_labels = Some(labels);
        self
    }

    pub fn generator_labels(&self) -> Option<&[String]> {
        self.generator_labels.as_deref()
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.num_generators() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Product of the invariant factors; 1 for a free (or trivial) group.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    /// Order of the i-th canonical generator, `None` when it is free.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        self.invariant_factors.get(i)
    }

    /// Columns `d_i * e_i` spanning the relation lattice of the canonical
    /// presentation (torsion coordinates only).
    pub fn relation_lattice(&self) -> IntegerMatrix {
        let n = self.num_generators();
        let t = self.torsion_rank();
        let mut m = IntegerMatrix::zero(n, t);
        for (i, d) in self.invariant_factors.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Reduce a coordinate vector to canonical representatives.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.num_generators());
        v.iter()
            .enumerate()
            .map(|(i, x)| match self.generator_order(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect()
    }

    /// Direct sum, recanonicalized.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let factors: Vec<&BigInt> = self
            .invariant_factors
            .iter()
            .chain(other.invariant_factors.iter())
            .collect();
        let n = factors.len() + self.free_rank + other.free_rank;
        let cols: Vec<Vec<BigInt>> = factors
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut col = vec![BigInt::zero(); n];
                col[i] = (*d).clone();
                col
            })
            .collect();
        let rel = columns_matrix(n, &cols);
        canonicalize_presentation(n, &rel).group
    }

    /// Enumerate all elements of a finite group as coordinate vectors.
    /// Intended as a brute-force oracle for tests; panics on infinite groups.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![vec![]];
        for d in &self.invariant_factors {
            let d = u64::try_from(d.clone()).expect("factor fits in u64 for enumeration");
            let mut next = Vec::new();
            for prefix in &out {
                for x in 0..d {
                    let mut v = prefix.clone();
                    v.push(BigInt::from(x));
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Outcome of canonicalizing a presentation `Z^n / relations`: the group in
/// canonical form plus the coordinate transforms in both directions.
/// `to_canonical * from_canonical` is the identity on canonical coordinates.
pub(crate) struct Canonicalized {
    pub group: FgGroup,
    /// (t + r) x n : old-generator coordinates -> canonical coordinates.
    pub to_canonical: IntegerMatrix,
    /// n x (t + r) : canonical generators expressed in old generators.
    pub from_canonical: IntegerMatrix,
}

/// Canonicalize `Z^n_gens / column-lattice(relations)`.
pub(crate) fn canonicalize_presentation(n_gens: usize, relations: &IntegerMatrix) -> Canonicalized {
    assert_eq!(relations.rows(), n_gens, "relation column length mismatch");
    let snf = relations.smith_normal_form();
    let rank = snf.rank();

    // coordinate i (in U-basis) carries Z/d_i for i < rank, Z for i >= rank
    let mut torsion_idx = Vec::new();
    let mut factors = Vec::new();
    for i in 0..rank {
        let d = snf.s[(i, i)].clone();
        if d > BigInt::one() {
            torsion_idx.push(i);
            factors.push(d);
        }
    }
    let free_idx: Vec<usize> = (rank..n_gens).collect();
    let keep: Vec<usize> = torsion_idx.iter().chain(free_idx.iter()).copied().collect();

    let all_cols: Vec<usize> = (0..n_gens).collect();
    let to_canonical = snf.u_inv().select(&keep, &all_cols);
    let from_canonical = snf.u.select(&all_cols, &keep);
    let group = FgGroup {
        invariant_factors: factors,
        free_rank: free_idx.len(),
        generator_labels: None,
    };
    Canonicalized {
        group,
        to_canonical,
        from_canonical,
    }
}

/// Cokernel of the relation rows: the group presented by `n_generators`
/// generators subject to one relation per row of `relations`.
pub fn group_from_presentation(n_generators: usize, relations: &IntegerMatrix) -> Result<FgGroup> {
    if relations.cols() != n_generators {
        return Err(Error::validation(format!(
            "presentation shape mismatch: {} generators but relations have {} columns",
            n_generators,
            relations.cols()
        )));
    }
    Ok(canonicalize_presentation(n_generators, &relations.transpose()).group)
}

fn columns_matrix(rows: usize, cols: &[Vec<BigInt>]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zero(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        assert_eq!(col.len(), rows);
        for i in 0..rows {
            m[(i, j)] = col[i].clone();
        }
    }
    m
}

/// A homomorphism between canonical groups, stored as the integer matrix
/// sending domain generators to codomain coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    domain: FgGroup,
    codomain: FgGroup,
    matrix: IntegerMatrix,
}

impl GroupMap {
    /// Validates well-definedness: each domain relation must be sent into the
    /// codomain relation lattice. The matrix is reduced to canonical
    /// representatives so equal maps compare equal.
    pub fn new(domain: FgGroup, codomain: FgGroup, matrix: IntegerMatrix) -> Result<Self> {
        if matrix.rows() != codomain.num_generators() || matrix.cols() != domain.num_generators() {
            return Err(Error::validation(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.num_generators(),
                domain.num_generators()
            )));
        }
        for j in 0..domain.num_generators() {
            let Some(d) = domain.generator_order(j) else {
                continue;
            };
            for i in 0..codomain.num_generators() {
                let img = d * &matrix[(i, j)];
                match codomain.generator_order(i) {
                    Some(e) => {
                        if !(&img % e).is_zero() {
                            return Err(Error::validation(format!(
                                "not well-defined: generator {j} of order {d} maps to an \
                                 element of infinite order modulo codomain relations"
                            )));
                        }
                    }
                    None => {
                        if !img.is_zero() {
                            return Err(Error::validation(format!(
                                "not well-defined: torsion generator {j} has a nonzero \
                                 free coordinate in the codomain"
                            )));
                        }
                    }
                }
            }
        }
        let mut reduced = matrix;
        for i in 0..codomain.num_generators() {
            if let Some(e) = codomain.generator_order(i) {
                for j in 0..reduced.cols() {
                    reduced[(i, j)] = reduced[(i, j)].mod_floor(e);
                }
            }
        }
        Ok(GroupMap {
            domain,
            codomain,
            matrix: reduced,
        })
    }

    pub fn identity(g: &FgGroup) -> Self {
        GroupMap::new(
            g.clone(),
            g.clone(),
            IntegerMatrix::identity(g.num_generators()),
        )
        .expect("identity is well-defined")
    }

    pub fn zero(domain: &FgGroup, codomain: &FgGroup) -> Self {
        GroupMap::new(
            domain.clone(),
            codomain.clone(),
            IntegerMatrix::zero(codomain.num_generators(), domain.num_generators()),
        )
        .expect("zero map is well-defined")
    }

    pub fn domain(&self) -> &FgGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.codomain.reduce(&self.matrix.apply(v))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && {
            let id = GroupMap::identity(&self.domain);
            self.matrix == id.matrix
        }
    }

    /// Pointwise sum of two maps with the same domain and codomain.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::validation(
                "map sum requires equal domain and codomain",
            ));
        }
        GroupMap::new(
            self.domain.clone(),
            self.codomain.clone(),
            self.matrix.add(&other.matrix),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::validation(
                "map difference requires equal domain and codomain",
            ));
        }
        GroupMap::new(
            self.domain.clone(),
            self.codomain.clone(),
            self.matrix.sub(&other.matrix),
        )
    }

    /// Spanning columns (in `Z^{n_dom + t_cod}`) of the lattice
    /// `{(x, z) : M x + D z = 0}` used for preimage computations.
    fn preimage_lattice(&self) -> IntegerMatrix {
        let aug = self.matrix.hstack(&self.codomain.relation_lattice());
        aug.kernel_basis()
    }

    /// Spanning columns of `{x in Z^n_dom : f(x) = 0 in codomain}`.
    fn kernel_lattice(&self) -> IntegerMatrix {
        let k = self.preimage_lattice();
        let rows: Vec<usize> = (0..self.domain.num_generators()).collect();
        let cols: Vec<usize> = (0..k.cols()).collect();
        k.select(&rows, &cols)
    }

    /// Some element `x` of the domain with `f(x) = y`, or `None`.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let aug = self.matrix.hstack(&self.codomain.relation_lattice());
        let sol = aug.solve(y)?;
        Some(self.domain.reduce(&sol[..self.domain.num_generators()]))
    }

    /// Kernel as a canonical group together with its inclusion into the
    /// domain. The inclusion carries actual generator coordinates, so kernel
    /// elements can be traced back to the ambient object.
    pub fn kernel(&self) -> (FgGroup, GroupMap) {
        let span = self.kernel_lattice();
        let n_dom = self.domain.num_generators();
        // relations among the spanning columns, modulo the domain relations
        let aug = span.hstack(&self.domain.relation_lattice());
        let rel_full = aug.kernel_basis();
        let rel = rel_full.select(
            &(0..span.cols()).collect::<Vec<_>>(),
            &(0..rel_full.cols()).collect::<Vec<_>>(),
        );
        let canon = canonicalize_presentation(span.cols(), &rel);
        let incl_matrix = span.mul(&canon.from_canonical);
        debug_assert_eq!(incl_matrix.rows(), n_dom);
        let incl = GroupMap::new(canon.group.clone(), self.domain.clone(), incl_matrix)
            .expect("kernel inclusion is well-defined");
        (canon.group, incl)
    }

    /// Image as a canonical group together with its inclusion into the
    /// codomain.
    pub fn image(&self) -> (FgGroup, GroupMap) {
        let n_dom = self.domain.num_generators();
        // relations on the domain generators seen as generators of the image
        let pre = self.preimage_lattice();
        let rel = pre.select(
            &(0..n_dom).collect::<Vec<_>>(),
            &(0..pre.cols()).collect::<Vec<_>>(),
        );
        let canon = canonicalize_presentation(n_dom, &rel);
        let incl_matrix = self.matrix.mul(&canon.from_canonical);
        let incl = GroupMap::new(canon.group.clone(), self.codomain.clone(), incl_matrix)
            .expect("image inclusion is well-defined");
        (canon.group, incl)
    }

    /// Cokernel as a canonical group together with the projection from the
    /// codomain.
    pub fn cokernel(&self) -> (FgGroup, GroupMap) {
        let n_cod = self.codomain.num_generators();
        let rel = self.matrix.hstack(&self.codomain.relation_lattice());
        let canon = canonicalize_presentation(n_cod, &rel);
        let proj = GroupMap::new(
            self.codomain.clone(),
            canon.group.clone(),
            canon.to_canonical,
        )
        .expect("cokernel projection is well-defined");
        (canon.group, proj)
    }

    /// Order of the cokernel of `f` restricted to torsion subgroups.
    /// Torsion generators map into torsion (checked at construction), so the
    /// restriction is just the torsion-indexed submatrix.
    pub fn torsion_restriction_cokernel_order(&self) -> BigInt {
        let td = self.domain.torsion_rank();
        let tc = self.codomain.torsion_rank();
        let sub = self
            .matrix
            .select(&(0..tc).collect::<Vec<_>>(), &(0..td).collect::<Vec<_>>());
        let dom_tor = FgGroup {
            invariant_factors: self.domain.invariant_factors.clone(),
            free_rank: 0,
            generator_labels: None,
        };
        let cod_tor = FgGroup {
            invariant_factors: self.codomain.invariant_factors.clone(),
            free_rank: 0,
            generator_labels: None,
        };
        let restricted =
            GroupMap::new(dom_tor, cod_tor, sub).expect("torsion restriction is well-defined");
        let (cok, _) = restricted.cokernel();
        debug_assert!(cok.is_finite());
        cok.torsion_order()
    }
}

/// Composite `g . f` (first `f`, then `g`).
pub fn compose(f: &GroupMap, g: &GroupMap) -> Result<GroupMap> {
    if f.codomain != g.domain {
        return Err(Error::validation(
            "compose: codomain of f must equal domain of g",
        ));
    }
    GroupMap::new(
        f.domain.clone(),
        g.codomain.clone(),
        g.matrix.mul(&f.matrix),
    )
}

/// Is `... -> A -f-> B -g-> C -> ...` exact at `B`, i.e. `im f = ker g` as
/// subgroups of `B`?
pub fn is_exact_at(f: &GroupMap, g: &GroupMap) -> Result<bool> {
    if f.codomain != g.domain {
        return Err(Error::validation("exactness: maps are not composable"));
    }
    let gf = compose(f, g)?;
    if !gf.is_zero() {
        return Ok(false);
    }
    // composite zero gives im f (+ relations) inside ker g; check the reverse
    let ker_span = g.kernel_lattice();
    let im_span = f.matrix.hstack(&f.codomain.relation_lattice());
    for j in 0..ker_span.cols() {
        if !im_span.lattice_contains(&ker_span.column(j)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Quotient `im(a) / im(b)` of two subgroups of a common ambient group,
/// presented on the generators of `a`'s source. `a` must be an inclusion
/// (injective) into the same group `b` maps to, with `im(b)` inside `im(a)`.
pub fn subgroup_quotient(a: &GroupMap, b: &GroupMap) -> Result<FgGroup> {
    if a.codomain != b.codomain {
        return Err(Error::validation(
            "subgroup quotient: different ambient groups",
        ));
    }
    if !a.kernel().0.is_trivial() {
        return Err(Error::validation(
            "subgroup quotient: the first map must be injective",
        ));
    }
    let n = a.domain.num_generators();
    let mut rel_cols: Vec<Vec<BigInt>> = Vec::new();
    for (i, d) in a.domain.invariant_factors.iter().enumerate() {
        let mut col = vec![BigInt::zero(); n];
        col[i] = d.clone();
        rel_cols.push(col);
    }
    for j in 0..b.domain.num_generators() {
        let y = b.matrix.column(j);
        let x = a.preimage(&y).ok_or_else(|| {
            Error::Check("subgroup quotient: second subgroup is not contained in the first".into())
        })?;
        rel_cols.push(x);
    }
    let rel = columns_matrix(n, &rel_cols);
    Ok(canonicalize_presentation(n, &rel).group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn z() -> FgGroup {
        FgGroup::free(1)
    }

    #[test]
    fn presentation_canonicalization() {
        // 2 generators, relations diag(2,4) -> Z/2 + Z/4 (SNF oracle)
        let rel = IntegerMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        let g = group_from_presentation(2, &rel).unwrap();
        assert_eq!(g, FgGroup::from_factors(&[2, 4], 0));

        // 1 generator, no relations -> Z
        let g = group_from_presentation(1, &IntegerMatrix::zero(0, 1)).unwrap();
        assert_eq!(g, z());

        // 2 generators, relation (12, 0) -> Z/12 + Z
        let rel = IntegerMatrix::from_i64(&[&[12, 0]]);
        let g = group_from_presentation(2, &rel).unwrap();
        assert_eq!(g, FgGroup::from_factors(&[12], 1));

        // factors equal to 1 are dropped
        let rel = IntegerMatrix::from_i64(&[&[1, 0], &[0, 6]]);
        let g = group_from_presentation(2, &rel).unwrap();
        assert_eq!(g, FgGroup::from_factors(&[6], 0));

        // shape mismatch is an error
        assert!(group_from_presentation(3, &IntegerMatrix::from_i64(&[&[1, 0]])).is_err());
    }

    #[test]
    fn torsion_order_and_rank() {
        let g = FgGroup::from_factors(&[2, 4], 0);
        assert_eq!(g.torsion_order(), BigInt::from(8));
        assert_eq!(g.elements().len(), 8); // enumeration oracle
        assert_eq!(FgGroup::free(3).torsion_order(), BigInt::one());
        assert_eq!(FgGroup::free(3).rank(), 3);
        let g = FgGroup::from_factors(&[12], 1);
        assert_eq!(g.torsion_order(), BigInt::from(12));
        assert_eq!(g.rank(), 1);
        assert_eq!(FgGroup::from_factors(&[6], 1).rank(), 1);
        assert_eq!(FgGroup::from_factors(&[5], 0).rank(), 0);
    }

    #[test]
    fn display_forms() {
        assert_eq!(FgGroup::trivial().to_string(), "0");
        assert_eq!(FgGroup::from_factors(&[6], 1).to_string(), "Z/6 + Z");
        assert_eq!(FgGroup::free(2).to_string(), "Z^2");
        assert_eq!(FgGroup::from_factors(&[2, 4], 0).to_string(), "Z/2 + Z/4");
    }

    #[test]
    fn map_well_definedness() {
        let z12_z = FgGroup::from_factors(&[12], 1);
        let z4 = FgGroup::cyclic(4);
        // (a, b) -> 2a + b : Z/12 + Z -> Z/4 is well-defined (12*2 = 0 mod 4)
        assert!(GroupMap::new(
            z12_z.clone(),
            z4.clone(),
            IntegerMatrix::from_i64(&[&[2, 1]])
        )
        .is_ok());
        // (a, b) -> a is not (12 * 1 != 0 mod 8)
        let z8 = FgGroup::cyclic(8);
        assert!(GroupMap::new(z12_z.clone(), z8, IntegerMatrix::from_i64(&[&[1, 0]])).is_err());
        // torsion cannot map to a free coordinate
        assert!(GroupMap::new(FgGroup::cyclic(2), z(), IntegerMatrix::from_i64(&[&[1]])).is_err());
    }

    #[test]
    fn kernel_norm_map_example() {
        // N : Z/12 + Z -> Z/4, (a, b) -> 2a + b has kernel Z/6 + Z
        let dom = FgGroup::from_factors(&[12], 1);
        let f =
            GroupMap::new(dom, FgGroup::cyclic(4), IntegerMatrix::from_i64(&[&[2, 1]])).unwrap();
        let (k, incl) = f.kernel();
        assert_eq!(k, FgGroup::from_factors(&[6], 1));
        // composite with f is zero
        assert!(compose(&incl, &f).unwrap().is_zero());
        // inclusion really lands in the kernel: check generators
        for j in 0..k.num_generators() {
            let v: Vec<BigInt> = (0..k.num_generators())
                .map(|i| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect();
            let img = f.apply(&incl.apply(&v));
            assert!(img.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_trivial_and_full() {
        let g = FgGroup::from_factors(&[4], 2);
        let id = GroupMap::identity(&g);
        assert!(id.kernel().0.is_trivial());

        let zero = GroupMap::zero(&z(), &z());
        assert_eq!(zero.kernel().0, z());
    }

    #[test]
    fn cokernel_examples() {
        // x2 : Z -> Z has cokernel Z/2
        let f = GroupMap::new(z(), z(), IntegerMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(f.cokernel().0, FgGroup::cyclic(2));
        // a surjection has trivial cokernel
        let f = GroupMap::new(z(), FgGroup::cyclic(4), IntegerMatrix::from_i64(&[&[1]])).unwrap();
        assert!(f.cokernel().0.is_trivial());
        // diag(2,4) : Z^2 -> Z^2 -> Z/2 + Z/4 (SNF oracle)
        let f = GroupMap::new(
            FgGroup::free(2),
            FgGroup::free(2),
            IntegerMatrix::from_i64(&[&[2, 0], &[0, 4]]),
        )
        .unwrap();
        assert_eq!(f.cokernel().0, FgGroup::from_factors(&[2, 4], 0));
    }

    #[test]
    fn image_examples() {
        // (a, b) -> 2a + b on Z^2 has image Z (gcd-of-minors oracle: gcd = 1)
        let f = GroupMap::new(FgGroup::free(2), z(), IntegerMatrix::from_i64(&[&[2, 1]])).unwrap();
        assert_eq!(f.image().0, z());
        // x2 on Z/4 has image Z/2
        let z4 = FgGroup::cyclic(4);
        let f = GroupMap::new(z4.clone(), z4.clone(), IntegerMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(f.image().0, FgGroup::cyclic(2));
    }

    #[test]
    fn exactness_probes() {
        let q2 = GroupMap::new(z(), FgGroup::cyclic(2), IntegerMatrix::from_i64(&[&[1]])).unwrap();
        let q4 = GroupMap::new(z(), FgGroup::cyclic(4), IntegerMatrix::from_i64(&[&[1]])).unwrap();
        let mul2 = GroupMap::new(z(), z(), IntegerMatrix::from_i64(&[&[2]])).unwrap();
        assert!(is_exact_at(&mul2, &q2).unwrap());
        assert!(!is_exact_at(&mul2, &q4).unwrap());
    }

    #[test]
    fn torsion_restriction_cokernel() {
        let z2 = FgGroup::cyclic(2);
        let f = GroupMap::zero(&z2, &z2);
        assert_eq!(f.torsion_restriction_cokernel_order(), BigInt::from(2));

        let z4 = FgGroup::cyclic(4);
        let f = GroupMap::new(z4.clone(), z4.clone(), IntegerMatrix::from_i64(&[&[2]])).unwrap();
        // enumeration oracle: image of x2 on Z/4 is {0, 2}, cokernel order 2
        assert_eq!(f.torsion_restriction_cokernel_order(), BigInt::from(2));

        let id = GroupMap::identity(&FgGroup::from_factors(&[6], 2));
        assert_eq!(id.torsion_restriction_cokernel_order(), BigInt::one());
    }

    /// Brute-force order of the kernel and image of a map between finite
    /// groups, by enumeration.
    fn enum_kernel_image_orders(f: &GroupMap) -> (BigInt, BigInt) {
        let mut kernel = 0u64;
        let mut image = std::collections::BTreeSet::new();
        for v in f.domain().elements() {
            let img = f.apply(&v);
            if img.iter().all(Zero::is_zero) {
                kernel += 1;
            }
            image.insert(format!("{img:?}"));
        }
        (BigInt::from(kernel), BigInt::from(image.len() as u64))
    }

    fn random_finite_group(rng: &mut StdRng) -> FgGroup {
        // small invariant factor chains with order <= 200
        let mut factors: Vec<u64> = Vec::new();
        let mut order = 1u64;
        for _ in 0..rng.gen_range(0..=2) {
            let d = *[2u64, 2, 3, 4, 5, 6].get(rng.gen_range(0..6)).unwrap();
            let d = match factors.last() {
                Some(&prev) => prev * (d / num_integer::Integer::gcd(&prev, &d)),
                None => d,
            };
            if order * d > 200 {
                break;
            }
            order *= d;
            factors.push(d);
        }
        FgGroup::from_factors(&factors, 0)
    }

    #[test]
    fn finite_kernel_image_consistency() {
        // |domain| = |ker f| * |im f|, against the enumeration oracle
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..60 {
            let dom = random_finite_group(&mut rng);
            let cod = random_finite_group(&mut rng);
            let mut m = IntegerMatrix::zero(cod.num_generators(), dom.num_generators());
            for j in 0..dom.num_generators() {
                let dj = dom.generator_order(j).unwrap().clone();
                for i in 0..cod.num_generators() {
                    let ei = cod.generator_order(i).unwrap().clone();
                    // c must satisfy e_i | d_j * c; pick c a multiple of e_i / gcd(e_i, d_j)
                    let g = num_integer::Integer::gcd(&ei, &dj);
                    let step = &ei / &g;
                    let mult = BigInt::from(rng.gen_range(0..=4));
                    m[(i, j)] = step.clone() * mult;
                }
            }
            let f = GroupMap::new(dom.clone(), cod, m).unwrap();
            let (oracle_ker, oracle_im) = enum_kernel_image_orders(&f);
            let (k, _) = f.kernel();
            let (im, _) = f.image();
            assert_eq!(k.torsion_order(), oracle_ker);
            assert_eq!(im.torsion_order(), oracle_im);
            assert_eq!(dom.torsion_order(), oracle_ker * oracle_im);
        }
    }

    #[test]
    fn cokernel_matches_snf_oracle() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let m = rng.gen_range(1..=4);
            let mut a = IntegerMatrix::zero(m, n);
            for i in 0..m {
                for j in 0..n {
                    a[(i, j)] = BigInt::from(rng.gen_range(-10i64..=10));
                }
            }
            let f = GroupMap::new(FgGroup::free(n), FgGroup::free(m), a.clone()).unwrap();
            let (cok, _) = f.cokernel();
            // oracle: invariant factors of A give the cokernel structure
            let snf = a.smith_normal_form();
            let expected_factors: Vec<BigInt> = snf
                .invariant_factors()
                .into_iter()
                .filter(|d| d > &BigInt::one())
                .collect();
            let expected_rank = m - snf.rank();
            assert_eq!(cok.invariant_factors(), &expected_factors[..]);
            assert_eq!(cok.free_rank(), expected_rank);
        }
    }

    #[test]
    fn subgroup_quotient_basic() {
        // <2> / <4> inside Z/12 is Z/2
        let z12 = FgGroup::cyclic(12);
        let a = GroupMap::new(
            FgGroup::cyclic(6),
            z12.clone(),
            IntegerMatrix::from_i64(&[&[2]]),
        )
        .unwrap();
        let b = GroupMap::new(
            FgGroup::cyclic(3),
            z12.clone(),
            IntegerMatrix::from_i64(&[&[4]]),
        )
        .unwrap();
        assert_eq!(subgroup_quotient(&a, &b).unwrap(), FgGroup::cyclic(2));
        // containment violation is caught
        let c = GroupMap::new(FgGroup::cyclic(12), z12, IntegerMatrix::from_i64(&[&[1]])).unwrap();
        assert!(subgroup_quotient(&a, &c).is_err());
    }

    #[test]
    fn direct_sum_canonical() {
        let a = FgGroup::from_factors(&[2], 1);
        let b = FgGroup::from_factors(&[3], 0);
        // Z/2 + Z/3 recanonicalizes to Z/6
        assert_eq!(a.direct_sum(&b), FgGroup::from_factors(&[6], 1));
    }
}
