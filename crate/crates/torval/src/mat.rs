//! Exact dense matrices over the integers and the rationals.
//!
//! Everything in this crate reduces to linear algebra done here: Smith normal
//! form with unimodular transforms (and their inverses), integer kernels and
//! linear solves, and rational Gaussian elimination. All arithmetic is
//! arbitrary precision; no floating point enters any of these routines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::validation("ragged matrix rows"));
        }
        Ok(IntegerMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from machine integers, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = -a.clone();
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    /// Submatrix picking the given rows and columns, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zero(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|x| BigRational::from(x.clone()))
                .collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Empty matrix
    /// determinant is 1.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !m[(i, k)].is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = m[(k, j)].clone();
                            m[(k, j)] = m[(i, j)].clone();
                            m[(i, j)] = tmp;
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = &num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Smith normal form `A = U * S * V` with unimodular `U`, `V`.
    pub fn smith_normal_form(&self) -> SnfDecomposition {
        smith_normal_form(self)
    }

    /// Basis of the integer kernel lattice `{x : A x = 0}`, returned as the
    /// columns of a matrix. The basis spans a saturated sublattice.
    pub fn kernel_basis(&self) -> IntegerMatrix {
        let snf = self.smith_normal_form();
        let rank = snf.rank();
        let idx: Vec<usize> = (rank..self.cols).collect();
        snf.v_inv.select(&(0..self.cols).collect::<Vec<_>>(), &idx)
    }

    /// One integer solution of `A x = b`, if any exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let snf = self.smith_normal_form();
        let y = snf.u_inv.apply(b);
        let mut z = vec![BigInt::zero(); self.cols];
        for (i, yi) in y.iter().enumerate() {
            let d = if i < self.cols.min(self.rows) {
                snf.s[(i, i)].clone()
            } else {
                BigInt::zero()
            };
            if d.is_zero() {
                if !yi.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = yi.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            }
        }
        Some(snf.v_inv.apply(&z))
    }

    /// Does the column lattice of `self` contain `b`?
    pub fn lattice_contains(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Result of Smith normal form: `A = U * S * V` where `U`, `V` are unimodular
/// and `S` is diagonal with a divisibility chain `d_1 | d_2 | ...` followed by
/// zeros. The inverse transforms are carried along because kernel and solve
/// computations need them.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    u_inv: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl SnfDecomposition {
    pub fn u_inv(&self) -> &IntegerMatrix {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &IntegerMatrix {
        &self.v_inv
    }

    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).take_while(|&i| !self.s[(i, i)].is_zero()).count()
    }

    /// Nonzero diagonal entries, in chain order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct SnfState {
    s: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl SnfState {
    // S <- E S with E = swap(i,j); U <- U E, U_inv <- E U_inv
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.s.cols() {
            let tmp = self.s[(i, c)].clone();
            self.s[(i, c)] = self.s[(j, c)].clone();
            self.s[(j, c)] = tmp;
        }
        for r in 0..self.u.rows() {
            let tmp = self.u[(r, i)].clone();
            self.u[(r, i)] = self.u[(r, j)].clone();
            self.u[(r, j)] = tmp;
        }
        for c in 0..self.u_inv.cols() {
            let tmp = self.u_inv[(i, c)].clone();
            self.u_inv[(i, c)] = self.u_inv[(j, c)].clone();
            self.u_inv[(j, c)] = tmp;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.s.rows() {
            let tmp = self.s[(r, i)].clone();
            self.s[(r, i)] = self.s[(r, j)].clone();
            self.s[(r, j)] = tmp;
        }
        for c in 0..self.v.cols() {
            let tmp = self.v[(i, c)].clone();
            self.v[(i, c)] = self.v[(j, c)].clone();
            self.v[(j, c)] = tmp;
        }
        for r in 0..self.v_inv.rows() {
            let tmp = self.v_inv[(r, i)].clone();
            self.v_inv[(r, i)] = self.v_inv[(r, j)].clone();
            self.v_inv[(r, j)] = tmp;
        }
    }

    // row_i of S += k * row_j;  U: col_j -= k * col_i;  U_inv: row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.s.cols() {
            let delta = k * &self.s[(j, c)];
            self.s[(i, c)] += delta;
        }
        for r in 0..self.u.rows() {
            let delta = k * &self.u[(r, i)];
            self.u[(r, j)] -= delta;
        }
        for c in 0..self.u_inv.cols() {
            let delta = k * &self.u_inv[(j, c)];
            self.u_inv[(i, c)] += delta;
        }
    }

    // col_j of S += k * col_i;  V: row_i -= k * row_j;  V_inv: col_j += k * col_i
    fn add_col(&mut self, j: usize, i: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.s.rows() {
            let delta = k * &self.s[(r, i)];
            self.s[(r, j)] += delta;
        }
        for c in 0..self.v.cols() {
            let delta = k * &self.v[(j, c)];
            self.v[(i, c)] -= delta;
        }
        for r in 0..self.v_inv.rows() {
            let delta = k * &self.v_inv[(r, i)];
            self.v_inv[(r, j)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.s.cols() {
            self.s[(i, c)] = -self.s[(i, c)].clone();
        }
        for r in 0..self.u.rows() {
            self.u[(r, i)] = -self.u[(r, i)].clone();
        }
        for c in 0..self.u_inv.cols() {
            self.u_inv[(i, c)] = -self.u_inv[(i, c)].clone();
        }
    }
}

/// Smith normal form with the smallest-nonzero-pivot strategy: at each step
/// the remaining entry of least absolute value is moved to the pivot, which
/// keeps intermediate entries small at the scales this crate works at.
pub fn smith_normal_form(a: &IntegerMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut st = SnfState {
        s: a.clone(),
        u: IntegerMatrix::identity(m),
        u_inv: IntegerMatrix::identity(m),
        v: IntegerMatrix::identity(n),
        v_inv: IntegerMatrix::identity(n),
    };

    let mut t = 0;
    while t < m.min(n) {
        // locate smallest nonzero entry in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if st.s[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if st.s[(pi, pj)].abs() <= st.s[(i, j)].abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);

        'clear: loop {
            // clear column t below the pivot
            for i in t + 1..m {
                if st.s[(i, t)].is_zero() {
                    continue;
                }
                let q = rounded_div(&st.s[(i, t)], &st.s[(t, t)]);
                st.add_row(i, t, &-q);
                if !st.s[(i, t)].is_zero() {
                    // remainder is strictly smaller; promote it to pivot
                    st.swap_rows(t, i);
                    continue 'clear;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..n {
                if st.s[(t, j)].is_zero() {
                    continue;
                }
                let q = rounded_div(&st.s[(t, j)], &st.s[(t, t)]);
                st.add_col(j, t, &-q);
                if !st.s[(t, j)].is_zero() {
                    st.swap_cols(t, j);
                    continue 'clear;
                }
            }
            // pivot must divide every remaining entry
            let mut fixed = true;
            'divcheck: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&st.s[(i, j)] % &st.s[(t, t)]).is_zero() {
                        st.add_row(t, i, &BigInt::one());
                        fixed = false;
                        break 'divcheck;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if st.s[(t, t)].is_negative() {
            st.negate_row(t);
        }
        t += 1;
    }

    SnfDecomposition {
        u: st.u,
        s: st.s,
        v: st.v,
        u_inv: st.u_inv,
        v_inv: st.v_inv,
    }
}

/// Division rounded to nearest, so remainders satisfy |r| <= |d|/2.
fn rounded_div(a: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(d);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > d.abs() {
        if (a.is_negative()) == (d.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::validation("ragged matrix rows"));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from(BigInt::from(x)))
                        .collect()
                })
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut out = Self::zero(self.rows, cols.len());
        for i in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(i, c)].clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Kronecker product, with `self` providing the coarse block structure.
    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)].is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] =
                            &self[(i, j)] * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot column indices.
    /// Pivots are chosen by the first-nonzero rule, which makes every
    /// downstream solve deterministic.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let tmp = m[(r, j)].clone();
                    m[(r, j)] = m[(p, j)].clone();
                    m[(p, j)] = tmp;
                }
            }
            let inv = m[(r, c)].recip();
            for j in 0..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let delta = &f * &m[(r, j)];
                        m[(i, j)] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by Gaussian elimination; empty determinant is 1.
    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                for j in 0..n {
                    let tmp = m[(c, j)].clone();
                    m[(c, j)] = m[(p, j)].clone();
                    m[(p, j)] = tmp;
                }
                det = -det;
            }
            det *= m[(c, c)].clone();
            let inv = m[(c, c)].recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let delta = &f * &m[(c, j)];
                    m[(i, j)] -= delta;
                }
            }
        }
        det
    }

    /// One solution of `self * x = b` with free variables set to zero
    /// (first-pivot rule), or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let mut aug = Self::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the rhs column
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Columnwise solve `self * X = B`.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "rhs row mismatch");
        let mut cols = Vec::with_capacity(b.cols);
        for j in 0..b.cols {
            cols.push(self.solve(&b.column(j))?);
        }
        let mut out = Self::zero(self.cols, b.cols);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..self.cols {
                out[(i, j)] = col[i].clone();
            }
        }
        Some(out)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        self.solve_matrix(&Self::identity(self.rows))
    }

    /// A basis for the column space: the pivot columns of `self`.
    pub fn column_space_basis(&self) -> Self {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}
