//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! Elements are rational coefficient vectors on the power basis
//! `1, zeta, ..., zeta^{phi(m)-1}`, reduced modulo the m-th cyclotomic
//! polynomial. Since that polynomial is irreducible over Q the coefficient
//! ring is a field, so every nonzero element has an exact inverse via the
//! extended Euclidean algorithm. Floating point appears in exactly one
//! place: the archimedean absolute values used by regulators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub fn euler_phi(m: u32) -> u32 {
    assert!(m >= 1);
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Units of Z/m, ascending.
pub fn units_mod(m: u32) -> Vec<u32> {
    (1..=m)
        .filter(|&k| gcd_u32(k % m, m) == 1)
        .map(|k| k % m)
        .collect()
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Monic integer coefficients of the m-th cyclotomic polynomial,
/// little-endian. Computed by dividing x^m - 1 by the proper-divisor
/// cyclotomic polynomials, and memoized.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    let result = compute_cyclotomic(m);
    cache.lock().unwrap().insert(m, result.clone());
    result
}

fn compute_cyclotomic(m: u32) -> Vec<BigInt> {
    assert!(m >= 1);
    if m == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    // x^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = int_poly_exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division of integer polynomials (little-endian, divisor monic).
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            let delta = &c * dj;
            rem[i - dd + j] -= delta;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

fn modulus_rational(m: u32) -> Vec<BigRational> {
    cyclotomic_polynomial(m)
        .into_iter()
        .map(BigRational::from)
        .collect()
}

/// An element of Q(zeta_m) on the power basis, reduced mod the m-th
/// cyclotomic polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElement {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycloElement {
    pub fn zero(m: u32) -> Self {
        CycloElement {
            conductor: m,
            coeffs: vec![BigRational::zero(); euler_phi(m) as usize],
        }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u32, q: BigRational) -> Self {
        let mut e = Self::zero(m);
        if !e.coeffs.is_empty() {
            e.coeffs[0] = q;
        } else {
            // phi(1) = ... never happens: phi(m) >= 1 for all m >= 1
            unreachable!("phi(m) >= 1");
        }
        e
    }

    pub fn from_integer(m: u32, n: i64) -> Self {
        Self::from_rational(m, BigRational::from(BigInt::from(n)))
    }

    /// `zeta_m^k`, any integer exponent.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let k = k.rem_euclid(i64::from(m)) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Self::reduce_raw(m, raw)
    }

    /// Coefficient vector of length phi(m), already reduced.
    pub fn from_coeffs(m: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != euler_phi(m) as usize {
            return Err(Error::validation(format!(
                "coefficient vector has length {}, expected phi({m}) = {}",
                coeffs.len(),
                euler_phi(m)
            )));
        }
        Ok(CycloElement {
            conductor: m,
            coeffs,
        })
    }

    fn reduce_raw(m: u32, mut raw: Vec<BigRational>) -> Self {
        let modulus = modulus_rational(m);
        let deg = modulus.len() - 1;
        let mut i = raw.len();
        while i > deg {
            i -= 1;
            let c = raw[i].clone();
            if c.is_zero() {
                continue;
            }
            raw[i] = BigRational::zero();
            for (j, mj) in modulus.iter().enumerate().take(deg) {
                let delta = &c * mj;
                raw[i - deg + j] -= delta;
            }
        }
        raw.resize(deg, BigRational::zero());
        CycloElement {
            conductor: m,
            coeffs: raw,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one(self.conductor)
    }

    fn same_conductor(&self, other: &Self) -> Result<()> {
        if self.conductor != other.conductor {
            return Err(Error::validation(format!(
                "conductor mismatch: {} vs {}",
                self.conductor, other.conductor
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloElement {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        CycloElement {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_conductor(other)?;
        let n = self.coeffs.len();
        if n == 0 {
            return Ok(self.clone());
        }
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                raw[i + j] += prod;
            }
        }
        Ok(Self::reduce_raw(self.conductor, raw))
    }

    /// Exact inverse via the extended Euclidean algorithm in `Q[x]` modulo the
    /// cyclotomic polynomial, which is irreducible, so only zero fails.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Check("zero is not invertible".into()));
        }
        let modulus = modulus_rational(self.conductor);
        // extended gcd of (self, modulus): coefficients s with s*self = gcd
        let mut r0 = modulus;
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_div_rem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd, a nonzero constant since the modulus is irreducible
        assert_eq!(r0.len(), 1, "cyclotomic modulus is irreducible");
        let scale = r0[0].recip();
        let coeffs: Vec<BigRational> = s0.iter().map(|c| c * &scale).collect();
        Ok(Self::reduce_raw(self.conductor, coeffs))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn power(&self, k: i64) -> Result<Self> {
        let (mut base, mut e) = if k < 0 {
            (self.inverse()?, k.unsigned_abs())
        } else {
            (self.clone(), k as u64)
        };
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base)?;
            }
            base = base.multiply(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// The Galois automorphism `zeta -> zeta^k`, for k a unit mod m.
    pub fn galois_apply(&self, k: u32) -> Result<Self> {
        let m = self.conductor;
        if gcd_u32(k % m, m) != 1 {
            return Err(Error::validation(format!("{k} is not a unit modulo {m}")));
        }
        let mut raw = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = ((i as u64 * u64::from(k)) % u64::from(m)) as usize;
            raw[t] += c;
        }
        Ok(Self::reduce_raw(m, raw))
    }

    /// Product of all Galois conjugates: the absolute norm down to Q, as a
    /// rational number.
    pub fn absolute_norm(&self) -> Result<BigRational> {
        let mut prod = Self::one(self.conductor);
        for k in units_mod(self.conductor) {
            prod = prod.multiply(&self.galois_apply(k)?)?;
        }
        for c in prod.coeffs.iter().skip(1) {
            if !c.is_zero() {
                return Err(Error::Check("norm computation left the rationals".into()));
            }
        }
        Ok(prod.coeffs[0].clone())
    }

    /// Does the element have exact multiplicative order w?
    pub fn has_exact_order(&self, w: u32) -> bool {
        if w == 0 || self.is_zero() {
            return false;
        }
        let pw = |e: u32| self.power(i64::from(e)).expect("nonneg power");
        if !pw(w).is_one() {
            return false;
        }
        let mut n = w;
        let mut p = 2;
        while p * p <= w {
            if n.is_multiple_of(p) {
                if pw(w / p).is_one() {
                    return false;
                }
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 && pw(w / n).is_one() {
            return false;
        }
        true
    }

    /// Complex image under `zeta -> exp(2 pi i k / m)` as (re, im).
    pub fn embed(&self, k: u32) -> (f64, f64) {
        let m = f64::from(self.conductor);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = rational_to_f64(c);
            let angle = 2.0 * std::f64::consts::PI * f64::from(k) * (i as f64) / m;
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re, im)
    }

    /// Logarithm of the normalized absolute value at the complex place given
    /// by `zeta -> exp(2 pi i k / m)`: the square of the usual modulus, so
    /// paired conjugate embeddings are counted once.
    pub fn log_abs_at_place(&self, k: u32) -> Result<f64> {
        if self.is_zero() {
            return Err(Error::Check("log of the absolute value of zero".into()));
        }
        if gcd_u32(k % self.conductor, self.conductor) != 1 {
            return Err(Error::validation(format!(
                "{k} is not a unit modulo {}",
                self.conductor
            )));
        }
        let (re, im) = self.embed(k);
        Ok((re * re + im * im).ln())
    }

    /// Relative norm `a * sigma(a)` to the subfield fixed by the order-two
    /// automorphism `sigma`; validated to land in that subfield.
    pub fn norm_to_quadratic_subfield(&self, sigma: u32) -> Result<Self> {
        let m = self.conductor;
        if gcd_u32(sigma % m, m) != 1 {
            return Err(Error::validation(format!(
                "{sigma} is not a unit modulo {m}"
            )));
        }
        if sigma % m == 1 % m {
            return Err(Error::validation("sigma must be a nontrivial automorphism"));
        }
        if (u64::from(sigma) * u64::from(sigma)) % u64::from(m) != 1 {
            return Err(Error::validation(format!(
                "sigma = {sigma} does not generate an order-2 subgroup mod {m}"
            )));
        }
        let norm = self.multiply(&self.galois_apply(sigma)?)?;
        if norm.galois_apply(sigma)? != norm {
            return Err(Error::Check(
                "norm is not fixed by sigma; the automorphism data is inconsistent".into(),
            ));
        }
        Ok(norm)
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let prod = x * y;
            out[i + j] += prod;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_div_rem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty(), "division by the zero polynomial");
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    let lead = den[dd].recip();
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = &rem[i] * &lead;
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            let delta = &c * dj;
            rem[i - dd + j] -= delta;
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn zeta(k: i64) -> CycloElement {
        CycloElement::zeta_pow(12, k)
    }

    /// 1 - zeta^5 in Q(zeta_12).
    fn one_minus_zeta5() -> CycloElement {
        CycloElement::one(12).sub(&zeta(5)).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            v.into_iter().map(|x| i64::try_from(x).unwrap()).collect()
        };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(units_mod(12), vec![1, 5, 7, 11]);
    }

    #[test]
    fn roots_of_unity_multiply() {
        // zeta * zeta^11 = 1
        assert!(zeta(1).multiply(&zeta(11)).unwrap().is_one());
        // zeta^6 = -1
        assert_eq!(zeta(6), CycloElement::from_integer(12, -1));
        // a * 1 = a
        let a = one_minus_zeta5();
        assert_eq!(a.multiply(&CycloElement::one(12)).unwrap(), a);
        // conductor mismatch is an error
        assert!(zeta(1).multiply(&CycloElement::one(4)).is_err());
    }

    #[test]
    fn unit_square_identity() {
        // zeta * (1 - zeta^5)^2 = 2 + 2*zeta - zeta^3, which is 2 + sqrt(3)
        // written on the power basis (sqrt(3) = zeta + zeta^11).
        let u = one_minus_zeta5();
        let lhs = u.power(2).unwrap().multiply(&zeta(1)).unwrap();
        let expected = CycloElement::from_coeffs(
            12,
            vec![
                BigRational::from(BigInt::from(2)),
                BigRational::from(BigInt::from(2)),
                BigRational::zero(),
                BigRational::from(BigInt::from(-1)),
            ],
        )
        .unwrap();
        assert_eq!(lhs, expected);
        let sqrt3 = zeta(1).add(&zeta(11)).unwrap();
        assert_eq!(lhs, CycloElement::from_integer(12, 2).add(&sqrt3).unwrap());
    }

    #[test]
    fn galois_action() {
        // sigma_5 fixes i = zeta^3 and sends 1 - zeta^5 to 1 - zeta
        assert_eq!(zeta(3).galois_apply(5).unwrap(), zeta(3));
        assert_eq!(zeta(1).galois_apply(1).unwrap(), zeta(1));
        let u = one_minus_zeta5();
        let expected = CycloElement::one(12).sub(&zeta(1)).unwrap();
        assert_eq!(u.galois_apply(5).unwrap(), expected);
        // non-units are rejected
        assert!(zeta(1).galois_apply(6).is_err());
    }

    #[test]
    fn relative_norms() {
        // N(zeta) = zeta * zeta^5 = zeta^6 = -1
        let n = zeta(1).norm_to_quadratic_subfield(5).unwrap();
        assert_eq!(n, CycloElement::from_integer(12, -1));
        // N(1 - zeta^5) = (1 - zeta^5)(1 - zeta) = -zeta^3 = zeta^9,
        // a generator of the roots of unity of Q(i)
        let n = one_minus_zeta5().norm_to_quadratic_subfield(5).unwrap();
        assert_eq!(n, zeta(9));
        assert!(n.has_exact_order(4));
        // N(1) = 1
        assert!(CycloElement::one(12)
            .norm_to_quadratic_subfield(5)
            .unwrap()
            .is_one());
        // sigma must have order 2
        assert!(zeta(1).norm_to_quadratic_subfield(1).is_err());
    }

    #[test]
    fn inverses_and_powers() {
        let u = one_minus_zeta5();
        assert!(u.multiply(&u.inverse().unwrap()).unwrap().is_one());
        assert!(u
            .power(-3)
            .unwrap()
            .multiply(&u.power(3).unwrap())
            .unwrap()
            .is_one());
        assert!(CycloElement::zero(12).inverse().is_err());
        assert!(CycloElement::zero(12).power(-1).is_err());
        // the declared inverse relation: (1 - zeta^5)^-1 = zeta^-9 (1 - zeta)
        let direct = u.inverse().unwrap();
        let via_norm = zeta(-9)
            .multiply(&CycloElement::one(12).sub(&zeta(1)).unwrap())
            .unwrap();
        assert_eq!(direct, via_norm);
    }

    #[test]
    fn embedding_values() {
        // log |1 - zeta^5|^2 at zeta -> exp(2 pi i / 12) is log(2 + sqrt(3))
        let u = one_minus_zeta5();
        let expected = (2.0 + 3.0_f64.sqrt()).ln();
        assert!((u.log_abs_at_place(1).unwrap() - expected).abs() < 1e-12);
        // roots of unity have absolute value 1
        for k in [1u32, 5, 7, 11] {
            assert!(zeta(5).log_abs_at_place(k).unwrap().abs() < 1e-12);
        }
        // homomorphism property
        let a = zeta(2).add(&CycloElement::from_integer(12, 3)).unwrap();
        let b = one_minus_zeta5();
        let ab = a.multiply(&b).unwrap();
        assert!(
            (ab.log_abs_at_place(5).unwrap()
                - a.log_abs_at_place(5).unwrap()
                - b.log_abs_at_place(5).unwrap())
            .abs()
                < 1e-12
        );
        assert!(CycloElement::zero(12).log_abs_at_place(1).is_err());
    }

    #[test]
    fn unit_product_formula() {
        // for units of Z[zeta_12], the sum of normalized log absolute values
        // over inequivalent complex embeddings vanishes
        for (a, b) in [(1i64, 1i64), (5, 2), (0, 3), (7, -2)] {
            let u = zeta(a)
                .multiply(&one_minus_zeta5().power(b).unwrap())
                .unwrap();
            let total = u.log_abs_at_place(1).unwrap() + u.log_abs_at_place(5).unwrap();
            assert!(total.abs() < 1e-10, "product formula failed: {total}");
            assert_eq!(u.absolute_norm().unwrap().abs(), BigRational::one());
        }
    }

    #[test]
    fn small_conductors() {
        // m = 3: phi = 2, basis 1, zeta_3
        let w = CycloElement::zeta_pow(3, 1);
        assert!(w.power(3).unwrap().is_one());
        assert!(w.has_exact_order(3));
        // 1 + zeta + zeta^2 = 0
        let sum = CycloElement::one(3)
            .add(&w)
            .unwrap()
            .add(&w.power(2).unwrap())
            .unwrap();
        assert!(sum.is_zero());
        assert_eq!(w.galois_apply(2).unwrap(), w.power(2).unwrap());
        assert!(w.log_abs_at_place(1).unwrap().abs() < 1e-12);

        // m = 4: the Gaussian field itself
        let i = CycloElement::zeta_pow(4, 1);
        assert_eq!(i.power(2).unwrap(), CycloElement::from_integer(4, -1));
        assert!(i.has_exact_order(4));
        let x = CycloElement::from_integer(4, 2).add(&i).unwrap(); // 2 + i
        assert_eq!(
            x.absolute_norm().unwrap(),
            BigRational::from(BigInt::from(5))
        );
        assert!((x.log_abs_at_place(1).unwrap() - 5.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn exact_orders() {
        assert!(zeta(1).has_exact_order(12));
        assert!(!zeta(1).has_exact_order(6));
        assert!(zeta(3).has_exact_order(4));
        assert!(zeta(2).has_exact_order(6));
        assert!(CycloElement::from_integer(12, -1).has_exact_order(2));
        assert!(!one_minus_zeta5().has_exact_order(12));
    }

    proptest! {
        #[test]
        fn ring_axioms(
            a in proptest::collection::vec(-6i64..=6, 4),
            b in proptest::collection::vec(-6i64..=6, 4),
            c in proptest::collection::vec(-6i64..=6, 4),
        ) {
            let mk = |v: &Vec<i64>| CycloElement::from_coeffs(
                12,
                v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect(),
            ).unwrap();
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            // associativity and distributivity, exactly
            prop_assert_eq!(
                a.multiply(&b).unwrap().multiply(&c).unwrap(),
                a.multiply(&b.multiply(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.multiply(&b.add(&c).unwrap()).unwrap(),
                a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap()
            );
            // zeta^m = 1
            prop_assert!(CycloElement::zeta_pow(12, 12).is_one());
        }

        #[test]
        fn galois_is_ring_automorphism(
            a in proptest::collection::vec(-6i64..=6, 4),
            b in proptest::collection::vec(-6i64..=6, 4),
            k in prop::sample::select(vec![1u32, 5, 7, 11]),
            j in prop::sample::select(vec![1u32, 5, 7, 11]),
        ) {
            let mk = |v: &Vec<i64>| CycloElement::from_coeffs(
                12,
                v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect(),
            ).unwrap();
            let (a, b) = (mk(&a), mk(&b));
            prop_assert_eq!(
                a.multiply(&b).unwrap().galois_apply(k).unwrap(),
                a.galois_apply(k).unwrap().multiply(&b.galois_apply(k).unwrap()).unwrap()
            );
            // sigma_k . sigma_j = sigma_{kj mod m}
            prop_assert_eq!(
                a.galois_apply(j).unwrap().galois_apply(k).unwrap(),
                a.galois_apply((k * j) % 12).unwrap()
            );
        }
    }
}
