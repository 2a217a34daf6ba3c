//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CycNum`] stores its coordinates on the power basis `1, ζ_N, …, ζ_N^(φ(N)-1)`
//! after reduction by the `N`-th cyclotomic polynomial, with one shared positive
//! denominator. Two values at the same conductor are equal iff their stored
//! coordinates are equal; values at different conductors are compared after
//! lifting both to the least common multiple.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
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

pub(crate) fn divisors(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n > 0);
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut rem = vec![0i64; n as usize + 1];
    rem[0] = -1;
    rem[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let divisor = cyclotomic_polynomial(d);
        rem = exact_monic_division(&rem, &divisor);
    }
    let poly = Arc::new(rem);
    poly_cache()
        .lock()
        .unwrap()
        .insert(n, Arc::clone(&poly));
    poly
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut r = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = r[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                r[i + j] = r[i + j]
                    .checked_sub(c.checked_mul(d).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// Reduce a dense exponent vector (any length) to canonical coordinates at conductor `n`.
fn reduce(n: u32, mut dense: Vec<BigInt>) -> Vec<BigInt> {
    let n_us = n as usize;
    if dense.len() > n_us {
        for i in n_us..dense.len() {
            let c = std::mem::take(&mut dense[i]);
            if !c.is_zero() {
                dense[i % n_us] += c;
            }
        }
        dense.truncate(n_us);
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    if dense.len() < phi {
        dense.resize(phi, BigInt::zero());
        return dense;
    }
    for i in (phi..dense.len()).rev() {
        let c = std::mem::take(&mut dense[i]);
        if c.is_zero() {
            continue;
        }
        for (j, &p) in poly.iter().enumerate().take(phi) {
            if p != 0 {
                dense[i - phi + j] -= &c * p;
            }
        }
    }
    dense.truncate(phi);
    dense
}

/// An exact element of a cyclotomic field `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct CycNum {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(conductor: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut out = CycNum {
            conductor,
            num,
            den,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    /// Canonical representative of `Σ c_k ζ_N^k`; exponents are taken mod `N`.
    pub fn canonicalize<I>(conductor: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        let terms: Vec<(i64, BigRational)> = terms.into_iter().collect();
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let mut dense = vec![BigInt::zero(); conductor as usize];
        for (k, q) in terms {
            let idx = k.rem_euclid(conductor as i64) as usize;
            dense[idx] += q.numer() * (&den / q.denom());
        }
        Ok(Self::from_parts(conductor, reduce(conductor, dense), den))
    }

    pub fn zero() -> Self {
        CycNum {
            conductor: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        CycNum {
            conductor: 1,
            num: vec![BigInt::from(v)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::from_parts(1, vec![q.numer().clone()], q.denom().clone())
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u32, k: i64) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let mut dense = vec![BigInt::zero(); n as usize];
        dense[k.rem_euclid(n as i64) as usize] = BigInt::one();
        Self::from_parts(n, reduce(n, dense), BigInt::one())
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Exact stored representation; only meaningful to compare at a fixed conductor.
    pub(crate) fn fingerprint(&self) -> (u32, Vec<BigInt>, BigInt) {
        (self.conductor, self.num.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_one())
    }

    /// Coordinates on the power basis as rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// The rational value, iff the canonical form is supported on exponent 0.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Re-express at conductor `m`, which must be a multiple of the current conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(
            m > 0 && m % self.conductor == 0,
            "cannot lift conductor {} to {}",
            self.conductor,
            m
        );
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut dense = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                dense[j * step] = c.clone();
            }
        }
        Self::from_parts(m, reduce(m, dense), self.den.clone())
    }

    /// Re-express at conductor `m` (a divisor of the current conductor), if the
    /// value lies in `Q(ζ_m)`.
    pub fn lower(&self, m: u32) -> Option<Self> {
        if m == 0 || self.conductor % m != 0 {
            return None;
        }
        if m == self.conductor {
            return Some(self.clone());
        }
        if let Some(q) = self.to_rational() {
            return Some(Self::from_rational(&q).lift(m));
        }
        let phi_m = totient(m) as usize;
        let columns: Vec<Vec<BigRational>> = (0..phi_m)
            .map(|j| CycNum::zeta(m, j as i64).lift(self.conductor).coefficients())
            .collect();
        let solution = solve_rational(&columns, &self.coefficients())?;
        let terms = solution.into_iter().enumerate().map(|(j, q)| (j as i64, q));
        Some(Self::canonicalize(m, terms).expect("positive conductor"))
    }

    /// The same value at its minimal conductor.
    pub fn reduced(&self) -> Self {
        if let Some(q) = self.to_rational() {
            return Self::from_rational(&q);
        }
        for m in divisors(self.conductor) {
            if m == self.conductor {
                break;
            }
            if m % 4 == 2 {
                continue;
            }
            if let Some(v) = self.lower(m) {
                return v;
            }
        }
        self.clone()
    }

    fn lifted_pair(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            let m = self.conductor.lcm(&other.conductor);
            (self.lift(m), other.lift(m))
        }
    }

    fn with_common<R>(&self, other: &Self, f: impl FnOnce(&Self, &Self) -> R) -> R {
        if self.conductor == other.conductor {
            f(self, other)
        } else {
            let (a, b) = self.lifted_pair(other);
            f(&a, &b)
        }
    }

    /// Apply the Galois automorphism `ζ_N ↦ ζ_N^k` (`k` coprime to `N`).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor as i64;
        debug_assert_eq!(k.rem_euclid(n).gcd(&n), 1);
        let mut dense = vec![BigInt::zero(); self.conductor as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                dense[(j as i64 * k).rem_euclid(n) as usize] += c;
            }
        }
        Self::from_parts(self.conductor, reduce(self.conductor, dense), self.den.clone())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        self.mul(&self.conjugates_product())
            .to_rational()
            .expect("field norm is rational")
    }

    fn conjugates_product(&self) -> Self {
        let n = self.conductor as i64;
        let mut acc = CycNum::one();
        for k in 2..n.max(2) {
            if k.gcd(&n) == 1 {
                acc = acc.mul(&self.galois(k));
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(&q.recip()).lift(self.conductor));
        }
        let rest = self.conjugates_product();
        let norm = self
            .mul(&rest)
            .to_rational()
            .expect("field norm is rational");
        Ok(rest.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_parts(
            self.conductor,
            self.num.iter().map(|c| c * q.numer()).collect(),
            &self.den * q.denom(),
        )
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Self::from_parts(
            self.conductor,
            self.num.iter().map(|c| c * k).collect(),
            self.den.clone(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycNum::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn add_impl(&self, other: &Self, sign: i8) -> Self {
        self.with_common(other, |a, b| {
            let num = a
                .num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if sign > 0 {
                        l + r
                    } else {
                        l - r
                    }
                })
                .collect();
            Self::from_parts(a.conductor, num, &a.den * &b.den)
        })
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.conductor == 1 {
            return other.scale(&BigRational::new(self.num[0].clone(), self.den.clone()));
        }
        if other.conductor == 1 {
            return self.scale(&BigRational::new(other.num[0].clone(), other.den.clone()));
        }
        self.with_common(other, |a, b| {
            let phi = a.num.len();
            let mut dense = vec![BigInt::zero(); 2 * phi - 1];
            for (i, x) in a.num.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.num.iter().enumerate() {
                    if !y.is_zero() {
                        dense[i + j] += x * y;
                    }
                }
            }
            Self::from_parts(a.conductor, reduce(a.conductor, dense), &a.den * &b.den)
        })
    }

    /// Value under the embedding `ζ_N = exp(2πi/N)`.
    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let n = self.conductor as f64;
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let angle = 2.0 * std::f64::consts::PI * j as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, angle)
            })
            .sum()
    }

    /// Total order on values: compares power-basis coordinates at a common
    /// conductor, highest rational first at the first differing position.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.with_common(other, |a, b| {
            for (x, y) in a.num.iter().zip(&b.num) {
                let l = x * &b.den;
                let r = y * &a.den;
                match r.cmp(&l) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }

    /// Sparse `exponent -> rational` map of the minimal-conductor form.
    pub fn sparse_coefficients(&self) -> (u32, BTreeMap<u32, BigRational>) {
        let r = self.reduced();
        let map = r
            .coefficients()
            .into_iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(k, q)| (k as u32, q))
            .collect();
        (r.conductor, map)
    }
}

/// Solve `Σ_j x_j · columns[j] = target` exactly; `None` if inconsistent.
fn solve_rational(columns: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = target.len();
    let cols = columns.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=cols {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// `√n` as an element of `Q(ζ_{4n})`, the positive real root under the standard embedding.
///
/// Built from quadratic Gauss sums over the odd prime factors and `ζ_8 + ζ_8^{-1}`
/// for the prime 2.
pub fn integer_sqrt_embed(n: u64) -> CycNum {
    assert!(n >= 1, "square root of zero requested");
    let mut acc = CycNum::one();
    let mut square_part: u64 = 1;
    for (p, e) in factorize(n) {
        square_part *= p.pow(e / 2);
        if e % 2 == 1 {
            acc = acc.mul(&prime_sqrt(p));
        }
    }
    acc.scale_int(square_part as i64)
}

fn prime_sqrt(p: u64) -> CycNum {
    if p == 2 {
        return CycNum::zeta(8, 1).add(&CycNum::zeta(8, -1));
    }
    let pc = p as u32;
    let terms = (1..p).map(|a| {
        let sign = legendre(a, p);
        (a as i64, BigRational::from_integer(BigInt::from(sign)))
    });
    let gauss = CycNum::canonicalize(pc, terms).expect("odd prime conductor");
    if p % 4 == 1 {
        gauss
    } else {
        // the Gauss sum is i·√p here
        gauss.mul(&CycNum::zeta(4, 1)).neg()
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = (p - 1) / 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        self.with_common(other, |a, b| a.den == b.den && a.num == b.num)
    }
}

impl Eq for CycNum {}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(self, rhs)
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, 1));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, -1));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::zero(), |a, b| a + b)
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::from_int(v)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, coeffs) = self.sparse_coefficients();
        if coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, q) in coeffs {
            let (sign, mag) = if q.is_negative() { ("-", -q) } else { ("+", q) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{n}^{k}")?,
                (_, false) => write!(f, "{mag}*z{n}^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    conductor: u32,
    coeffs: BTreeMap<String, String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (conductor, coeffs) = self.sparse_coefficients();
        CycNumRepr {
            conductor,
            coeffs: coeffs
                .into_iter()
                .map(|(k, q)| (k.to_string(), q.to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(repr.coeffs.len());
        for (k, q) in &repr.coeffs {
            let k = i64::from_str(k).map_err(|e| D::Error::custom(format!("exponent `{k}`: {e}")))?;
            let q = BigRational::from_str(q)
                .map_err(|e| D::Error::custom(format!("coefficient `{q}`: {e}")))?;
            terms.push((k, q));
        }
        CycNum::canonicalize(repr.conductor, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len() - 1, 48);
        assert!(p105.contains(&-2));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(
            CycNum::canonicalize(4, [(2, q(1, 1))]).unwrap(),
            CycNum::from_int(-1)
        );
        assert_eq!(
            CycNum::canonicalize(3, [(1, q(1, 1)), (2, q(1, 1))]).unwrap(),
            CycNum::from_int(-1)
        );
        assert_eq!(
            CycNum::canonicalize(1, [(0, q(5, 1))]).unwrap(),
            CycNum::from_int(5)
        );
        assert_eq!(
            CycNum::canonicalize(0, [(0, q(1, 1))]),
            Err(Error::ZeroConductor)
        );
        // negative and oversized exponents wrap
        assert_eq!(
            CycNum::canonicalize(5, [(-1, q(1, 1))]).unwrap(),
            CycNum::zeta(5, 4)
        );
    }

    #[test]
    fn field_op_examples() {
        assert_eq!(CycNum::zeta(8, 1) * CycNum::zeta(8, 1), CycNum::zeta(4, 1));
        assert_eq!(CycNum::zeta(5, 1).conj(), CycNum::zeta(5, 4));
        let d = CycNum::zeta(3, 1) - CycNum::zeta(3, 2);
        assert_eq!(&d * &d, CycNum::from_int(-3));
        assert_eq!(
            CycNum::one().checked_div(&CycNum::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn recognize_rational_examples() {
        let s = CycNum::zeta(3, 1) + CycNum::zeta(3, 2);
        assert_eq!(s.to_rational(), Some(q(-1, 1)));
        assert_eq!(CycNum::zeta(5, 1).to_rational(), None);
        let d = CycNum::zeta(4, 1) - CycNum::zeta(4, -1);
        assert_eq!((&d * &d).to_rational(), Some(q(-4, 1)));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(integer_sqrt_embed(1), CycNum::one());
        assert_eq!(
            integer_sqrt_embed(2),
            CycNum::zeta(8, 1) + CycNum::zeta(8, -1)
        );
        let five = CycNum::zeta(5, 1) - CycNum::zeta(5, 2) - CycNum::zeta(5, 3) + CycNum::zeta(5, 4);
        assert_eq!(integer_sqrt_embed(5), five);
    }

    #[test]
    fn sqrt_squares_and_is_positive() {
        for n in 1..=200u64 {
            let s = integer_sqrt_embed(n);
            assert_eq!(&s * &s, CycNum::from_int(n as i64), "n = {n}");
            assert_eq!((4 * n as u32) % s.conductor(), 0, "conductor for n = {n}");
            let z = s.to_complex();
            assert!((z.re - (n as f64).sqrt()).abs() < 1e-9 && z.im.abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn inverse_and_division() {
        let a = CycNum::zeta(12, 1) + CycNum::from_int(3);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        let b = CycNum::zeta(5, 2) - CycNum::zeta(3, 1);
        let c = b.checked_div(&a).unwrap();
        assert_eq!(c * a, b);
    }

    #[test]
    fn lift_lower_and_reduce() {
        let a = CycNum::zeta(3, 1).scale(&q(2, 3)) + CycNum::from_int(1);
        let lifted = a.lift(12);
        assert_eq!(lifted.conductor(), 12);
        assert_eq!(lifted, a);
        assert_eq!(lifted.lower(3).unwrap().coefficients(), a.coefficients());
        assert_eq!(lifted.reduced().conductor(), 3);
        assert!(CycNum::zeta(12, 1).lower(6).is_none());
        // Q(ζ_6) = Q(ζ_3)
        assert_eq!(CycNum::zeta(6, 1).reduced().conductor(), 3);
        assert_eq!(CycNum::zeta(4, 1).reduced().conductor(), 4);
        assert_eq!(CycNum::zeta(8, 2).reduced().conductor(), 4);
    }

    #[test]
    fn serde_round_trip_and_shape() {
        let a = CycNum::zeta(8, 3).scale(&q(-3, 2)) + CycNum::from_int(2);
        let json = serde_json::to_value(&a).unwrap();
        assert_eq!(json["conductor"], 8);
        assert_eq!(json["coeffs"]["0"], "2");
        assert_eq!(json["coeffs"]["3"], "-3/2");
        let back: CycNum = serde_json::from_value(json).unwrap();
        assert_eq!(back, a);
        let r: CycNum = serde_json::from_str(r#"{"conductor":4,"coeffs":{"2":"1"}}"#).unwrap();
        assert_eq!(r, CycNum::from_int(-1));
    }

    #[test]
    fn display() {
        assert_eq!(CycNum::zero().to_string(), "0");
        assert_eq!(CycNum::zeta(3, 2).to_string(), "-1 - z3^1");
        assert_eq!(CycNum::from_rational(&q(-1, 2)).to_string(), "-1/2");
    }

    #[test]
    fn complex_embedding() {
        let z = CycNum::zeta(8, 1).to_complex();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z.re - h).abs() < 1e-12 && (z.im - h).abs() < 1e-12);
    }

    #[test]
    fn canonical_order_prefers_larger_coordinates() {
        assert_eq!(
            CycNum::zeta(3, 1).canonical_cmp(&CycNum::zeta(3, 2)),
            Ordering::Less
        );
        assert_eq!(CycNum::one().canonical_cmp(&CycNum::one()), Ordering::Equal);
    }
}
