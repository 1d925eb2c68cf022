//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! An element is stored as a coefficient vector of length `phi(N)` in the
//! power basis `1, x, ..., x^(phi(N)-1)` of `Q[x] / Phi_N`, where the class of
//! `x` is `zeta_N = exp(2 pi i / N)`. Rational values live at conductor 1 and
//! combine with elements of any conductor without embedding.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;

/// Largest conductor accepted when constructing roots of unity.
pub const MAX_CONDUCTOR: u64 = 10080;

pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn mobius(mut n: u64) -> i8 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

type PolyCache = RwLock<HashMap<u64, Arc<Vec<BigInt>>>>;
type ZetaCache = RwLock<HashMap<(u64, u64), CycloScalar>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn zeta_cache() -> &'static ZetaCache {
    static CACHE: OnceLock<ZetaCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
///
/// Uses `Phi_n = prod_{d | n} (x^d - 1)^mu(n/d)`, multiplying out the
/// positive factors before the exact divisions. Results are cached.
///
/// # Panics
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly: Vec<BigInt> = vec![BigInt::one()];
    let mut denominators = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => {
                let d = d as usize;
                let mut next = vec![BigInt::zero(); poly.len() + d];
                for (i, c) in poly.iter().enumerate() {
                    next[i + d] += c;
                    next[i] -= c;
                }
                poly = next;
            }
            -1 => denominators.push(d as usize),
            _ => {}
        }
    }
    for d in denominators {
        // poly = q * (x^d - 1)  =>  q[i] = q[i - d] - poly[i]
        let len = poly.len() - d;
        let mut q: Vec<BigInt> = Vec::with_capacity(len);
        for i in 0..len {
            let prev = if i >= d { q[i - d].clone() } else { BigInt::zero() };
            q.push(prev - &poly[i]);
        }
        poly = q;
    }
    let poly = Arc::new(poly);
    poly_cache().write().unwrap().insert(n, poly.clone());
    poly
}

/// Reduce a rational polynomial modulo the monic polynomial `phi`.
fn reduce(mut poly: Vec<BigRational>, phi: &[BigInt]) -> Vec<BigRational> {
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        let c = std::mem::take(&mut poly[i]);
        if c.is_zero() {
            continue;
        }
        for (j, p) in phi[..deg].iter().enumerate() {
            if !p.is_zero() {
                poly[i - deg + j] -= &c * BigRational::from_integer(p.clone());
            }
        }
    }
    poly.resize(deg, BigRational::zero());
    poly
}

/// An exact element of the cyclotomic field `Q(zeta_N)`.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CycloScalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycloScalar {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// Build an element from power-basis coefficients at conductor `n`.
    pub fn from_coeffs(n: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        check_conductor(n)?;
        let phi = totient(n) as usize;
        if coeffs.len() != phi {
            return Err(Error::DimensionMismatch {
                expected: phi,
                found: coeffs.len(),
            });
        }
        Ok(CycloScalar {
            conductor: n,
            coeffs,
        })
    }

    /// `zeta_n^k`, with `k` reduced modulo `n`.
    pub fn zeta(n: u64, k: i64) -> Result<Self> {
        check_conductor(n)?;
        Ok(Self::zeta_unchecked(n, k.rem_euclid(n as i64) as u64))
    }

    fn zeta_unchecked(n: u64, k: u64) -> Self {
        let k = k % n;
        if let Some(z) = zeta_cache().read().unwrap().get(&(n, k)) {
            return z.clone();
        }
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut v: Vec<BigInt> = vec![BigInt::zero(); deg];
        if (k as usize) < deg {
            v[k as usize] = BigInt::one();
        } else {
            v[deg - 1] = BigInt::one();
            for _ in deg..=(k as usize) {
                let top = v.pop().unwrap();
                v.insert(0, BigInt::zero());
                if !top.is_zero() {
                    for (j, p) in phi[..deg].iter().enumerate() {
                        v[j] -= &top * p;
                    }
                }
            }
        }
        let z = CycloScalar {
            conductor: n,
            coeffs: v.into_iter().map(BigRational::from_integer).collect(),
        };
        zeta_cache().write().unwrap().insert((n, k), z.clone());
        z
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// The single nonzero power-basis term `(k, c)`, if there is exactly one.
    fn as_monomial(&self) -> Option<(usize, &BigRational)> {
        let mut found = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((k, c));
            }
        }
        found
    }

    /// Image of `self` in `Q(zeta_n)`; `n` must be a multiple of the conductor.
    pub fn embed(&self, n: u64) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(self.conductor) {
            return Err(Error::InvalidInput(format!(
                "cannot embed conductor {} into {}",
                self.conductor, n
            )));
        }
        Ok(self.embed_unchecked(n))
    }

    fn embed_unchecked(&self, n: u64) -> Self {
        if n == self.conductor {
            return self.clone();
        }
        let phi_n = totient(n) as usize;
        if self.is_rational() {
            let mut coeffs = vec![BigRational::zero(); phi_n];
            coeffs[0] = self.coeffs[0].clone();
            return CycloScalar {
                conductor: n,
                coeffs,
            };
        }
        let step = (n / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        if poly.len() < phi_n {
            poly.resize(phi_n, BigRational::zero());
        }
        CycloScalar {
            conductor: n,
            coeffs: reduce(poly, &cyclotomic_polynomial(n)),
        }
    }

    /// Preimage of `self` in `Q(zeta_d)` for `d | N`, if the element lies there.
    pub fn project(&self, d: u64) -> Option<Self> {
        if d == 0 || !self.conductor.is_multiple_of(d) {
            return None;
        }
        if d == self.conductor {
            return Some(self.clone());
        }
        if self.is_rational() {
            return Some(CycloScalar::from_rational(self.coeffs[0].clone()).embed_unchecked(d));
        }
        let phi_d = totient(d) as usize;
        if phi_d == 1 {
            return None;
        }
        let phi_n = self.coeffs.len();
        let columns: Vec<CycloScalar> = (0..phi_d)
            .map(|k| CycloScalar::zeta_unchecked(d, k as u64).embed_unchecked(self.conductor))
            .collect();
        let mut m: Vec<Vec<BigRational>> = (0..phi_n)
            .map(|row| {
                let mut r: Vec<BigRational> =
                    columns.iter().map(|c| c.coeffs[row].clone()).collect();
                r.push(self.coeffs[row].clone());
                r
            })
            .collect();
        let pivots = linalg::rref(&mut m);
        if pivots.contains(&phi_d) {
            return None;
        }
        let mut coeffs = vec![BigRational::zero(); phi_d];
        for (r, &p) in pivots.iter().enumerate() {
            coeffs[p] = m[r][phi_d].clone();
        }
        Some(CycloScalar {
            conductor: d,
            coeffs,
        })
    }

    /// Representation at the smallest conductor whose field contains `self`.
    pub fn reduced(&self) -> Self {
        if self.is_rational() {
            return CycloScalar::from_rational(self.coeffs[0].clone());
        }
        for d in divisors(self.conductor) {
            if d <= 2 || d == self.conductor || d % 4 == 2 {
                continue;
            }
            if let Some(p) = self.project(d) {
                return p;
            }
        }
        self.clone()
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let n = self.conductor.lcm(&other.conductor);
        (self.embed_unchecked(n), other.embed_unchecked(n))
    }

    fn scale(&self, q: &BigRational) -> Self {
        CycloScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if other.is_rational() {
            let mut out = self.clone();
            out.coeffs[0] += &other.coeffs[0];
            return out;
        }
        if self.is_rational() {
            return other.add_ref(self);
        }
        if self.conductor != other.conductor {
            let (a, b) = self.align(other);
            return a.add_ref(&b);
        }
        CycloScalar {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn neg_ref(&self) -> Self {
        CycloScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        if self.conductor != other.conductor {
            let (a, b) = self.align(other);
            return a.mul_ref(&b);
        }
        let n = self.conductor;
        if let (Some((i, a)), Some((j, b))) = (self.as_monomial(), other.as_monomial()) {
            return CycloScalar::zeta_unchecked(n, (i + j) as u64).scale(&(a * b));
        }
        let len = self.coeffs.len();
        let mut poly = vec![BigRational::zero(); 2 * len - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        CycloScalar {
            conductor: n,
            coeffs: reduce(poly, &cyclotomic_polynomial(n)),
        }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm against `Phi_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(CycloScalar::from_rational(self.coeffs[0].recip()));
        }
        let n = self.conductor;
        if let Some((k, c)) = self.as_monomial() {
            return Ok(CycloScalar::zeta_unchecked(n, n - k as u64).scale(&c.recip()));
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(n)
            .iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect();
        let (mut r0, mut r1) = (phi, trim(self.coeffs.clone()));
        let (mut t0, mut t1) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r0 is a nonzero constant because Phi_N is irreducible.
        let c = r0[0].recip();
        let mut t0: Vec<BigRational> = t0.into_iter().map(|x| x * &c).collect();
        let deg = self.coeffs.len();
        if t0.len() < deg {
            t0.resize(deg, BigRational::zero());
        }
        Ok(CycloScalar {
            conductor: n,
            coeffs: reduce(t0, &cyclotomic_polynomial(n)),
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycloScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Numeric value in double precision.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = std::f64::consts::TAU * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

fn check_conductor(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("conductor must be positive".into()));
    }
    if n > MAX_CONDUCTOR {
        return Err(Error::ConductorTooLarge(n));
    }
    Ok(())
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let lead = b.last().unwrap().recip();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = &r[i + b.len() - 1] * &lead;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= &c * y;
        }
        q[i] = c;
    }
    r.truncate(b.len() - 1);
    (trim(q), trim(r))
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() || other.is_rational() {
            return self.is_rational() && other.is_rational() && self.coeffs[0] == other.coeffs[0];
        }
        let (a, b) = self.align(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloScalar {}

impl Default for CycloScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BigRational> for CycloScalar {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for CycloScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &CycloScalar) -> CycloScalar {
                let f: fn(&CycloScalar, &CycloScalar) -> CycloScalar = $body;
                f(self, rhs)
            }
        }
        impl $trait<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &CycloScalar) -> CycloScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a.mul_ref(&b.inv().expect("division by zero")));

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        self.neg_ref()
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        self.neg_ref()
    }
}

impl linalg::Field for CycloScalar {
    fn zero() -> Self {
        CycloScalar::zero()
    }
    fn one() -> Self {
        CycloScalar::one()
    }
    fn is_zero(&self) -> bool {
        CycloScalar::is_zero(self)
    }
    fn is_one(&self) -> bool {
        CycloScalar::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn inv(&self) -> Self {
        CycloScalar::inv(self).expect("pivot is nonzero")
    }
}

/// Canonical text: `q*z(N,k)` terms at the minimal conductor, ordered by `k`
/// and joined by `" + "`. The `k = 0` term and rational values print as `q`.
impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.is_rational() {
            return write!(f, "{}", r.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in r.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z({},{k})", r.conductor)?;
            }
        }
        Ok(())
    }
}

fn parse_term(term: &str) -> Result<CycloScalar> {
    let bad = || Error::InvalidInput(format!("malformed scalar term `{term}`"));
    let term = term.trim();
    if term.is_empty() {
        return Err(bad());
    }
    let (coeff, zeta) = match term.find("z(") {
        None => (term, None),
        Some(pos) => {
            let head = term[..pos].trim();
            let inner = term[pos + 2..].strip_suffix(')').ok_or_else(bad)?;
            let (n, k) = inner.split_once(',').ok_or_else(bad)?;
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let k: i64 = k.trim().parse().map_err(|_| bad())?;
            let coeff = match head {
                "" => "1",
                "-" => "-1",
                h => h.strip_suffix('*').ok_or_else(bad)?.trim(),
            };
            (coeff, Some((n, k)))
        }
    };
    let coeff = coeff.replace(' ', "");
    let q = BigRational::from_str(&coeff).map_err(|_| bad())?;
    let base = match zeta {
        None => CycloScalar::one(),
        Some((n, k)) => CycloScalar::zeta(n, k)?,
    };
    Ok(base.scale(&q))
}

impl FromStr for CycloScalar {
    type Err = Error;

    /// Parses sums of `q`, `q*z(N,k)`, `z(N,k)` and `-z(N,k)` terms separated by `+`.
    fn from_str(s: &str) -> Result<Self> {
        let mut total = CycloScalar::zero();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' if depth == 0 => {
                    total = total + parse_term(&s[start..i])?;
                    start = i + 1;
                }
                _ => {}
            }
        }
        total = total + parse_term(&s[start..])?;
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(2017).len(), 2017);
    }

    #[test]
    fn zeta_basics() {
        assert_eq!(CycloScalar::zeta(2, 1).unwrap(), CycloScalar::from_integer(-1));
        let i = CycloScalar::zeta(4, 1).unwrap();
        assert_eq!(&i * &i, CycloScalar::from_integer(-1));
        let s = CycloScalar::zeta(6, 1).unwrap() + CycloScalar::zeta(6, 5).unwrap();
        assert_eq!(s, CycloScalar::one());
        assert_eq!(CycloScalar::zeta(6, 0).unwrap(), CycloScalar::one());
        assert_eq!(CycloScalar::zeta(5, -1).unwrap(), CycloScalar::zeta(5, 4).unwrap());
    }

    #[test]
    fn field_examples() {
        let one = CycloScalar::one();
        let a = &one - CycloScalar::zeta(3, 1).unwrap();
        let b = &one - CycloScalar::zeta(3, 2).unwrap();
        assert_eq!(a * b, CycloScalar::from_integer(3));

        let x = CycloScalar::from_integer(2) + CycloScalar::zeta(4, 1).unwrap();
        assert_eq!(&x * &x.inv().unwrap(), one);

        let e = CycloScalar::zeta(2, 1).unwrap().embed(6).unwrap();
        assert_eq!(e, CycloScalar::zeta(6, 3).unwrap());
        assert_eq!(e.conductor(), 6);

        assert_eq!(CycloScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conductor_cap() {
        assert_eq!(
            CycloScalar::zeta(10081, 1),
            Err(Error::ConductorTooLarge(10081))
        );
    }

    #[test]
    fn complex_values() {
        let z = CycloScalar::zeta(4, 1).unwrap().to_complex();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let z = CycloScalar::zeta(6, 1).unwrap().to_complex();
        assert!((z - Complex64::new(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-12);
        let z = CycloScalar::from_fraction(3, 2).to_complex();
        assert!((z - Complex64::new(1.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn display_uses_minimal_conductor() {
        let i = CycloScalar::zeta(4, 1).unwrap().embed(12).unwrap();
        assert_eq!(i.to_string(), "1*z(4,1)");
        assert_eq!(CycloScalar::zeta(2, 1).unwrap().to_string(), "-1");
        let x = CycloScalar::from_fraction(1, 2) - CycloScalar::zeta(3, 2).unwrap();
        // 1/2 - z3^2 = 1/2 + 1 + z3
        assert_eq!(x.to_string(), "3/2 + 1*z(3,1)");
    }

    #[test]
    fn text_round_trip() {
        let samples = [
            "0",
            "-7/3",
            "1*z(4,1)",
            "1 + -1/2*z(12,1) + 3*z(12,3)",
            "z(5,2) + -z(5,3)",
        ];
        for s in samples {
            let x: CycloScalar = s.parse().unwrap();
            let again: CycloScalar = x.to_string().parse().unwrap();
            assert_eq!(x, again, "{s}");
            assert_eq!(x.to_string(), again.to_string());
        }
        assert!("1*z(4,".parse::<CycloScalar>().is_err());
        assert!("abc".parse::<CycloScalar>().is_err());
    }

    #[test]
    fn projection_round_trip() {
        let x = CycloScalar::from_integer(2) + CycloScalar::zeta(3, 1).unwrap();
        let e = x.embed(12).unwrap();
        assert_eq!(e.project(3).unwrap().coeffs(), x.coeffs());
        assert!(CycloScalar::zeta(12, 1).unwrap().project(6).is_none());
    }
}
