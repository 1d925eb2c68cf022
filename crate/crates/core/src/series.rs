//! Finite Puiseux-form power series in one variable.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::CycloScalar;

/// Largest exponent accepted in user input.
pub const MAX_EXPONENT: u64 = 1_000_000;

/// Order of a series; the zero series has order `Infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinity,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(e) => Some(e),
            Order::Infinity => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(e) => write!(f, "{e}"),
            Order::Infinity => f.write_str("inf"),
        }
    }
}

/// A polynomial in `u` with nonzero coefficients and strictly increasing exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoordinateSeries {
    terms: Vec<(u64, CycloScalar)>,
}

impl CoordinateSeries {
    pub fn zero() -> Self {
        CoordinateSeries { terms: Vec::new() }
    }

    pub fn monomial(exp: u64, coeff: CycloScalar) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        CoordinateSeries {
            terms: vec![(exp, coeff)],
        }
    }

    /// Build a series from arbitrary terms, merging repeated exponents and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (u64, CycloScalar)>) -> Result<Self> {
        let mut terms: Vec<(u64, CycloScalar)> = terms.into_iter().collect();
        for (e, _) in &terms {
            if *e == 0 || *e > MAX_EXPONENT {
                return Err(Error::InvalidInput(format!(
                    "exponent {e} outside 1..={MAX_EXPONENT}"
                )));
            }
        }
        terms.sort_by_key(|(e, _)| *e);
        Ok(Self::normalized(terms))
    }

    /// Merge sorted terms with equal exponents and drop zero coefficients.
    fn normalized(terms: Vec<(u64, CycloScalar)>) -> Self {
        let mut out: Vec<(u64, CycloScalar)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == e => *acc = &*acc + &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        CoordinateSeries { terms: out }
    }

    pub fn terms(&self) -> &[(u64, CycloScalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Order {
        self.terms
            .first()
            .map_or(Order::Infinity, |(e, _)| Order::Finite(*e))
    }

    /// Coefficient of `u^exp`.
    pub fn coeff(&self, exp: u64) -> CycloScalar {
        self.terms
            .binary_search_by_key(&exp, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| CycloScalar::zero())
    }

    /// True iff the series is exactly `u^exp`.
    pub fn is_pure_power(&self, exp: u64) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == exp && self.terms[0].1.is_one()
    }

    pub fn max_exponent(&self) -> Option<u64> {
        self.terms.last().map(|(e, _)| *e)
    }

    fn map_coeffs(&self, f: impl Fn(u64, &CycloScalar) -> CycloScalar) -> Self {
        CoordinateSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, f(*e, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// `s(theta u)` for an arbitrary scalar `theta`.
    pub fn substitute_scale(&self, theta: &CycloScalar) -> Self {
        self.map_coeffs(|e, c| c * theta.pow(e))
    }

    /// `s(zeta_n^k u)`, using exponent arithmetic instead of powering.
    pub fn substitute_root(&self, n: u64, k: u64) -> Self {
        self.map_coeffs(|e, c| {
            let j = ((k as u128 * e as u128) % n as u128) as i64;
            c * CycloScalar::zeta(n, j).expect("root order within conductor cap")
        })
    }

    /// `s(u^k)`.
    pub fn substitute_power(&self, k: u64) -> Self {
        assert!(k >= 1, "power substitution by zero");
        CoordinateSeries {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    fn merge(&self, other: &Self, sign: i64) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let flip = |c: &CycloScalar| if sign < 0 { -c } else { c.clone() };
        while i < self.terms.len() || j < other.terms.len() {
            match (self.terms.get(i), other.terms.get(j)) {
                (Some((a, x)), Some((b, y))) if a == b => {
                    let s = x + &flip(y);
                    if !s.is_zero() {
                        out.push((*a, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((a, x)), Some((b, _))) if a < b => {
                    out.push((*a, x.clone()));
                    i += 1;
                }
                (Some((a, x)), None) => {
                    out.push((*a, x.clone()));
                    i += 1;
                }
                (_, Some((b, y))) => {
                    out.push((*b, flip(y)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        CoordinateSeries { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, -1)
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        self.map_coeffs(|_, x| x * c)
    }

    /// Re-express every coefficient at conductor `n`.
    pub fn embed(&self, n: u64) -> Result<Self> {
        Ok(CoordinateSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| Ok((*e, c.embed(n)?)))
                .collect::<Result<_>>()?,
        })
    }

    /// `s(u^(1/g))`; every exponent must be divisible by `g`.
    pub fn divide_exponents(&self, g: u64) -> Self {
        CoordinateSeries {
            terms: self.terms.iter().map(|(e, c)| (e / g, c.clone())).collect(),
        }
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_complex() * u.powu(*e as u32))
            .sum()
    }
}

impl fmt::Display for CoordinateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "u^{e}")?;
            } else if c.is_rational() {
                write!(f, "{c}*u^{e}")?;
            } else {
                write!(f, "({c})*u^{e}")?;
            }
        }
        Ok(())
    }
}

/// A map `(C,0) -> (C^n,0)` given by `n` coordinate series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    coords: Vec<CoordinateSeries>,
}

impl Parametrization {
    /// Validated constructor: `n >= 2` and at least one nonzero coordinate.
    pub fn new(coords: Vec<CoordinateSeries>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "ambient dimension must be at least 2, got {}",
                coords.len()
            )));
        }
        if coords.iter().all(CoordinateSeries::is_zero) {
            return Err(Error::InvalidInput("all coordinates are zero".into()));
        }
        Ok(Parametrization { coords })
    }

    /// Unvalidated constructor; the result may be identically zero.
    pub(crate) fn from_coords(coords: Vec<CoordinateSeries>) -> Self {
        Parametrization { coords }
    }

    /// Convenience constructor from `(exponent, integer coefficient)` lists.
    pub fn from_integer_terms(coords: &[&[(u64, i64)]]) -> Result<Self> {
        let coords = coords
            .iter()
            .map(|terms| {
                CoordinateSeries::from_terms(
                    terms.iter().map(|&(e, c)| (e, CycloScalar::from_integer(c))),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[CoordinateSeries] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CoordinateSeries::is_zero)
    }

    pub fn order(&self) -> Order {
        self.coords
            .iter()
            .map(CoordinateSeries::order)
            .min()
            .unwrap_or(Order::Infinity)
    }

    fn map(&self, f: impl Fn(&CoordinateSeries) -> CoordinateSeries) -> Self {
        Parametrization {
            coords: self.coords.iter().map(f).collect(),
        }
    }

    pub fn substitute_scale(&self, theta: &CycloScalar) -> Self {
        self.map(|s| s.substitute_scale(theta))
    }

    /// `p(zeta_n^k u)`.
    pub fn substitute_root(&self, n: u64, k: u64) -> Self {
        self.map(|s| s.substitute_root(n, k))
    }

    pub fn substitute_power(&self, k: u64) -> Self {
        self.map(|s| s.substitute_power(k))
    }

    /// Coordinate-wise difference; the result may be identically zero.
    pub fn subtract(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(Parametrization {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    /// gcd of all exponents carrying a nonzero coefficient (0 for the zero map).
    pub fn exponent_gcd(&self) -> u64 {
        self.coords
            .iter()
            .flat_map(|s| s.terms().iter().map(|(e, _)| *e))
            .fold(0, |g, e| g.gcd(&e))
    }

    pub fn is_primitive(&self) -> bool {
        self.exponent_gcd() == 1
    }

    pub fn max_exponent(&self) -> u64 {
        self.coords
            .iter()
            .filter_map(CoordinateSeries::max_exponent)
            .max()
            .unwrap_or(0)
    }

    /// Multiplicity and special coordinates (zero-based) of a Puiseux-form map.
    pub fn puiseux_form_check(&self) -> Result<(u64, Vec<usize>)> {
        let not_puiseux = |detail: String| Error::NotPuiseuxForm {
            branch: String::new(),
            detail,
        };
        let Order::Finite(m) = self.order() else {
            return Err(not_puiseux("all coordinates are zero".into()));
        };
        let special: Vec<usize> = (0..self.n())
            .filter(|&j| self.coords[j].is_pure_power(m))
            .collect();
        if special.is_empty() {
            let j = (0..self.n())
                .find(|&j| self.coords[j].order() == Order::Finite(m))
                .unwrap();
            return Err(not_puiseux(format!(
                "no coordinate equals u^{m}; coordinate {} of minimal order is {}",
                j + 1,
                self.coords[j]
            )));
        }
        Ok((m, special))
    }

    /// Coefficients of `u^exp` in every coordinate.
    pub fn coefficient_vector(&self, exp: u64) -> Vec<CycloScalar> {
        self.coords.iter().map(|s| s.coeff(exp)).collect()
    }

    pub fn embed(&self, n: u64) -> Result<Self> {
        Ok(Parametrization {
            coords: self
                .coords
                .iter()
                .map(|s| s.embed(n))
                .collect::<Result<_>>()?,
        })
    }

    pub fn divide_exponents(&self, g: u64) -> Self {
        self.map(|s| s.divide_exponents(g))
    }

    pub fn eval(&self, u: Complex64) -> Vec<Complex64> {
        self.coords.iter().map(|s| s.eval(u)).collect()
    }
}

impl fmt::Display for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coords: &[&[(u64, i64)]]) -> Parametrization {
        Parametrization::from_integer_terms(coords).unwrap()
    }

    fn i() -> CycloScalar {
        CycloScalar::zeta(4, 1).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(p(&[&[(4, 1)], &[(6, 1)], &[(7, 1)]]).order(), Order::Finite(4));
        assert_eq!(p(&[&[(1, 1)], &[(1, 2)], &[(1, 1)]]).order(), Order::Finite(1));
        assert_eq!(p(&[&[(4, 1)], &[(3, 1)], &[(5, 1)]]).order(), Order::Finite(3));
        assert!(CoordinateSeries::zero().order() > Order::Finite(u64::MAX));
    }

    #[test]
    fn scale_substitution() {
        let x = p(&[&[(4, 1)], &[(6, 1)], &[(7, 1)]]);
        let minus = x.substitute_scale(&CycloScalar::from_integer(-1));
        assert_eq!(minus, p(&[&[(4, 1)], &[(6, 1)], &[(7, -1)]]));
        assert_eq!(x.substitute_scale(&CycloScalar::one()), x);
        let by_i = x.substitute_scale(&i());
        assert_eq!(by_i.coords()[1], CoordinateSeries::monomial(6, CycloScalar::from_integer(-1)));
        assert_eq!(by_i.coords()[2], CoordinateSeries::monomial(7, -i()));
        assert_eq!(x.substitute_root(4, 1), by_i);
    }

    #[test]
    fn power_substitution() {
        let x = p(&[&[(4, 1)], &[(6, 1)], &[(9, 1)]]);
        assert_eq!(x.substitute_power(3), p(&[&[(12, 1)], &[(18, 1)], &[(27, 1)]]));
        assert_eq!(x.substitute_power(1), x);
    }

    #[test]
    fn subtraction() {
        let x = p(&[&[(4, 1)], &[(6, 1)], &[(7, 1)]]);
        let d = x.subtract(&x.substitute_root(2, 1)).unwrap();
        assert_eq!(d, Parametrization {
            coords: vec![
                CoordinateSeries::zero(),
                CoordinateSeries::zero(),
                CoordinateSeries::monomial(7, CycloScalar::from_integer(2)),
            ]
        });
        assert!(x.subtract(&x).unwrap().is_zero());

        let y = p(&[&[(4, 1)], &[(6, 1)], &[(9, 1)]]);
        let d = y.subtract(&y.substitute_scale(&i())).unwrap();
        assert_eq!(d.coords()[0], CoordinateSeries::zero());
        assert_eq!(d.coords()[1], CoordinateSeries::monomial(6, CycloScalar::from_integer(2)));
        assert_eq!(d.coords()[2], CoordinateSeries::monomial(9, CycloScalar::one() - i()));

        let short = p(&[&[(1, 1)], &[(2, 1)]]);
        assert!(matches!(x.subtract(&short), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn primitivity() {
        assert!(p(&[&[(4, 1)], &[(6, 1)], &[(7, 1)]]).is_primitive());
        assert!(!p(&[&[(4, 1)], &[(6, 1)], &[(10, 1)]]).is_primitive());
        assert!(p(&[&[(1, 1)], &[(1, 2)], &[(1, 1)]]).is_primitive());
    }

    #[test]
    fn puiseux_form() {
        assert_eq!(p(&[&[(4, 1)], &[(6, 1)], &[(7, 1)]]).puiseux_form_check().unwrap(), (4, vec![0]));
        assert_eq!(p(&[&[(4, 1)], &[(3, 1)], &[(5, 1)]]).puiseux_form_check().unwrap(), (3, vec![1]));
        assert!(matches!(
            p(&[&[(3, 1), (4, 1)], &[(5, 1)]]).puiseux_form_check(),
            Err(Error::NotPuiseuxForm { .. })
        ));
        assert_eq!(p(&[&[(1, 1)], &[(1, 2)], &[(1, 1)]]).puiseux_form_check().unwrap(), (1, vec![0, 2]));
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(CoordinateSeries::from_terms([(0, CycloScalar::one())]).is_err());
        assert!(CoordinateSeries::from_terms([(MAX_EXPONENT + 1, CycloScalar::one())]).is_err());
        let s = CoordinateSeries::from_terms([
            (3, CycloScalar::one()),
            (3, CycloScalar::from_integer(-1)),
            (2, CycloScalar::one()),
        ])
        .unwrap();
        assert_eq!(s, CoordinateSeries::monomial(2, CycloScalar::one()));
    }
}
