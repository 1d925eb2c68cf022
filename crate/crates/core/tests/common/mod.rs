#![allow(dead_code)]

use c5cone::geometry::{Branch, Curve};
use c5cone::series::{CoordinateSeries, Parametrization};
use c5cone::CycloScalar;
use proptest::prelude::*;

pub fn q(n: i64) -> CycloScalar {
    CycloScalar::from_integer(n)
}

fn nonzero_coeff() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

/// Terms with exponents in `min..=max`.
pub fn series(min: u64, max: u64, max_terms: usize) -> impl Strategy<Value = CoordinateSeries> {
    prop::collection::vec((min..=max, nonzero_coeff()), 0..=max_terms).prop_map(|terms| {
        CoordinateSeries::from_terms(terms.into_iter().map(|(e, c)| (e, q(c)))).unwrap()
    })
}

/// A valid Puiseux branch in `n`-space with special coordinate `s`.
pub fn branch_in(n: usize, s: usize, max_m: u64, max_exp: u64) -> impl Strategy<Value = Branch> {
    (1..=max_m)
        .prop_flat_map(move |m| {
            (Just(m), prop::collection::vec(series(m, max_exp, 3), n - 1))
        })
        .prop_filter_map("non-primitive", move |(m, mut others)| {
            others.insert(s, CoordinateSeries::monomial(m, q(1)));
            let p = Parametrization::new(others).ok()?;
            Branch::new("b", p).ok()
        })
}

pub fn branch(max_n: usize, max_m: u64, max_exp: u64) -> impl Strategy<Value = Branch> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 0..n))
        .prop_flat_map(move |(n, s)| branch_in(n, s, max_m, max_exp))
}

/// Curves with up to `max_r` branches that pass the compatibility checks.
pub fn curve(max_n: usize, max_r: usize, max_m: u64, max_exp: u64) -> impl Strategy<Value = Curve> {
    (2..=max_n, 1..=max_r)
        .prop_flat_map(move |(n, r)| {
            prop::collection::vec((0..n).prop_flat_map(move |s| branch_in(n, s, max_m, max_exp)), r)
        })
        .prop_filter_map("incompatible or duplicate", |branches| {
            let c = Curve::new(branches).ok()?;
            c5cone::geometry::check_compatibility(&c).ok()?;
            c5cone::invariants::profile(&c).ok()?;
            Some(c)
        })
}

/// A plane branch `(u^m, y(u))`.
pub fn plane_branch(max_m: u64, max_exp: u64) -> impl Strategy<Value = Branch> {
    branch_in(2, 0, max_m, max_exp)
}

/// An element of Q(zeta_n) with small integer coordinates.
pub fn scalar_in(n: u64) -> impl Strategy<Value = CycloScalar> {
    prop::collection::vec((-4i64..=4, 1i64..=3), n as usize).prop_map(move |c| {
        c.into_iter().enumerate().fold(CycloScalar::zero(), |acc, (k, (a, b))| {
            &acc + &(&CycloScalar::from_fraction(a, b) * &CycloScalar::zeta(n, k as i64).unwrap())
        })
    })
}

pub fn scalar() -> impl Strategy<Value = CycloScalar> {
    prop::sample::select(vec![1u64, 3, 4, 5, 6, 8, 12]).prop_flat_map(scalar_in)
}
