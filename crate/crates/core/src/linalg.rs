//! Dense Gaussian elimination over an exact field.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Minimal field interface used by the elimination routines.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse. Callers guarantee `self` is nonzero.
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Scale a row so that its pivot entry becomes one.
fn normalize_row<F: Field>(row: &mut [F], col: usize) {
    if row[col].is_one() {
        return;
    }
    let others = row
        .iter()
        .enumerate()
        .any(|(j, x)| j != col && !x.is_zero());
    if !others {
        row[col] = F::one();
        return;
    }
    let inv = row[col].inv();
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.mul(&inv);
        }
    }
}

/// Reduce `m` in place to reduced row-echelon form and return the pivot columns.
///
/// Zero rows are dropped, so the number of remaining rows equals the rank.
pub fn rref<F: Field>(m: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        normalize_row(&mut m[row], col);
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (j, x) in pivot_row.iter().enumerate() {
                if !x.is_zero() {
                    other[j] = other[j].sub(&factor.mul(x));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Basis of `{x : m x = 0}` for a matrix with `ncols` columns, returned in RREF.
pub fn null_space<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &p) in pivots.iter().enumerate() {
            let x = &work[r][free];
            if !x.is_zero() {
                v[p] = F::zero().sub(x);
            }
        }
        basis.push(v);
    }
    rref(&mut basis);
    basis
}
