//! Linear projections to the plane, C5-genericity, and invariant preservation.

use std::fmt;

use crate::c5::{c5_cone, C5Cone};
use crate::error::{Error, Result};
use crate::geometry::{Branch, Curve};
use crate::invariants::profile;
use crate::linalg;
use crate::scalar::CycloScalar;
use crate::series::{CoordinateSeries, Parametrization};

/// Largest coefficient bound explored by [`find_generic_projection`].
pub const SEARCH_LIMIT: i64 = 16;

/// A rank-two linear map `C^n -> C^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProjection {
    matrix: Vec<Vec<CycloScalar>>,
    kernel: Vec<Vec<CycloScalar>>,
}

impl LinearProjection {
    pub fn new(matrix: Vec<Vec<CycloScalar>>) -> Result<Self> {
        if matrix.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: matrix.len(),
            });
        }
        let n = matrix[0].len();
        if matrix[1].len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix[1].len(),
            });
        }
        let rank = linalg::rank(&matrix);
        if rank != 2 {
            return Err(Error::RankDeficient {
                expected: 2,
                found: rank,
            });
        }
        let kernel = linalg::null_space(&matrix, n);
        Ok(LinearProjection { matrix, kernel })
    }

    /// The projection whose kernel is spanned by `rows`; its matrix is the RREF
    /// basis of the forms vanishing on the kernel.
    pub fn from_kernel(rows: Vec<Vec<CycloScalar>>, n: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let rank = linalg::rank(&rows);
        if rank + 2 != n || rows.len() + 2 != n {
            return Err(Error::RankDeficient {
                expected: n.saturating_sub(2),
                found: rank,
            });
        }
        Self::new(linalg::null_space(&rows, n))
    }

    pub fn identity() -> Self {
        Self::new(vec![
            vec![CycloScalar::one(), CycloScalar::zero()],
            vec![CycloScalar::zero(), CycloScalar::one()],
        ])
        .unwrap()
    }

    pub fn n(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn matrix(&self) -> &[Vec<CycloScalar>] {
        &self.matrix
    }

    /// RREF basis of the kernel (`n - 2` rows).
    pub fn kernel(&self) -> &[Vec<CycloScalar>] {
        &self.kernel
    }

    /// `Some(s)` if the first row is the coordinate function `x_s`.
    pub fn selected_coordinate(&self) -> Option<usize> {
        let row = &self.matrix[0];
        let s = row.iter().position(|x| !x.is_zero())?;
        let unit = row[s].is_one() && row.iter().filter(|x| !x.is_zero()).count() == 1;
        unit.then_some(s)
    }
}

impl fmt::Display for LinearProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let forms: Vec<String> = self.matrix.iter().map(|r| linear_form_text(r)).collect();
        write!(f, "({})", forms.join(", "))
    }
}

/// Coordinate names `x, y, z` in three-space and `x1..xn` otherwise.
pub fn coordinate_name(k: usize, n: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][k].to_string()
    } else {
        format!("x{}", k + 1)
    }
}

/// Readable text of a linear form such as `y + 2*z` or `(1*z(3,1))*x2 - x4`.
pub fn linear_form_text(coeffs: &[CycloScalar]) -> String {
    let n = coeffs.len();
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = coordinate_name(k, n);
        let (neg, body) = match c.to_rational() {
            Some(q) => {
                let neg = q < num_rational::BigRational::from_integer(0.into());
                let a = if neg { -q } else { q };
                let one = a == num_rational::BigRational::from_integer(1.into());
                (neg, if one { name } else { format!("{a}*{name}") })
            }
            None => (false, format!("({c})*{name}")),
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push_str(&format!("-{body}")),
            (true, false) => out.push_str(&body),
            (false, true) => out.push_str(&format!(" - {body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Outcome of a genericity test; `violating` indexes the cone component met by the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genericity {
    pub generic: bool,
    pub violating: Option<usize>,
}

/// Whether `kernel` meets every component of `cone` only at the origin.
pub fn kernel_is_transverse(cone: &C5Cone, kernel: &[Vec<CycloScalar>]) -> Genericity {
    for (idx, basis) in cone.component_bases().into_iter().enumerate() {
        let dim = basis.len();
        let mut stacked = kernel.to_vec();
        stacked.extend(basis);
        if linalg::rank(&stacked) != kernel.len() + dim {
            return Genericity {
                generic: false,
                violating: Some(idx),
            };
        }
    }
    Genericity {
        generic: true,
        violating: None,
    }
}

pub fn is_c5_generic(c: &Curve, pi: &LinearProjection) -> Result<Genericity> {
    if pi.n() != c.n() {
        return Err(Error::DimensionMismatch {
            expected: c.n(),
            found: pi.n(),
        });
    }
    Ok(kernel_is_transverse(&c5_cone(c)?, pi.kernel()))
}

/// Images of the branches of a curve under a projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedCurve {
    pub labels: Vec<String>,
    pub images: Vec<Parametrization>,
    /// The first row selects a coordinate that is special for every branch.
    pub normal_form: bool,
}

impl ProjectedCurve {
    /// The image as a plane curve, each branch reparametrized by `u -> u^(1/g)`
    /// where `g` is the gcd of its exponents.
    pub fn to_curve(&self) -> Result<Curve> {
        if !self.normal_form {
            return Err(Error::NotNormalForm);
        }
        let branches = self
            .labels
            .iter()
            .zip(&self.images)
            .map(|(label, p)| {
                let g = p.exponent_gcd();
                Branch::new(label.clone(), p.divide_exponents(g.max(1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Curve::new(branches)
    }
}

fn apply_to_param(p: &Parametrization, matrix: &[Vec<CycloScalar>]) -> Parametrization {
    let coords = matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(p.coords())
                .filter(|(l, _)| !l.is_zero())
                .fold(CoordinateSeries::zero(), |acc, (l, s)| acc.add(&s.scale(l)))
        })
        .collect();
    Parametrization::from_coords(coords)
}

pub fn apply_projection(c: &Curve, pi: &LinearProjection) -> Result<ProjectedCurve> {
    if pi.n() != c.n() {
        return Err(Error::DimensionMismatch {
            expected: c.n(),
            found: pi.n(),
        });
    }
    let normal_form = pi
        .selected_coordinate()
        .is_some_and(|s| c.branches().iter().all(|b| b.special_coords().contains(&s)));
    Ok(ProjectedCurve {
        labels: c.branches().iter().map(|b| b.label().to_string()).collect(),
        images: c
            .branches()
            .iter()
            .map(|b| apply_to_param(b.param(), pi.matrix()))
            .collect(),
        normal_form,
    })
}

/// Smallest coordinate that is special for every branch.
pub fn universal_special_coordinate(c: &Curve) -> Option<usize> {
    (0..c.n()).find(|s| c.branches().iter().all(|b| b.special_coords().contains(s)))
}

/// Integer tuples of length `d`: all ones, then every tuple of max-norm 1, 2, ...
/// up to `limit`, each norm class in lexicographic order.
pub fn lambda_candidates(d: usize, limit: i64) -> impl Iterator<Item = Vec<i64>> {
    let ones = vec![1; d];
    let skip = ones.clone();
    std::iter::once(ones).chain((1..=limit).flat_map(move |r| {
        let skip = skip.clone();
        let mut current = Some(vec![-r; d]);
        std::iter::from_fn(move || loop {
            let v = current.clone()?;
            // advance odometer
            let mut next = v.clone();
            let mut pos = d;
            current = loop {
                if pos == 0 {
                    break None;
                }
                pos -= 1;
                if next[pos] < r {
                    next[pos] += 1;
                    for x in next.iter_mut().skip(pos + 1) {
                        *x = -r;
                    }
                    break Some(next);
                }
            };
            if v.iter().any(|x| x.abs() == r) && v != skip {
                return Some(v);
            }
        })
    }))
}

/// The projection `(x_s, sum lambda_k x_k)` for a given tuple over `k != s`.
pub fn normal_form_projection(n: usize, s: usize, lambda: &[i64]) -> Result<LinearProjection> {
    let mut first = vec![CycloScalar::zero(); n];
    first[s] = CycloScalar::one();
    let mut second = vec![CycloScalar::zero(); n];
    let others = (0..n).filter(|&k| k != s);
    for (k, &l) in others.zip(lambda) {
        second[k] = CycloScalar::from_integer(l);
    }
    LinearProjection::new(vec![first, second])
}

pub fn find_generic_projection(c: &Curve) -> Result<LinearProjection> {
    if c.n() == 2 {
        return Ok(LinearProjection::identity());
    }
    let s = universal_special_coordinate(c).ok_or(Error::NoCommonSpecialCoordinate)?;
    let cone = c5_cone(c)?;
    for lambda in lambda_candidates(c.n() - 1, SEARCH_LIMIT) {
        let Ok(pi) = normal_form_projection(c.n(), s, &lambda) else {
            continue;
        };
        if kernel_is_transverse(&cone, pi.kernel()).generic {
            return Ok(pi);
        }
    }
    Err(Error::SearchExhausted(SEARCH_LIMIT))
}

/// Whether ChAM and CoAM of every branch and pair survive the projection.
pub fn verify_projection_invariance(c: &Curve, pi: &LinearProjection) -> Result<bool> {
    let image = apply_projection(c, pi)?.to_curve()?;
    let before = profile(c)?;
    let after = match profile(&image) {
        Ok(p) => p,
        Err(Error::DuplicateBranch(..)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(before.cham == after.cham && before.coam == after.coam)
}
