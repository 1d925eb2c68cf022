//! Branches, curves, tangent directions and canonical planes.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{CycloScalar, MAX_CONDUCTOR};
use crate::series::Parametrization;

/// A nonzero vector scaled so that its first nonzero entry is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    vec: Vec<CycloScalar>,
}

impl Direction {
    pub fn new(mut vec: Vec<CycloScalar>) -> Result<Self> {
        let Some(lead) = vec.iter().position(|x| !x.is_zero()) else {
            return Err(Error::InvalidInput("zero vector has no direction".into()));
        };
        let single = vec.iter().filter(|x| !x.is_zero()).count() == 1;
        if single {
            vec[lead] = CycloScalar::one();
        } else if !vec[lead].is_one() {
            let inv = vec[lead].inv()?;
            for x in vec.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        Ok(Direction { vec })
    }

    pub fn as_slice(&self) -> &[CycloScalar] {
        &self.vec
    }

    pub fn n(&self) -> usize {
        self.vec.len()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vector(f, &self.vec)
    }
}

fn write_vector(f: &mut fmt::Formatter<'_>, v: &[CycloScalar]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// A 2-dimensional linear subspace, stored as its 2 x n RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    rows: Vec<Vec<CycloScalar>>,
}

impl Plane {
    /// Span of the given rows, which must have rank exactly two.
    pub fn from_rows(rows: Vec<Vec<CycloScalar>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("ragged plane basis".into()));
        }
        let mut rows = rows;
        let pivots = linalg::rref(&mut rows);
        if pivots.len() != 2 {
            return Err(Error::DependentVectors);
        }
        Ok(Plane { rows })
    }

    /// The plane cut out by `n - 2` independent linear forms.
    pub fn from_equations(forms: &[Vec<CycloScalar>], n: usize) -> Result<Self> {
        if forms.iter().any(|f| f.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: forms.iter().map(Vec::len).find(|&l| l != n).unwrap_or(0),
            });
        }
        let basis = linalg::null_space(forms, n);
        if basis.len() != 2 {
            return Err(Error::RankDeficient {
                expected: n - 2,
                found: n - basis.len(),
            });
        }
        Ok(Plane { rows: basis })
    }

    pub fn basis(&self) -> &[Vec<CycloScalar>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    /// `n - 2` linear forms, in RREF, vanishing exactly on the plane.
    pub fn equations(&self) -> Vec<Vec<CycloScalar>> {
        linalg::null_space(&self.rows, self.n())
    }

    pub fn contains(&self, v: &[CycloScalar]) -> bool {
        let mut m = self.rows.clone();
        m.push(v.to_vec());
        linalg::rank(&m) == 2
    }

    /// Canonical text of the RREF entries, used for ordering.
    pub fn sort_key(&self) -> Vec<String> {
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(ToString::to_string))
            .collect()
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("span{")?;
        write_vector(f, &self.rows[0])?;
        f.write_str(", ")?;
        write_vector(f, &self.rows[1])?;
        f.write_str("}")
    }
}

pub fn plane_from_vectors(w: &Direction, v: &Direction) -> Result<Plane> {
    Plane::from_rows(vec![w.vec.clone(), v.vec.clone()])
}

pub fn plane_equations(p: &Plane) -> Vec<Vec<CycloScalar>> {
    p.equations()
}

/// One irreducible component, given by a primitive Puiseux-form parametrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    label: String,
    param: Parametrization,
    m: u64,
    special: Vec<usize>,
    tangent: Direction,
}

impl Branch {
    pub fn new(label: impl Into<String>, param: Parametrization) -> Result<Self> {
        let label = label.into();
        let (m, special) = param.puiseux_form_check().map_err(|e| match e {
            Error::NotPuiseuxForm { detail, .. } => Error::NotPuiseuxForm {
                branch: label.clone(),
                detail,
            },
            other => other,
        })?;
        let g = param.exponent_gcd();
        if g != 1 {
            return Err(Error::NonPrimitiveParametrization { branch: label, gcd: g });
        }
        let tangent = Direction::new(param.coefficient_vector(m))?;
        Ok(Branch {
            label,
            param,
            m,
            special,
            tangent,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn param(&self) -> &Parametrization {
        &self.param
    }

    pub fn multiplicity(&self) -> u64 {
        self.m
    }

    /// Zero-based indices of coordinates equal to `u^m`.
    pub fn special_coords(&self) -> &[usize] {
        &self.special
    }

    pub fn tangent(&self) -> &Direction {
        &self.tangent
    }

    pub fn n(&self) -> usize {
        self.param.n()
    }

    pub fn is_singular(&self) -> bool {
        self.m > 1
    }

    fn embedded(&self, conductor: u64) -> Result<Self> {
        Ok(Branch {
            label: self.label.clone(),
            param: self.param.embed(conductor)?,
            m: self.m,
            special: self.special.clone(),
            tangent: Direction {
                vec: self
                    .tangent
                    .vec
                    .iter()
                    .map(|x| x.embed(conductor))
                    .collect::<Result<_>>()?,
            },
        })
    }
}

pub fn tangent_direction(b: &Branch) -> Direction {
    b.tangent.clone()
}

/// A reduced curve germ: an ordered list of branches in a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    n: usize,
    branches: Vec<Branch>,
    conductor: u64,
}

impl Curve {
    /// Fixes the global conductor and re-expresses every coefficient there.
    pub fn new(branches: Vec<Branch>) -> Result<Self> {
        let Some(first) = branches.first() else {
            return Err(Error::InvalidInput("a curve needs at least one branch".into()));
        };
        let n = first.n();
        for b in &branches {
            if b.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.n(),
                });
            }
        }
        let mut conductor: u64 = 1;
        for b in &branches {
            conductor = conductor.lcm(&b.m);
            for s in b.param.coords() {
                for (_, c) in s.terms() {
                    conductor = conductor.lcm(&c.conductor());
                }
            }
            if conductor > MAX_CONDUCTOR {
                return Err(Error::ConductorTooLarge(conductor));
            }
        }
        let branches = branches
            .iter()
            .map(|b| b.embedded(conductor))
            .collect::<Result<_>>()?;
        Ok(Curve {
            n,
            branches,
            conductor,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn branch(&self, i: usize) -> &Branch {
        &self.branches[i]
    }

    pub fn r(&self) -> usize {
        self.branches.len()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// The sub-curve formed by the branches at `indices`, in that order.
    pub fn subcurve(&self, indices: &[usize]) -> Result<Curve> {
        Curve::new(indices.iter().map(|&i| self.branches[i].clone()).collect())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let r = self.r();
        (0..r).flat_map(move |i| (i + 1..r).map(move |j| (i, j)))
    }
}

/// Singular branches and the split of branch pairs into tangent and non-tangent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TangencyClassification {
    pub singular: Vec<usize>,
    pub tangent: Vec<(usize, usize)>,
    pub non_tangent: Vec<(usize, usize)>,
}

impl TangencyClassification {
    pub fn is_tangent(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.tangent.contains(&key)
    }
}

pub fn classify(c: &Curve) -> TangencyClassification {
    let mut out = TangencyClassification {
        singular: (0..c.r()).filter(|&i| c.branch(i).is_singular()).collect(),
        ..Default::default()
    };
    for (i, j) in c.pairs() {
        if c.branch(i).tangent == c.branch(j).tangent {
            out.tangent.push((i, j));
        } else {
            out.non_tangent.push((i, j));
        }
    }
    out
}

/// For every tangent pair, the smallest coordinate special for both branches.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Compatibility {
    pub common_special: Vec<((usize, usize), usize)>,
}

impl Compatibility {
    pub fn common_special(&self, i: usize, j: usize) -> Option<usize> {
        self.common_special
            .iter()
            .find(|(p, _)| *p == (i, j))
            .map(|(_, s)| *s)
    }
}

pub fn check_compatibility(c: &Curve) -> Result<Compatibility> {
    let cls = classify(c);
    let mut out = Compatibility::default();
    for &(i, j) in &cls.tangent {
        let si = c.branch(i).special_coords();
        let sj = c.branch(j).special_coords();
        match si.iter().find(|s| sj.contains(s)) {
            Some(&s) => out.common_special.push(((i, j), s)),
            None => return Err(Error::IncompatibleSystem(i, j)),
        }
    }
    Ok(out)
}
