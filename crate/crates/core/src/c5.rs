//! Assembly of the C5-cone and the plane-count bounds.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use crate::auxiliary::{
    characteristic_aux, characteristic_thetas, AuxKind, AuxRecord, ContactPair, RootOfUnity,
    ThetaEnumeration,
};
use crate::error::{Error, Result};
use crate::geometry::{
    check_compatibility, classify, plane_from_vectors, Compatibility, Curve, Direction, Plane,
    TangencyClassification,
};
use crate::scalar::CycloScalar;

/// Where a plane of the cone comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Aux(AuxKind),
    /// The span of the tangents of a non-tangent pair.
    NonTangent { pair: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeComponent {
    pub plane: Plane,
    pub provenance: Vec<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C5Cone {
    /// A smooth irreducible curve: the cone is its tangent line.
    Line(Direction),
    Planes(Vec<ConeComponent>),
}

impl C5Cone {
    pub fn planes(&self) -> Vec<&Plane> {
        match self {
            C5Cone::Line(_) => Vec::new(),
            C5Cone::Planes(c) => c.iter().map(|c| &c.plane).collect(),
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            C5Cone::Line(_) => 1,
            C5Cone::Planes(c) => c.len(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            C5Cone::Line(_) => 1,
            C5Cone::Planes(_) => 2,
        }
    }

    /// Basis rows of every component, in output order.
    pub fn component_bases(&self) -> Vec<Vec<Vec<CycloScalar>>> {
        match self {
            C5Cone::Line(d) => vec![vec![d.as_slice().to_vec()]],
            C5Cone::Planes(c) => c.iter().map(|c| c.plane.basis().to_vec()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct C5Options {
    pub characteristic: ThetaEnumeration,
}

/// Everything computed while building the cone.
#[derive(Clone, Debug)]
pub struct C5Analysis {
    pub classification: TangencyClassification,
    pub compatibility: Compatibility,
    /// Characteristic records, then contact records, each in enumeration order.
    pub records: Vec<AuxRecord>,
    pub cone: C5Cone,
}

enum Job {
    Char(usize, RootOfUnity),
    Contact(usize, RootOfUnity),
}

pub fn analyze(c: &Curve, opts: C5Options) -> Result<C5Analysis> {
    let compatibility = check_compatibility(c)?;
    let classification = classify(c);

    let pairs: Vec<ContactPair> = c
        .pairs()
        .map(|(i, j)| {
            ContactPair::new(i, c.branch(i), j, c.branch(j), compatibility.common_special(i, j))
        })
        .collect::<Result<_>>()?;

    let mut jobs = Vec::new();
    for &i in &classification.singular {
        for theta in characteristic_thetas(c.branch(i).multiplicity(), opts.characteristic) {
            jobs.push(Job::Char(i, theta));
        }
    }
    for (p, pair) in pairs.iter().enumerate() {
        for theta in pair.thetas() {
            jobs.push(Job::Contact(p, theta));
        }
    }
    let records: Vec<AuxRecord> = jobs
        .par_iter()
        .map(|job| match job {
            Job::Char(i, theta) => characteristic_aux(*i, c.branch(*i), *theta),
            Job::Contact(p, theta) => pairs[*p].record(*theta),
        })
        .collect::<Result<_>>()?;

    let cone = if c.r() == 1 && !c.branch(0).is_singular() {
        C5Cone::Line(c.branch(0).tangent().clone())
    } else {
        let mut tagged: Vec<(Plane, Provenance)> = Vec::new();
        for r in &records {
            match r.kind {
                AuxKind::Contact { pair: (i, j), .. } if !classification.is_tangent(i, j) => {}
                kind => tagged.push((r.plane.clone(), Provenance::Aux(kind))),
            }
        }
        for &(i, j) in &classification.non_tangent {
            let plane = plane_from_vectors(c.branch(i).tangent(), c.branch(j).tangent())?;
            tagged.push((plane, Provenance::NonTangent { pair: (i, j) }));
        }
        C5Cone::Planes(assemble(tagged))
    };
    Ok(C5Analysis {
        classification,
        compatibility,
        records,
        cone,
    })
}

/// Deduplicate planes, merge provenance and sort by canonical entry text.
fn assemble(tagged: Vec<(Plane, Provenance)>) -> Vec<ConeComponent> {
    let mut keyed: BTreeMap<Vec<String>, ConeComponent> = BTreeMap::new();
    for (plane, prov) in tagged {
        keyed
            .entry(plane.sort_key())
            .or_insert_with(|| ConeComponent {
                plane,
                provenance: Vec::new(),
            })
            .provenance
            .push(prov);
    }
    keyed.into_values().collect()
}

/// The C5-cone with default options.
pub fn c5_cone(c: &Curve) -> Result<C5Cone> {
    Ok(analyze(c, C5Options::default())?.cone)
}

/// Maximal length of a chain of nested divisors of `n`.
pub fn sigma(n: u64) -> u64 {
    assert!(n >= 1);
    let mut m = n;
    let mut count = 0;
    let mut p = 2;
    while p * p <= m {
        while m.is_multiple_of(p) {
            m /= p;
            count += 1;
        }
        p += 1;
    }
    if m > 1 {
        count += 1;
    }
    1 + count
}

fn bound_with(c: &Curve, per_branch: impl Fn(u64) -> u64) -> u64 {
    let cls = classify(c);
    let s: u64 = cls
        .singular
        .iter()
        .map(|&i| per_branch(c.branch(i).multiplicity()))
        .sum();
    let t: u64 = cls
        .tangent
        .iter()
        .map(|&(i, j)| c.branch(i).multiplicity().lcm(&c.branch(j).multiplicity()))
        .sum();
    s + t + cls.non_tangent.len() as u64
}

pub fn bound1(c: &Curve) -> u64 {
    bound_with(c, |m| m - 1)
}

pub fn bound2(c: &Curve) -> u64 {
    bound_with(c, |m| sigma(m) - 1)
}

/// A polynomial in `x, y, z`, keyed by exponent triples.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TernaryPolynomial {
    terms: BTreeMap<[u32; 3], CycloScalar>,
}

impl TernaryPolynomial {
    pub fn one() -> Self {
        TernaryPolynomial {
            terms: BTreeMap::from([([0, 0, 0], CycloScalar::one())]),
        }
    }

    pub fn linear(coeffs: &[CycloScalar]) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0; 3];
                e[k] = 1;
                terms.insert(e, c.clone());
            }
        }
        TernaryPolynomial { terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<[u32; 3], CycloScalar> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                let entry = terms.entry(e).or_default();
                *entry = &*entry + &(x * y);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TernaryPolynomial { terms }
    }

    /// Terms in decreasing graded-lexicographic order with `x > y > z`.
    pub fn terms(&self) -> Vec<([u32; 3], &CycloScalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then(b.cmp(a))
        });
        v
    }

    pub fn coeff(&self, e: [u32; 3]) -> CycloScalar {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Scale so that the leading graded-lex coefficient is one.
    pub fn monic(&self) -> Self {
        let Some((_, lead)) = self.terms().first().map(|(e, c)| (*e, (*c).clone())) else {
            return self.clone();
        };
        let inv = lead.inv().expect("nonzero leading coefficient");
        TernaryPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, c * &inv)).collect(),
        }
    }
}

impl fmt::Display for TernaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in terms.iter().enumerate() {
            let mut mono: Vec<String> = Vec::new();
            for (k, name) in ["x", "y", "z"].iter().enumerate() {
                match e[k] {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    p => mono.push(format!("{name}^{p}")),
                }
            }
            let mono = mono.join("*");
            let (negative, body) = match c.to_rational() {
                Some(q) => {
                    let neg = q < num_rational::BigRational::from_integer(0.into());
                    let a = if neg { -q } else { q };
                    let is_one = a == num_rational::BigRational::from_integer(1.into());
                    let body = match (is_one, mono.is_empty()) {
                        (true, false) => mono.clone(),
                        (_, true) => a.to_string(),
                        (false, false) => format!("{a}*{mono}"),
                    };
                    (neg, body)
                }
                None if mono.is_empty() => (false, format!("({c})")),
                None => (false, format!("({c})*{mono}")),
            };
            match (idx, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Product of the defining linear forms of a cone in three-space, made monic.
pub fn product_equation(cone: &C5Cone, n: usize) -> Result<TernaryPolynomial> {
    if n != 3 {
        return Err(Error::UnsupportedDimension {
            expected: 3,
            found: n,
        });
    }
    let C5Cone::Planes(components) = cone else {
        return Err(Error::DegenerateCone);
    };
    let mut poly = TernaryPolynomial::one();
    for comp in components {
        let eq = comp.plane.equations();
        poly = poly.mul(&TernaryPolynomial::linear(&eq[0]));
    }
    Ok(poly.monic())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1), 1);
        assert_eq!(sigma(2017), 2);
        assert_eq!(sigma(12), 4);
        assert_eq!(sigma(16), 5);
    }
}
