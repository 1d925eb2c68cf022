//! Plane-curve invariants and the bi-Lipschitz classification by auxiliary multiplicities.

use num_integer::Integer;
use rayon::prelude::*;

use crate::auxiliary::{cham, coam_from_records, ChAM, CoAM, ContactPair};
use crate::error::{Error, Result};
use crate::geometry::{check_compatibility, Branch, Curve};

/// Largest branch count accepted by [`bilipschitz_equivalent`].
pub const MAX_BRANCHES: usize = 12;

/// The non-special coordinate of a plane branch `(u^m, y(u))`.
fn plane_series(b: &Branch) -> Result<(usize, &crate::series::CoordinateSeries)> {
    if b.n() != 2 {
        return Err(Error::NotPlaneCurve(b.label().to_string()));
    }
    let s = b.special_coords()[0];
    Ok((s, &b.param().coords()[1 - s]))
}

/// `{m} ∪ {β_k}` by the gcd chain over the exponents of the non-special coordinate.
pub fn characteristic_exponents(b: &Branch) -> Result<Vec<u64>> {
    let (_, y) = plane_series(b)?;
    let m = b.multiplicity();
    let mut out = vec![m];
    let mut e = m;
    for (i, _) in y.terms() {
        let g = e.gcd(i);
        if g < e {
            out.push(*i);
            e = g;
        }
    }
    Ok(out)
}

/// Sum of the contact multiplicities divided by `mt1 * mt2`.
pub fn intersection_multiplicity(coam: &CoAM, mt1: u64, mt2: u64) -> Result<u64> {
    let numerator = coam.sum();
    let denominator = mt1 * mt2;
    if denominator == 0 || !numerator.is_multiple_of(denominator) {
        return Err(Error::NonIntegralResult {
            numerator,
            denominator,
        });
    }
    Ok(numerator / denominator)
}

/// Intersection multiplicity of two plane branches of a curve.
pub fn pair_intersection_multiplicity(c: &Curve, i: usize, j: usize) -> Result<u64> {
    let (bi, bj) = (c.branch(i), c.branch(j));
    plane_series(bi)?;
    plane_series(bj)?;
    let compat = check_compatibility(c)?;
    let key = if i < j { (i, j) } else { (j, i) };
    let pair = ContactPair::new(i, bi, j, bj, compat.common_special(key.0, key.1))?;
    let coam = coam_from_records(&pair.records()?);
    let l = pair.lcm();
    intersection_multiplicity(&coam, l / bi.multiplicity(), l / bj.multiplicity())
}

/// Shared characteristic data of a tangent pair of plane branches and the
/// resulting shape of their contact multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactStructure {
    pub tau: usize,
    pub betas: Vec<u64>,
    /// `E_0 = m^(1,2)`, `E_j = gcd(E_(j-1), β_j)`.
    pub e: Vec<u64>,
    pub q: usize,
    pub delta: u64,
    /// `(value, multiplicity)` in increasing order.
    pub counts: Vec<(u64, usize)>,
}

pub fn contact_structure(bi: &Branch, bj: &Branch, coam: &CoAM) -> Result<ContactStructure> {
    let ci = characteristic_exponents(bi)?;
    let cj = characteristic_exponents(bj)?;
    let l = bi.multiplicity().lcm(&bj.multiplicity());
    let si: Vec<u64> = ci[1..].iter().map(|b| b * (l / bi.multiplicity())).collect();
    let sj: Vec<u64> = cj[1..].iter().map(|b| b * (l / bj.multiplicity())).collect();
    // Transversal branches share no characteristic data.
    let tangent = bi.tangent() == bj.tangent();
    let betas: Vec<u64> = si
        .iter()
        .filter(|_| tangent)
        .zip(&sj)
        .take_while(|(a, b)| a == b)
        .map(|(a, _)| *a)
        .collect();
    let tau = betas.len();
    let mut e = vec![l];
    for b in &betas {
        let last = *e.last().unwrap();
        e.push(last.gcd(b));
    }

    let mismatch = |msg: String| Error::StructureMismatch(msg);
    let Some(&delta) = coam.sequence.last() else {
        return Err(mismatch("empty contact sequence".into()));
    };
    if coam.sequence.len() as u64 != l {
        return Err(mismatch(format!(
            "sequence has length {}, expected {l}",
            coam.sequence.len()
        )));
    }
    let counts = coam.counts();
    let below: Vec<u64> = counts.iter().map(|(v, _)| *v).filter(|&v| v < delta).collect();
    let q = betas.iter().filter(|b| below.contains(b)).count();
    if below != betas[..q] {
        return Err(mismatch(format!(
            "values below delta {below:?} are not the leading shared exponents {:?}",
            &betas[..q]
        )));
    }
    let mut expected: Vec<(u64, usize)> = (0..q)
        .map(|k| (betas[k], (e[k] - e[k + 1]) as usize))
        .collect();
    expected.push((delta, e[q] as usize));
    expected.retain(|(_, c)| *c > 0);
    if expected != counts {
        return Err(mismatch(format!(
            "counts {counts:?} differ from predicted {expected:?}"
        )));
    }
    Ok(ContactStructure {
        tau,
        betas,
        e,
        q,
        delta,
        counts,
    })
}

/// ChAM of every branch and CoAM of every pair `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantProfile {
    pub r: usize,
    pub cham: Vec<ChAM>,
    pub coam: Vec<((usize, usize), CoAM)>,
    pub tangent: Vec<((usize, usize), bool)>,
}

impl InvariantProfile {
    pub fn coam(&self, i: usize, j: usize) -> &CoAM {
        let key = if i < j { (i, j) } else { (j, i) };
        &self.coam.iter().find(|(p, _)| *p == key).unwrap().1
    }
}

pub fn profile(c: &Curve) -> Result<InvariantProfile> {
    let compat = check_compatibility(c)?;
    let chams = c
        .branches()
        .par_iter()
        .map(cham)
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = c.pairs().collect();
    let results = pairs
        .par_iter()
        .map(|&(i, j)| {
            let pair = ContactPair::new(
                i,
                c.branch(i),
                j,
                c.branch(j),
                compat.common_special(i, j),
            )?;
            Ok(((i, j), coam_from_records(&pair.records()?), pair.is_tangent()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantProfile {
        r: c.r(),
        cham: chams,
        coam: results.iter().map(|(p, s, _)| (*p, s.clone())).collect(),
        tangent: results.iter().map(|(p, _, t)| (*p, *t)).collect(),
    })
}

/// Outcome of the equivalence search; `witness[i]` is the image of branch `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub witness: Option<Vec<usize>>,
}

fn search(
    x: &InvariantProfile,
    y: &InvariantProfile,
    assigned: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = assigned.len();
    if i == x.r {
        return true;
    }
    for k in 0..y.r {
        if used[k] || x.cham[i] != y.cham[k] {
            continue;
        }
        let consistent = assigned
            .iter()
            .enumerate()
            .all(|(h, &img)| x.coam(h, i) == y.coam(img, k));
        if !consistent {
            continue;
        }
        assigned.push(k);
        used[k] = true;
        if search(x, y, assigned, used) {
            return true;
        }
        assigned.pop();
        used[k] = false;
    }
    false
}

/// Search for a branch bijection preserving ChAM (as sets) and CoAM (as sequences).
pub fn equivalent_profiles(x: &InvariantProfile, y: &InvariantProfile) -> Result<Equivalence> {
    for r in [x.r, y.r] {
        if r > MAX_BRANCHES {
            return Err(Error::TooManyBranches {
                found: r,
                limit: MAX_BRANCHES,
            });
        }
    }
    if x.r != y.r {
        return Ok(Equivalence {
            equivalent: false,
            witness: None,
        });
    }
    let mut assigned = Vec::new();
    let mut used = vec![false; y.r];
    let found = search(x, y, &mut assigned, &mut used);
    Ok(Equivalence {
        equivalent: found,
        witness: found.then_some(assigned),
    })
}

pub fn bilipschitz_equivalent(x: &Curve, y: &Curve) -> Result<Equivalence> {
    for c in [x, y] {
        if c.r() > MAX_BRANCHES {
            return Err(Error::TooManyBranches {
                found: c.r(),
                limit: MAX_BRANCHES,
            });
        }
    }
    equivalent_profiles(&profile(x)?, &profile(y)?)
}
