//! Auxiliary characteristic and contact parametrizations and their multiplicities.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::geometry::{plane_from_vectors, Branch, Direction, Plane};
use crate::scalar::{self, CycloScalar};
use crate::series::{Order, Parametrization};

/// The root of unity `zeta_order^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    pub order: u64,
    pub k: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, k: u64) -> Self {
        assert!(order >= 1);
        RootOfUnity { order, k: k % order }
    }

    pub fn value(&self) -> CycloScalar {
        CycloScalar::zeta(self.order, self.k as i64).expect("root order within conductor cap")
    }

    /// Order of the element in the multiplicative group.
    pub fn multiplicative_order(&self) -> u64 {
        self.order / self.order.gcd(&self.k)
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z({},{})", self.order, self.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AuxKind {
    Characteristic { branch: usize, theta: RootOfUnity },
    Contact { pair: (usize, usize), theta: RootOfUnity },
}

/// One auxiliary parametrization with its multiplicity, direction and plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxRecord {
    pub kind: AuxKind,
    pub diff: Parametrization,
    pub m_theta: u64,
    pub v_theta: Direction,
    pub plane: Plane,
}

/// Which characteristic roots of unity to visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ThetaEnumeration {
    /// Every `zeta_m^k`, `k = 1..m-1`.
    Full,
    /// One root of each order `d | m`, `d > 1`.
    DivisorRepresentatives,
    /// Full enumeration for `m <= AUTO_FULL_LIMIT`, representatives above.
    #[default]
    Auto,
}

pub const AUTO_FULL_LIMIT: u64 = 64;

impl ThetaEnumeration {
    pub fn resolve(self, m: u64) -> ThetaEnumeration {
        match self {
            ThetaEnumeration::Auto if m <= AUTO_FULL_LIMIT => ThetaEnumeration::Full,
            ThetaEnumeration::Auto => ThetaEnumeration::DivisorRepresentatives,
            other => other,
        }
    }
}

/// The roots `theta != 1` with `theta^m = 1` visited under `mode`.
pub fn characteristic_thetas(m: u64, mode: ThetaEnumeration) -> Vec<RootOfUnity> {
    match mode.resolve(m) {
        ThetaEnumeration::DivisorRepresentatives => scalar::divisors(m)
            .into_iter()
            .filter(|&d| d > 1)
            .map(|d| RootOfUnity::new(m, m / d))
            .collect(),
        _ => (1..m).map(|k| RootOfUnity::new(m, k)).collect(),
    }
}

fn leading(diff: &Parametrization) -> Option<(u64, Direction)> {
    let Order::Finite(e) = diff.order() else {
        return None;
    };
    let v = Direction::new(diff.coefficient_vector(e)).expect("leading vector is nonzero");
    Some((e, v))
}

/// Record for `phi(u) - phi(theta u)` of branch `index`.
pub fn characteristic_aux(index: usize, b: &Branch, theta: RootOfUnity) -> Result<AuxRecord> {
    let m = b.multiplicity();
    if theta.is_one() || !(theta.k * m).is_multiple_of(theta.order) {
        return Err(Error::InvalidInput(format!(
            "{theta} is not a nontrivial {m}-th root of unity"
        )));
    }
    let diff = b.param().subtract(&b.param().substitute_root(theta.order, theta.k))?;
    let Some((m_theta, v_theta)) = leading(&diff) else {
        return Err(Error::NonPrimitiveParametrization {
            branch: b.label().to_string(),
            gcd: b.param().exponent_gcd(),
        });
    };
    let plane = plane_from_vectors(b.tangent(), &v_theta)?;
    Ok(AuxRecord {
        kind: AuxKind::Characteristic {
            branch: index,
            theta,
        },
        diff,
        m_theta,
        v_theta,
        plane,
    })
}

/// Reparametrized pair `phi_i(u^mi), phi_j(u^mj)` shared by every contact root.
#[derive(Clone, Debug)]
pub struct ContactPair<'a> {
    i: usize,
    j: usize,
    bi: &'a Branch,
    bj: &'a Branch,
    lcm: u64,
    pi: Parametrization,
    pj: Parametrization,
    common_special: Option<usize>,
    tangent: bool,
}

impl<'a> ContactPair<'a> {
    pub fn new(
        i: usize,
        bi: &'a Branch,
        j: usize,
        bj: &'a Branch,
        common_special: Option<usize>,
    ) -> Result<Self> {
        let tangent = bi.tangent() == bj.tangent();
        if let Some(s) = common_special {
            if !bi.special_coords().contains(&s) || !bj.special_coords().contains(&s) {
                return Err(Error::IncompatibleSystem(i, j));
            }
        } else if tangent {
            return Err(Error::IncompatibleSystem(i, j));
        }
        let lcm = bi.multiplicity().lcm(&bj.multiplicity());
        Ok(ContactPair {
            i,
            j,
            bi,
            bj,
            lcm,
            pi: bi.param().substitute_power(lcm / bi.multiplicity()),
            pj: bj.param().substitute_power(lcm / bj.multiplicity()),
            common_special,
            tangent,
        })
    }

    /// `m^(i,j)`, the number of contact roots.
    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    pub fn is_tangent(&self) -> bool {
        self.tangent
    }

    pub fn thetas(&self) -> Vec<RootOfUnity> {
        (0..self.lcm).map(|k| RootOfUnity::new(self.lcm, k)).collect()
    }

    pub fn record(&self, theta: RootOfUnity) -> Result<AuxRecord> {
        if !(theta.k * self.lcm).is_multiple_of(theta.order) {
            return Err(Error::InvalidInput(format!(
                "{theta} is not a {}-th root of unity",
                self.lcm
            )));
        }
        // (theta u)^mj substituted into phi_j equals phi_j(u^mj) scaled by theta.
        let shifted = self.pj.substitute_root(theta.order, theta.k);
        let diff = self.pi.subtract(&shifted)?;
        let Some((m_theta, v_theta)) = leading(&diff) else {
            return Err(Error::DuplicateBranch(self.i, self.j));
        };
        if let Some(s) = self.common_special {
            debug_assert!(diff.coords()[s].is_zero());
        }
        let plane = if self.tangent {
            plane_from_vectors(self.bi.tangent(), &v_theta)?
        } else {
            plane_from_vectors(self.bi.tangent(), self.bj.tangent())?
        };
        Ok(AuxRecord {
            kind: AuxKind::Contact {
                pair: (self.i, self.j),
                theta,
            },
            diff,
            m_theta,
            v_theta,
            plane,
        })
    }

    pub fn records(&self) -> Result<Vec<AuxRecord>> {
        self.thetas().into_iter().map(|t| self.record(t)).collect()
    }
}

/// Record for `phi_i(u^mi) - phi_j((theta u)^mj)`.
pub fn contact_aux(
    (i, bi): (usize, &Branch),
    (j, bj): (usize, &Branch),
    theta: RootOfUnity,
    common_special: Option<usize>,
) -> Result<AuxRecord> {
    ContactPair::new(i, bi, j, bj, common_special)?.record(theta)
}

/// Characteristic auxiliary multiplicities of a branch.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChAM {
    pub m: u64,
    pub values: BTreeSet<u64>,
}

impl fmt::Display for ChAM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// Contact auxiliary multiplicities of a branch pair, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoAM {
    pub sequence: Vec<u64>,
}

impl CoAM {
    pub fn sum(&self) -> u64 {
        self.sequence.iter().sum()
    }

    /// `(value, count)` pairs in increasing order of value.
    pub fn counts(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &v in &self.sequence {
            match out.last_mut() {
                Some((last, c)) if *last == v => *c += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

impl fmt::Display for CoAM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.sequence.iter().map(u64::to_string).collect();
        f.write_str(&v.join(" <= "))
    }
}

pub fn cham_with(b: &Branch, mode: ThetaEnumeration) -> Result<ChAM> {
    let m = b.multiplicity();
    let mut values = BTreeSet::from([m]);
    for theta in characteristic_thetas(m, mode) {
        values.insert(characteristic_aux(0, b, theta)?.m_theta);
    }
    Ok(ChAM { m, values })
}

/// ChAM using one root per divisor order.
pub fn cham(b: &Branch) -> Result<ChAM> {
    cham_with(b, ThetaEnumeration::DivisorRepresentatives)
}

pub fn coam_from_records(records: &[AuxRecord]) -> CoAM {
    let mut sequence: Vec<u64> = records.iter().map(|r| r.m_theta).collect();
    sequence.sort_unstable();
    CoAM { sequence }
}

pub fn coam(
    (i, bi): (usize, &Branch),
    (j, bj): (usize, &Branch),
    common_special: Option<usize>,
) -> Result<CoAM> {
    let pair = ContactPair::new(i, bi, j, bj, common_special)?;
    Ok(coam_from_records(&pair.records()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::plane_equations;

    fn branch(coords: &[&[(u64, i64)]]) -> Branch {
        Branch::new("b", Parametrization::from_integer_terms(coords).unwrap()).unwrap()
    }

    fn form(v: &[i64]) -> Vec<CycloScalar> {
        v.iter().map(|&x| CycloScalar::from_integer(x)).collect()
    }

    #[test]
    fn characteristic_records() {
        let b = branch(&[&[(4, 1)], &[(6, 1)], &[(7, 1)]]);
        let r = characteristic_aux(0, &b, RootOfUnity::new(4, 2)).unwrap();
        assert_eq!(r.m_theta, 7);
        assert_eq!(plane_equations(&r.plane), vec![form(&[0, 1, 0])]);
        for k in [1, 3] {
            let r = characteristic_aux(0, &b, RootOfUnity::new(4, k)).unwrap();
            assert_eq!(r.m_theta, 6);
            assert_eq!(plane_equations(&r.plane), vec![form(&[0, 0, 1])]);
        }
        assert!(characteristic_aux(0, &b, RootOfUnity::new(4, 0)).is_err());
        assert!(characteristic_aux(0, &b, RootOfUnity::new(3, 1)).is_err());

        let b2 = branch(&[&[(6, 1)], &[(9, -1), (11, 1)], &[(9, 1), (11, 1)]]);
        let r = characteristic_aux(1, &b2, RootOfUnity::new(6, 2)).unwrap();
        assert_eq!(r.m_theta, 11);
        assert_eq!(plane_equations(&r.plane), vec![form(&[0, 1, -1])]);
    }

    #[test]
    fn cham_values() {
        let b = branch(&[&[(4, 1)], &[(6, 1)], &[(7, 1)]]);
        assert_eq!(cham(&b).unwrap().values, BTreeSet::from([4, 6, 7]));
        let b = branch(&[&[(6, 1)], &[(9, 1), (10, 1)], &[(11, 1)]]);
        assert_eq!(cham(&b).unwrap().values, BTreeSet::from([6, 9, 10]));
        assert_eq!(cham_with(&b, ThetaEnumeration::Full).unwrap(), cham(&b).unwrap());
        let b = branch(&[&[(1, 1)], &[(1, 2)], &[(1, 1)]]);
        assert_eq!(cham(&b).unwrap().values, BTreeSet::from([1]));
    }

    #[test]
    fn non_tangent_coam_is_constant() {
        let b1 = branch(&[&[(4, 1)], &[(6, 1)], &[(9, 1)]]);
        let b4 = branch(&[&[(4, 1)], &[(3, 1)], &[(5, 1)]]);
        let c = coam((0, &b1), (3, &b4), None).unwrap();
        assert_eq!(c.sequence, vec![12; 12]);
    }

    #[test]
    fn duplicate_branch_detected() {
        let b = branch(&[&[(2, 1)], &[(3, 1)]]);
        assert_eq!(
            coam((0, &b), (1, &b), Some(0)),
            Err(Error::DuplicateBranch(0, 1))
        );
    }

    #[test]
    fn tangent_pair_requires_common_coordinate() {
        let b = branch(&[&[(2, 1)], &[(3, 1)]]);
        let c = branch(&[&[(2, 1)], &[(5, 1)]]);
        assert_eq!(coam((0, &b), (1, &c), None), Err(Error::IncompatibleSystem(0, 1)));
        assert_eq!(coam((0, &b), (1, &c), Some(0)).unwrap().sequence, vec![3, 3]);
    }
}
