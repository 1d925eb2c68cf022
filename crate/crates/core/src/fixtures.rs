//! Reference curves used throughout the tests and shipped as JSON documents.

use crate::geometry::{Branch, Curve};
use crate::scalar::CycloScalar;
use crate::series::{CoordinateSeries, Parametrization};

fn branch(label: &str, coords: &[&[(u64, i64)]]) -> Branch {
    let p = Parametrization::from_integer_terms(coords).expect("fixture parametrization");
    Branch::new(label, p).expect("fixture branch")
}

fn curve(branches: Vec<Branch>) -> Curve {
    Curve::new(branches).expect("fixture curve")
}

/// `(u^4, u^6, u^7)`.
pub fn space_cusp() -> Curve {
    curve(vec![branch("X", &[&[(4, 1)], &[(6, 1)], &[(7, 1)]])])
}

/// Four branches in three-space, two of them tangent.
pub fn four_branch() -> Curve {
    curve(vec![
        branch("X1", &[&[(4, 1)], &[(6, 1)], &[(9, 1)]]),
        branch("X2", &[&[(6, 1)], &[(9, -1), (11, 1)], &[(9, 1), (11, 1)]]),
        branch("X3", &[&[(1, 1)], &[(1, 2)], &[(1, 1)]]),
        branch("X4", &[&[(4, 1)], &[(3, 1)], &[(5, 1)]]),
    ])
}

/// `(u^2017, u^2018, ..., u^2216)` in 200-space.
pub fn prime_multiplicity() -> Curve {
    let coords: Vec<CoordinateSeries> = (0..200)
        .map(|k| CoordinateSeries::monomial(2017 + k, CycloScalar::one()))
        .collect();
    curve(vec![Branch::new("X", Parametrization::new(coords).unwrap()).unwrap()])
}

/// Two tangent branches in five-space whose contact planes separate cube roots of unity.
pub fn five_space_pair() -> Curve {
    let z = |k| CycloScalar::zeta(3, k).unwrap();
    let mono = |e, c| CoordinateSeries::monomial(e, c);
    let one = CycloScalar::one;
    let p1 = Parametrization::new(vec![
        mono(3, one()),
        mono(4, z(1)),
        mono(4, z(2)),
        mono(4, one()),
        mono(5, one()),
    ])
    .unwrap();
    let p2 = Parametrization::new(vec![
        mono(3, one()),
        mono(4, one()),
        mono(4, one()),
        mono(4, one()),
        mono(7, one()),
    ])
    .unwrap();
    curve(vec![
        Branch::new("X1", p1).unwrap(),
        Branch::new("X2", p2).unwrap(),
    ])
}

/// Fiber `(u^6, u^9 + u^10, u^11 + t u^10)` of a bi-Lipschitz trivial family.
pub fn family_fiber(t: i64) -> Curve {
    curve(vec![branch(
        "X",
        &[&[(6, 1)], &[(9, 1), (10, 1)], &[(10, t), (11, 1)]],
    )])
}

/// Plane pair `(u^4, u^6 + u^7)`, `(u^4, u^6 + u^9)`.
pub fn plane_pair_x() -> Curve {
    curve(vec![
        branch("X1", &[&[(4, 1)], &[(6, 1), (7, 1)]]),
        branch("X2", &[&[(4, 1)], &[(6, 1), (9, 1)]]),
    ])
}

/// Plane pair `(u^4, u^6 + 2u^7)`, `(u^4, -u^6 + 3u^9)`.
pub fn plane_pair_y() -> Curve {
    curve(vec![
        branch("Y1", &[&[(4, 1)], &[(6, 1), (7, 2)]]),
        branch("Y2", &[&[(4, 1)], &[(6, -1), (9, 3)]]),
    ])
}

/// Tangent plane branches of multiplicities 8 and 12 sharing two characteristic exponents.
pub fn contact_structure_pair() -> Curve {
    curve(vec![
        branch("X1", &[&[(8, 1)], &[(12, 1), (20, 1), (22, 2), (23, 1)]]),
        branch("X2", &[&[(12, 1)], &[(18, 1), (33, 1), (34, 1)]]),
    ])
}

/// Four bi-Lipschitz equivalent curves with 1, 2, 3 and 4 cone planes (`k` in 1..=4).
pub fn analytic_type(k: usize) -> Curve {
    let y: &[(u64, i64)] = match k {
        1 => &[(57, 1)],
        2 => &[(24, 1), (57, 1)],
        3 => &[(24, 1), (36, 1), (57, 1)],
        4 => &[(24, 1), (36, 1), (54, -1), (57, 1)],
        _ => panic!("analytic_type index must be 1..=4"),
    };
    let z: &[(u64, i64)] = if k == 1 {
        &[(24, 1), (36, 1), (54, 1), (55, 1)]
    } else {
        &[(36, 1), (54, 1), (55, 1)]
    };
    curve(vec![branch(&format!("X{k}"), &[&[(16, 1)], y, z])])
}

/// Every named fixture, as `(name, curve)`.
pub fn all() -> Vec<(&'static str, Curve)> {
    vec![
        ("space_cusp", space_cusp()),
        ("four_branch", four_branch()),
        ("prime_multiplicity", prime_multiplicity()),
        ("five_space_pair", five_space_pair()),
        ("family_fiber_t0", family_fiber(0)),
        ("family_fiber_t1", family_fiber(1)),
        ("plane_pair_x", plane_pair_x()),
        ("plane_pair_y", plane_pair_y()),
        ("contact_structure_pair", contact_structure_pair()),
        ("analytic_type_1", analytic_type(1)),
        ("analytic_type_2", analytic_type(2)),
        ("analytic_type_3", analytic_type(3)),
        ("analytic_type_4", analytic_type(4)),
    ]
}
