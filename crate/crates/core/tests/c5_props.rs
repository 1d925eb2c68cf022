mod common;

use std::collections::BTreeSet;

use c5cone::c5::{analyze, bound1, bound2, c5_cone, product_equation, C5Cone, C5Options};
use c5cone::geometry::Curve;
use common::curve;
use proptest::prelude::*;

fn plane_keys(cone: &C5Cone) -> BTreeSet<Vec<String>> {
    cone.planes().iter().map(|p| p.sort_key()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plane_count_respects_bounds(c in curve(4, 3, 6, 30)) {
        let cone = c5_cone(&c).unwrap();
        let planes = cone.planes().len() as u64;
        prop_assert!(planes <= bound2(&c));
        prop_assert!(bound2(&c) <= bound1(&c));
        for p in cone.planes() {
            prop_assert!(c.branches().iter().any(|b| p.contains(b.tangent().as_slice())));
        }
        if let C5Cone::Line(d) = &cone {
            prop_assert!(c.r() == 1 && !c.branch(0).is_singular());
            prop_assert_eq!(d, c.branch(0).tangent());
        }
    }

    #[test]
    fn branch_order_is_irrelevant(c in curve(3, 3, 5, 20)) {
        let reversed: Vec<usize> = (0..c.r()).rev().collect();
        let d = c.subcurve(&reversed).unwrap();
        prop_assert_eq!(plane_keys(&c5_cone(&c).unwrap()), plane_keys(&c5_cone(&d).unwrap()));
    }

    #[test]
    fn subcurve_cone_is_contained(c in curve(3, 3, 5, 20)) {
        prop_assume!(c.r() >= 2);
        let full = c5_cone(&c).unwrap();
        let keys = plane_keys(&full);
        for i in 0..c.r() {
            let sub = c5_cone(&c.subcurve(&[i]).unwrap()).unwrap();
            match &sub {
                C5Cone::Line(d) => prop_assert!(full.planes().iter().any(|p| p.contains(d.as_slice()))),
                C5Cone::Planes(_) => prop_assert!(plane_keys(&sub).is_subset(&keys)),
            }
        }
    }

    #[test]
    fn product_degree_is_plane_count(c in curve(3, 3, 5, 20)) {
        prop_assume!(c.n() == 3);
        let a = analyze(&c, C5Options::default()).unwrap();
        if let C5Cone::Planes(p) = &a.cone {
            let poly = product_equation(&a.cone, 3).unwrap();
            for (e, _) in poly.terms() {
                prop_assert_eq!(e.iter().sum::<u32>() as usize, p.len());
            }
        }
    }
}

#[test]
fn analysis_is_deterministic() {
    let c: Curve = c5cone::fixtures::four_branch();
    let a = c5_cone(&c).unwrap();
    for _ in 0..3 {
        assert_eq!(c5_cone(&c).unwrap(), a);
    }
}
