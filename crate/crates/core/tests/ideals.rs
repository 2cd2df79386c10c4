mod common;

use std::sync::Arc;

use cocone::linalg::Point;
use cocone::semigroup::hilbert_basis;
use cocone::verify::{random_instance, InstanceSpec};
use cocone::{colength, hilbert_samuel, samuel_multiplicity, Cone, ConvexRegion, MonomialIdeal, ToricSemigroup};
use common::{box_radius, brute_colength, brute_hilbert_basis, in_ideal, lattice_points, staircase_bound};
use proptest::prelude::*;

fn random_cone(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, dim), dim..=dim + 1)
        .prop_filter("positive rays", |rays| rays.iter().all(|r| r.iter().sum::<i64>() > 0))
        .prop_filter("pointed and full", |rays| Cone::from_rays(rays).is_ok())
}

fn ray_xi_total(cone: &Cone) -> i64 {
    cone.rays().iter().map(|r| cone.xi_of_lattice(r)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hilbert_basis_matches_brute_force(rays in random_cone(3)) {
        let cone = Cone::from_rays(&rays).unwrap();
        // Every basis element lies in a fundamental parallelepiped of some
        // simplicial piece, so its xi is below the sum over all rays.
        let bound = ray_xi_total(&cone);
        let radius = box_radius(cone.rays(), bound);
        let expected = brute_hilbert_basis(cone.facet_normals(), cone.xi(), bound, radius);
        let mut got = hilbert_basis(&cone).unwrap();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn hilbert_basis_2d_matches_brute_force(rays in random_cone(2).prop_map(|r| r[..2].to_vec())) {
        prop_assume!(Cone::from_rays(&rays).is_ok());
        let cone = Cone::from_rays(&rays).unwrap();
        let bound = ray_xi_total(&cone);
        let expected = brute_hilbert_basis(cone.facet_normals(), cone.xi(), bound, box_radius(cone.rays(), bound));
        let mut got = hilbert_basis(&cone).unwrap();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn basis_is_irreducible_and_generates(rays in random_cone(3)) {
        let s = ToricSemigroup::new(Arc::new(Cone::from_rays(&rays).unwrap())).unwrap();
        let cone = s.cone().clone();
        let basis = s.hilbert_basis();
        for h in basis {
            let rest: Vec<Vec<i64>> = basis.iter().filter(|g| *g != h).cloned().collect();
            // h = g + s with g another basis element and s in S would make h reducible.
            prop_assert!(!in_ideal(cone.facet_normals(), &rest, h));
        }
        let bound = 10;
        let pts = lattice_points(cone.facet_normals(), cone.xi(), bound, box_radius(cone.rays(), bound));
        let set: std::collections::HashSet<Vec<i64>> = pts.iter().cloned().collect();
        // Reachable from 0 by adding basis elements, in increasing xi order.
        let mut sorted = pts.clone();
        sorted.sort_by_key(|x| cone.xi_of_lattice(x));
        let mut reached: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
        for x in &sorted {
            let ok = x.iter().all(|&c| c == 0)
                || basis.iter().any(|h| {
                    let d: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
                    set.contains(&d) && reached.contains(&d)
                });
            prop_assert!(ok, "{x:?} is not a sum of basis elements");
            reached.insert(x.clone());
        }
    }
}

fn instances(dim: usize, count: u64) -> Vec<cocone::verify::Instance> {
    (0..count)
        .map(|seed| random_instance(&InstanceSpec::standard(seed, dim)).unwrap())
        .collect()
}

#[test]
fn generated_ideals_are_m_primary() {
    for dim in 2..=4 {
        for inst in instances(dim, 10) {
            assert_eq!(inst.ideals.len(), dim + 1);
            for i in &inst.ideals {
                assert!(i.is_m_primary());
                for g in i.generators() {
                    assert!(common::in_cone(inst.cone.facet_normals(), g));
                }
            }
        }
    }
}

#[test]
fn colength_matches_brute_force() {
    for dim in 2..=3 {
        for inst in instances(dim, 25) {
            let c = &inst.cone;
            for i in &inst.ideals {
                let bound = staircase_bound(c.facet_normals(), c.xi(), c.rays(), i.generators()).unwrap();
                let radius = box_radius(c.rays(), bound);
                let expected = brute_colength(c.facet_normals(), c.xi(), i.generators(), bound, radius);
                assert_eq!(colength(i).unwrap(), expected, "{}", inst.spec);
            }
        }
    }
}

#[test]
fn newton_region_of_a_product_is_the_minkowski_sum() {
    for dim in 2..=3 {
        for inst in instances(dim, 10) {
            let (a, b) = (&inst.ideals[0], &inst.ideals[1]);
            let product = a.product(b).unwrap();
            let sums: Vec<Point> = a
                .generators()
                .iter()
                .flat_map(|g| b.generators().iter().map(move |h| &Point::from_ints(g) + &Point::from_ints(h)))
                .collect();
            let expected = ConvexRegion::from_generators(&inst.cone, sums).unwrap();
            assert_eq!(product.newton().halfspaces(), expected.halfspaces());
            assert_eq!(
                product.newton().halfspaces(),
                a.newton().sum(b.newton()).unwrap().halfspaces()
            );
        }
    }
}

#[test]
fn closure_laws() {
    for dim in 2..=3 {
        for inst in instances(dim, 10) {
            let c = &inst.cone;
            for i in &inst.ideals {
                let closed = i.integral_closure().unwrap();
                for g in i.generators() {
                    assert!(closed.contains(g).unwrap());
                }
                assert_eq!(closed.integral_closure().unwrap(), closed);
                assert!(closed.equivalent(i).unwrap());
                let bound = staircase_bound(c.facet_normals(), c.xi(), c.rays(), i.generators()).unwrap();
                for x in lattice_points(c.facet_normals(), c.xi(), bound, box_radius(c.rays(), bound)) {
                    let inside = i.newton().contains(&Point::from_ints(&x));
                    assert_eq!(closed.contains(&x).unwrap(), inside, "{x:?} in {}", inst.spec);
                }
                assert_eq!(samuel_multiplicity(&closed).unwrap(), samuel_multiplicity(i).unwrap());
            }
        }
    }
}

#[test]
fn hilbert_samuel_is_the_colength_of_powers() {
    for inst in instances(2, 20) {
        let i = &inst.ideals[0];
        let table = hilbert_samuel(i, 4).unwrap();
        let mut last = 0;
        for k in 1..=4 {
            let h = table.get(k).unwrap();
            assert!(h >= last);
            last = h;
            assert_eq!(h, colength(&i.power(k)).unwrap(), "k={k} {}", inst.spec);
        }
    }
}

#[test]
fn multiplicity_scales_with_powers() {
    for (dim, count) in [(2, 15), (3, 4)] {
        for inst in instances(dim, count) {
            let i = &inst.ideals[0];
            let e = samuel_multiplicity(i).unwrap();
            for m in 2..=3u32 {
                assert_eq!(samuel_multiplicity(&i.power(m)).unwrap(), m.pow(dim as u32) as u64 * e);
            }
        }
    }
}

#[test]
fn ideals_reject_foreign_points() {
    let s = Arc::new(ToricSemigroup::new(Arc::new(Cone::from_rays(&[vec![1, 0], vec![1, 2]]).unwrap())).unwrap());
    assert!(MonomialIdeal::new(&s, vec![vec![0, 1]]).is_err());
    assert!(MonomialIdeal::new(&s, vec![]).is_err());
    assert!(MonomialIdeal::new(&s, vec![vec![1, 0, 0]]).is_err());
    let x = MonomialIdeal::new(&s, vec![vec![1, 0]]).unwrap();
    assert!(!x.is_m_primary());
    assert!(colength(&x).is_err());
}
