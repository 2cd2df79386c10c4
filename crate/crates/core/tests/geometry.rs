mod common;

use cocone::linalg::{ratio, Point};
use cocone::polytope::{hrep_to_vrep, simplex_volume, vrep_to_hrep, Polytope};
use cocone::Rational;
use common::{factorial, hull_2d, leibniz_det, shoelace, Q};
use num_traits::Signed;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn points(dim: usize, min: usize, max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(prop::collection::vec(rational(), dim).prop_map(Point::new), min..=max)
}

fn full_dimensional(pts: &[Point]) -> bool {
    cocone::linalg::affine_rank(pts) == Some(pts[0].dim())
}

fn planar(p: &Point) -> [Q; 2] {
    [p[0].clone(), p[1].clone()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_2d_matches_monotone_chain(pts in points(2, 3, 9)) {
        prop_assume!(full_dimensional(&pts));
        let poly = Polytope::from_vertices(&pts).unwrap();
        let mut expected: Vec<[Q; 2]> = hull_2d(&pts.iter().map(planar).collect::<Vec<_>>());
        expected.sort();
        let mut got: Vec<[Q; 2]> = poly.vertices().iter().map(planar).collect();
        got.sort();
        prop_assert_eq!(&got, &expected);
        let back = hrep_to_vrep(&vrep_to_hrep(&pts).unwrap(), 2).unwrap();
        prop_assert_eq!(back, poly.vertices().to_vec());
        prop_assert_eq!(poly.volume(), shoelace(&hull_2d(&got)));
    }

    #[test]
    fn round_trip_3d(pts in points(3, 4, 9)) {
        prop_assume!(full_dimensional(&pts));
        let hs = vrep_to_hrep(&pts).unwrap();
        let verts = hrep_to_vrep(&hs, 3).unwrap();
        for v in &verts {
            prop_assert!(pts.contains(v));
        }
        for p in &pts {
            prop_assert!(hs.iter().all(|h| h.contains(p)));
        }
        // Every facet is spanned by vertices; every input point that is not a
        // vertex lies in the hull of the vertices (same halfspaces).
        for h in &hs {
            let tight: Vec<Point> = verts.iter().filter(|v| h.is_tight(v)).cloned().collect();
            prop_assert_eq!(cocone::linalg::affine_rank(&tight), Some(2));
        }
        prop_assert_eq!(vrep_to_hrep(&verts).unwrap(), hs);
    }

    #[test]
    fn volume_translation_and_scaling(pts in points(3, 4, 8), shift in prop::collection::vec(rational(), 3), lambda in (1i64..=4, 1i64..=3)) {
        prop_assume!(full_dimensional(&pts));
        let v = Polytope::from_vertices(&pts).unwrap().volume();
        let t = Point::new(shift);
        let moved: Vec<Point> = pts.iter().map(|p| p + &t).collect();
        prop_assert_eq!(Polytope::from_vertices(&moved).unwrap().volume(), v.clone());
        let l = ratio(lambda.0, lambda.1);
        let scaled: Vec<Point> = pts.iter().map(|p| p.scale(&l)).collect();
        prop_assert_eq!(Polytope::from_vertices(&scaled).unwrap().volume(), v * &l * &l * &l);
    }

    #[test]
    fn volume_does_not_depend_on_the_apex(pts in points(3, 5, 9), seed in any::<u64>()) {
        prop_assume!(full_dimensional(&pts));
        let poly = Polytope::from_vertices(&pts).unwrap();
        let n = poly.vertices().len();
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left((seed % n as u64) as usize);
        order.swap(0, (seed / 7 % n as u64) as usize);
        prop_assert_eq!(poly.volume_with_order(&order), poly.volume());
    }

    #[test]
    fn simplex_volume_is_det_over_factorial(pts in points(4, 5, 5)) {
        let rows: Vec<Vec<Rational>> = pts[1..]
            .iter()
            .map(|p| (0..4).map(|i| &p[i] - &pts[0][i]).collect())
            .collect();
        let expected = leibniz_det(&rows).abs() / factorial(4);
        let refs: Vec<&Point> = pts.iter().collect();
        prop_assert_eq!(simplex_volume(&refs), expected.clone());
        if full_dimensional(&pts) {
            prop_assert_eq!(Polytope::from_vertices(&pts).unwrap().volume(), expected);
        }
    }

    #[test]
    fn four_dimensional_round_trip(pts in points(4, 5, 8)) {
        prop_assume!(full_dimensional(&pts));
        let poly = Polytope::from_vertices(&pts).unwrap();
        let again = Polytope::from_halfspaces(poly.halfspaces(), 4).unwrap();
        prop_assert_eq!(again.vertices(), poly.vertices());
        prop_assert_eq!(again.volume(), poly.volume());
    }
}

#[test]
fn degenerate_polytopes_have_zero_volume() {
    let flat: Vec<Point> = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]
        .iter()
        .map(|p| Point::from_ints(p))
        .collect();
    assert!(Polytope::from_vertices(&flat).is_err());
    let hs = vrep_to_hrep(&[
        Point::from_ints(&[0, 0]),
        Point::from_ints(&[1, 0]),
        Point::from_ints(&[0, 1]),
    ])
    .unwrap();
    let mut squashed = hs.clone();
    squashed.push(cocone::Halfspace::from_i64(&[0, -1], ratio(0, 1)).unwrap());
    let segment = Polytope::from_halfspaces(&squashed, 2).unwrap();
    assert_eq!(segment.volume(), ratio(0, 1));
}
