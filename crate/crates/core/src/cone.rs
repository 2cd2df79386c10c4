//! Strictly convex, full-dimensional rational cones.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::dd::cone_generators;
use crate::error::{Error, Result};
use crate::linalg::{dot_i64, primitive_i64, rank, rank_int, rat, to_bigints, to_i64s, Point, Rational};
use crate::polytope::{Halfspace, Polytope};

/// A closed, strictly convex, full-dimensional cone with apex at the origin.
///
/// Carries both its extreme rays and its facets, plus a positive functional
/// `xi` (the sum of the inward facet normals) that is strictly positive on
/// every nonzero point of the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vec<i64>>,
    facets: Vec<Halfspace>,
    facet_normals: Vec<Vec<i64>>,
    xi: Vec<i64>,
    /// Volume of `C ∩ {xi <= 1}`.
    unit_section_volume: Rational,
}

impl Cone {
    /// Builds the cone spanned by `rays`, keeping only primitive extreme generators.
    pub fn from_rays(rays: &[Vec<i64>]) -> Result<Self> {
        let dim = rays.first().ok_or(Error::NotFullDimensional)?.len();
        let mut prim = Vec::with_capacity(rays.len());
        for r in rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            if r.iter().all(|&x| x == 0) {
                return Err(Error::ZeroVector("ray"));
            }
            prim.push(primitive_i64(r));
        }
        prim.sort();
        prim.dedup();

        let rows: Vec<Vec<BigInt>> = prim.iter().map(|r| to_bigints(r)).collect();
        if rank_int(&rows.iter().map(Vec::as_slice).collect::<Vec<_>>()) < dim {
            return Err(Error::NotFullDimensional);
        }

        // Facet normals are the extreme rays of the dual cone.
        let dual = cone_generators(dim, &rows);
        let normals = dual.rays;
        if rank_int(&normals.iter().map(Vec::as_slice).collect::<Vec<_>>()) < dim {
            let lines = cone_generators(dim, &normals).lineality;
            let witness = lines
                .first()
                .map(|l| to_i64s(l))
                .transpose()?
                .unwrap_or_default();
            return Err(Error::NotStrictlyConvex(witness));
        }

        let facet_normals: Vec<Vec<i64>> = normals.iter().map(|n| to_i64s(n)).collect::<Result<_>>()?;
        let mut facets: Vec<Halfspace> = normals
            .into_iter()
            .map(|n| Halfspace::new(n, Rational::zero()))
            .collect::<Result<_>>()?;
        facets.sort();

        let extreme: Vec<Vec<i64>> = prim
            .into_iter()
            .filter(|r| {
                let tight: Vec<Vec<Rational>> = facet_normals
                    .iter()
                    .filter(|a| dot_i64(a, r) == 0)
                    .map(|a| a.iter().map(|&x| rat(x)).collect())
                    .collect();
                rank(&tight) + 1 == dim
            })
            .collect();

        let mut xi = vec![0i64; dim];
        for a in &facet_normals {
            for (s, x) in xi.iter_mut().zip(a) {
                *s += x;
            }
        }
        if let Some(r) = extreme.iter().find(|r| dot_i64(&xi, r) <= 0) {
            return Err(Error::NotStrictlyConvex(r.clone()));
        }

        let mut section = vec![Point::origin(dim)];
        section.extend(
            extreme
                .iter()
                .map(|r| Point::from_ints(r).scale(&(Rational::from_integer(1.into()) / rat(dot_i64(&xi, r))))),
        );
        let unit_section_volume = Polytope::from_vertices(&section)?.volume();

        let mut facet_normals = facet_normals;
        facet_normals.sort();
        Ok(Cone {
            dim,
            rays: extreme,
            facets,
            facet_normals,
            xi,
            unit_section_volume,
        })
    }

    /// The closed positive orthant of dimension `dim`.
    pub fn orthant(dim: usize) -> Self {
        let rays: Vec<Vec<i64>> = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                e
            })
            .collect();
        Self::from_rays(&rays).expect("orthant is a valid cone")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Primitive extreme rays, sorted.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub(crate) fn rays_bigint(&self) -> Vec<Vec<BigInt>> {
        self.rays.iter().map(|r| to_bigints(r)).collect()
    }

    /// Facets `<a, x> >= 0` with primitive inward normals, sorted.
    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn facet_normals(&self) -> &[Vec<i64>] {
        &self.facet_normals
    }

    pub fn xi(&self) -> &[i64] {
        &self.xi
    }

    pub fn xi_of(&self, x: &Point) -> Rational {
        x.dot_i64(&self.xi)
    }

    pub fn xi_of_lattice(&self, x: &[i64]) -> i64 {
        dot_i64(&self.xi, x)
    }

    pub fn unit_section_volume(&self) -> &Rational {
        &self.unit_section_volume
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.dim() == self.dim
            && self
                .facet_normals
                .iter()
                .all(|a| x.dot_i64(a) >= Rational::zero())
    }

    pub fn contains_lattice(&self, x: &[i64]) -> bool {
        self.facet_normals.iter().all(|a| dot_i64(a, x) >= 0)
    }

    /// Whether `x` is a nonnegative multiple of the ray `r`.
    pub(crate) fn on_ray(x: &Point, r: &[i64]) -> bool {
        let n = r.len();
        for i in 0..n {
            for j in i + 1..n {
                if &x[i] * rat(r[j]) != &x[j] * rat(r[i]) {
                    return false;
                }
            }
        }
        x.dot_i64(r) >= Rational::zero()
    }

    /// Vertices of the section `C ∩ {xi = t}` for `t > 0`.
    pub fn section_vertices(&self, t: &Rational) -> Vec<Point> {
        self.rays
            .iter()
            .map(|r| Point::from_ints(r).scale(&(t / rat(self.xi_of_lattice(r)))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn quadrant() {
        let c = Cone::from_rays(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(c.xi(), &[1, 1]);
        assert_eq!(c.rays(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(c.unit_section_volume(), &ratio(1, 2));
        assert_eq!(c, Cone::orthant(2));
    }

    #[test]
    fn rays_are_made_primitive() {
        let c = Cone::from_rays(&[vec![2, 0], vec![3, 6]]).unwrap();
        assert_eq!(c.rays(), &[vec![1, 0], vec![1, 2]]);
        // Facets: y >= 0 and 2x - y >= 0, so xi = (2, 0).
        assert_eq!(c.xi(), &[2, 0]);
    }

    #[test]
    fn line_is_not_strictly_convex() {
        let r = Cone::from_rays(&[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        assert!(matches!(r, Err(Error::NotStrictlyConvex(ref w)) if w[1] == 0 && w[0] != 0));
    }

    #[test]
    fn whole_plane_is_not_strictly_convex() {
        let r = Cone::from_rays(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        assert!(matches!(r, Err(Error::NotStrictlyConvex(_))));
    }

    #[test]
    fn flat_cone_is_rejected() {
        let r = Cone::from_rays(&[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(r, Err(Error::NotFullDimensional));
        assert!(matches!(
            Cone::from_rays(&[vec![1, 0], vec![0, 0]]),
            Err(Error::ZeroVector(_))
        ));
    }

    #[test]
    fn interior_ray_is_discarded() {
        let c = Cone::from_rays(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(c.rays(), &[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(c.xi(), &[1, 1, 1]);
    }

    #[test]
    fn containment() {
        let c = Cone::from_rays(&[vec![1, 0], vec![1, 2]]).unwrap();
        assert!(c.contains_lattice(&[1, 1]));
        assert!(c.contains_lattice(&[0, 0]));
        assert!(!c.contains_lattice(&[0, 1]));
        assert!(c.contains(&Point::new(vec![ratio(1, 2), rat(1)])));
        assert!(Cone::on_ray(&Point::from_ints(&[3, 6]), &[1, 2]));
        assert!(!Cone::on_ray(&Point::from_ints(&[-1, -2]), &[1, 2]));
        assert!(Cone::on_ray(&Point::from_ints(&[0, 0]), &[1, 2]));
    }
}
