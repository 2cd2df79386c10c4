//! Incremental double description for polyhedral cones `{y : A y >= 0}`.
//!
//! Rays are kept as primitive integer vectors, so every step is exact and
//! intermediate entries stay as small as the geometry allows. Adjacency of
//! rays is decided combinatorially from their zero sets.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{dot, make_primitive};

/// Minimal generating system of a cone: `cone(rays) + span(lineality)`.
#[derive(Debug, Clone)]
pub(crate) struct ConeGenerators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn with_capacity(bits: usize) -> Self {
        ZeroSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_superset(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: ZeroSet,
}

/// `a * x - b * y`, made primitive.
fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = x.iter().zip(y).map(|(xi, yi)| a * xi - b * yi).collect();
    make_primitive(&mut v);
    v
}

/// Computes a minimal generating system of `{y in Q^dim : <row, y> >= 0 for all rows}`.
pub(crate) fn cone_generators(dim: usize, rows: &[Vec<BigInt>]) -> ConeGenerators {
    let m = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (i, a) in rows.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            // The new constraint cuts the lineality space: pivot on `l`.
            let mut l = lineality.swap_remove(pos);
            let mut al = dot(a, &l);
            if al.is_negative() {
                for x in l.iter_mut() {
                    *x = -&*x;
                }
                al = -al;
            }
            for other in lineality.iter_mut() {
                let ao = dot(a, other);
                if !ao.is_zero() {
                    *other = combine(&al, other, &ao, &l);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&al, &r.v, &ar, &l);
                }
                r.zeros.insert(i);
            }
            let mut zeros = ZeroSet::with_capacity(m);
            for j in 0..i {
                zeros.insert(j);
            }
            rays.push(Ray { v: l, zeros });
            continue;
        }

        let effective_dim = dim - lineality.len();
        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();

        let mut created = Vec::new();
        for &p in &positive {
            for &q in &negative {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.count() + 2 < effective_dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(t, ray)| {
                    t == p || t == q || !ray.zeros.is_superset(&common)
                });
                if !adjacent {
                    continue;
                }
                // values[p] > 0 > values[q]: a positive combination vanishing on row i.
                let v = combine(&values[p], &rays[q].v, &values[q], &rays[p].v);
                let mut zeros = common;
                zeros.insert(i);
                created.push(Ray { v, zeros });
            }
        }

        let mut next = Vec::with_capacity(rays.len() + created.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    ConeGenerators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn sorted(mut v: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
        v.sort();
        v
    }

    #[test]
    fn quadrant_is_its_own_dual() {
        let g = cone_generators(2, &ints(&[&[1, 0], &[0, 1]]));
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), ints(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn halfplane_keeps_a_line() {
        let g = cone_generators(2, &ints(&[&[1, 1]]));
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays.len(), 1);
    }

    #[test]
    fn redundant_constraints_do_not_add_rays() {
        // x >= 0, y >= 0, x + y >= 0, x + 2y >= 0
        let g = cone_generators(2, &ints(&[&[1, 1], &[1, 0], &[1, 2], &[0, 1]]));
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), ints(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn square_pyramid_cone() {
        // Cone over a square: four facets, four rays.
        let rows = ints(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]);
        let g = cone_generators(3, &rows);
        assert!(g.lineality.is_empty());
        assert_eq!(
            sorted(g.rays),
            ints(&[&[-1, -1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, 1]])
        );
    }

    #[test]
    fn pointed_only_at_zero() {
        let g = cone_generators(2, &ints(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        assert!(g.rays.is_empty());
        assert!(g.lineality.is_empty());
    }
}
