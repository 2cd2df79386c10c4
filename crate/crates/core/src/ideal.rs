//! Monomial ideals of the semigroup ring, represented by exponent vectors.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{rat, Point};
use crate::region::ConvexRegion;
use crate::semigroup::{floor, LatticePoint, ToricSemigroup};

/// A monomial ideal `I ⊆ k[S]`, stored by a minimal set of exponent vectors.
#[derive(Clone)]
pub struct MonomialIdeal {
    semigroup: Arc<ToricSemigroup>,
    generators: Vec<LatticePoint>,
    newton: ConvexRegion,
}

fn sub(a: &[i64], b: &[i64]) -> LatticePoint {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> LatticePoint {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl MonomialIdeal {
    pub fn new(semigroup: &Arc<ToricSemigroup>, generators: Vec<LatticePoint>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        let dim = semigroup.dim();
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            if !semigroup.contains(g) {
                return Err(Error::AlphaOutsideSemigroup(g.clone()));
            }
        }
        let generators = minimalize(semigroup, generators);
        let points = generators.iter().map(|g| Point::from_ints(g)).collect();
        let newton = ConvexRegion::from_generators(semigroup.cone(), points)?;
        Ok(MonomialIdeal {
            semigroup: Arc::clone(semigroup),
            generators,
            newton,
        })
    }

    /// The whole ring, generated by `x^0`.
    pub fn unit(semigroup: &Arc<ToricSemigroup>) -> Self {
        Self::new(semigroup, vec![vec![0; semigroup.dim()]]).expect("apex lies in S")
    }

    /// The maximal ideal, generated by the Hilbert basis.
    pub fn maximal(semigroup: &Arc<ToricSemigroup>) -> Self {
        Self::new(semigroup, semigroup.hilbert_basis().to_vec()).expect("basis lies in S")
    }

    pub fn semigroup(&self) -> &Arc<ToricSemigroup> {
        &self.semigroup
    }

    pub fn dim(&self) -> usize {
        self.semigroup.dim()
    }

    /// Minimal generators, sorted by `xi` and then lexicographically.
    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    /// The Newton region `conv(generators) + C`.
    pub fn newton(&self) -> &ConvexRegion {
        &self.newton
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].iter().all(|&x| x == 0)
    }

    pub fn is_m_primary(&self) -> bool {
        self.newton.is_cobounded()
    }

    /// `Ok(())` when the ideal is m-primary, otherwise `NotMPrimary` with an escaping ray.
    pub fn require_m_primary(&self) -> Result<()> {
        self.newton
            .cobounded_certificate()
            .map(|_| ())
            .map_err(|e| match e {
                Error::NotCobounded { ray } => Error::NotMPrimary { ray },
                other => other,
            })
    }

    /// Whether `x^alpha ∈ I`.
    pub fn contains(&self, alpha: &[i64]) -> Result<bool> {
        if !self.semigroup.contains(alpha) {
            return Err(Error::AlphaOutsideSemigroup(alpha.to_vec()));
        }
        Ok(self.contains_unchecked(alpha))
    }

    pub(crate) fn contains_unchecked(&self, alpha: &[i64]) -> bool {
        let cone = self.semigroup.cone();
        self.generators
            .iter()
            .any(|g| cone.contains_lattice(&sub(alpha, g)))
    }

    pub fn same_semigroup(&self, other: &MonomialIdeal) -> bool {
        Arc::ptr_eq(&self.semigroup, &other.semigroup) || self.semigroup == other.semigroup
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if !self.same_semigroup(other) {
            return Err(Error::SemigroupMismatch);
        }
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(add(a, b));
            }
        }
        MonomialIdeal::new(&self.semigroup, gens)
    }

    /// `I^k`; `I^0` is the unit ideal.
    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(&self.semigroup);
        for _ in 0..k {
            acc = acc.product(self).expect("same semigroup");
        }
        acc
    }

    /// The ideal of all monomials whose exponents lie in the Newton region.
    ///
    /// A minimal lattice point `x` of `Γ_I` has `xi(x) < T + max xi(h)` over the Hilbert
    /// basis: otherwise `x - h` lies in `Γ_I` for any basis element `h` below `x`.
    pub fn integral_closure(&self) -> Result<MonomialIdeal> {
        self.require_m_primary()?;
        let t = self.newton.cobounded_certificate()?;
        let step = self
            .semigroup
            .hilbert_basis()
            .iter()
            .map(|h| self.semigroup.xi(h))
            .max()
            .unwrap_or(0);
        let bound = floor(&(t + rat(step)));
        let gens: Vec<LatticePoint> = self
            .semigroup
            .lattice_points_up_to(bound)
            .into_iter()
            .filter(|x| self.newton.contains(&Point::from_ints(x)))
            .collect();
        MonomialIdeal::new(&self.semigroup, gens)
    }

    /// `I ~ J`, decided by equality of Newton regions.
    pub fn equivalent(&self, other: &MonomialIdeal) -> Result<bool> {
        if !self.same_semigroup(other) {
            return Err(Error::SemigroupMismatch);
        }
        Ok(self.newton.halfspaces() == other.newton.halfspaces())
    }
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.same_semigroup(other) && self.generators == other.generators
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonomialIdeal")
            .field("generators", &self.generators)
            .finish()
    }
}

/// Drops every generator divisible by another one.
fn minimalize(semigroup: &ToricSemigroup, mut gens: Vec<LatticePoint>) -> Vec<LatticePoint> {
    gens.sort_by_cached_key(|g| (semigroup.xi(g), g.clone()));
    gens.dedup();
    let cone = semigroup.cone();
    let mut kept: Vec<LatticePoint> = Vec::new();
    for g in gens {
        if !kept.iter().any(|h| cone.contains_lattice(&sub(&g, h))) {
            kept.push(g);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Cone;

    fn quadrant() -> Arc<ToricSemigroup> {
        Arc::new(ToricSemigroup::new(Arc::new(Cone::orthant(2))).unwrap())
    }

    fn ideal(s: &Arc<ToricSemigroup>, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(s, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn membership() {
        let s = quadrant();
        let m = ideal(&s, &[&[1, 0], &[0, 1]]);
        let i2 = ideal(&s, &[&[2, 0], &[0, 1]]);
        assert!(m.contains(&[3, 0]).unwrap());
        assert!(!i2.contains(&[1, 0]).unwrap());
        assert!(i2.contains(&[2, 0]).unwrap());
        assert!(!m.contains(&[0, 0]).unwrap());
        assert_eq!(m.contains(&[-1, 0]), Err(Error::AlphaOutsideSemigroup(vec![-1, 0])));
    }

    #[test]
    fn minimal_generators() {
        let s = quadrant();
        let i = ideal(&s, &[&[3, 1], &[2, 0], &[0, 1], &[2, 0], &[5, 5]]);
        assert_eq!(i.generators(), &[vec![0, 1], vec![2, 0]]);
        assert!(MonomialIdeal::new(&s, vec![]).is_err());
        assert!(MonomialIdeal::new(&s, vec![vec![1]]).is_err());
    }

    #[test]
    fn products_and_powers() {
        let s = quadrant();
        let m = MonomialIdeal::maximal(&s);
        assert_eq!(m.generators(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.power(2).generators(), &[vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(m.power(0), MonomialIdeal::unit(&s));
        assert_eq!(m.product(&MonomialIdeal::unit(&s)).unwrap(), m);
        let i2 = ideal(&s, &[&[2, 0], &[0, 1]]);
        let p = m.product(&i2).unwrap();
        let sum = m.newton().sum(i2.newton()).unwrap();
        assert_eq!(p.newton().halfspaces(), sum.halfspaces());

        let other = Arc::new(ToricSemigroup::new(Arc::new(Cone::from_rays(&[vec![1, 0], vec![1, 2]]).unwrap())).unwrap());
        let foreign = MonomialIdeal::maximal(&other);
        assert_eq!(m.product(&foreign), Err(Error::SemigroupMismatch));
    }

    #[test]
    fn m_primary_detection() {
        let s = quadrant();
        assert!(ideal(&s, &[&[2, 0], &[0, 1]]).is_m_primary());
        let x = ideal(&s, &[&[1, 0]]);
        assert!(!x.is_m_primary());
        assert_eq!(x.require_m_primary(), Err(Error::NotMPrimary { ray: vec![0, 1] }));
        assert!(MonomialIdeal::unit(&s).is_m_primary());
    }

    #[test]
    fn closure_and_equivalence() {
        let s = quadrant();
        let m = ideal(&s, &[&[1, 0], &[0, 1]]);
        assert_eq!(m.integral_closure().unwrap(), m);
        let sq = ideal(&s, &[&[2, 0], &[0, 2]]);
        let closed = sq.integral_closure().unwrap();
        assert_eq!(closed.generators(), &[vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert!(sq.equivalent(&closed).unwrap());
        assert!(!m.equivalent(&ideal(&s, &[&[2, 0], &[0, 1]])).unwrap());
        assert!(ideal(&s, &[&[1, 0]]).integral_closure().is_err());
    }

    #[test]
    fn closure_in_a_singular_cone() {
        // In the A1 cone (x^2, y^2) with x = (1,0), y = (1,2) gains (2,2) = x + y.
        let s = Arc::new(ToricSemigroup::new(Arc::new(Cone::from_rays(&[vec![1, 0], vec![1, 2]]).unwrap())).unwrap());
        let i = ideal(&s, &[&[2, 0], &[2, 4]]);
        let c = i.integral_closure().unwrap();
        assert!(c.contains(&[2, 2]).unwrap());
        assert!(!i.contains(&[2, 2]).unwrap());
        assert_eq!(c.integral_closure().unwrap(), c);
    }
}
