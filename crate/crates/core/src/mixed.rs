//! Mixed covolume by polarization, polynomial fits of the covolume, and the
//! covolume Alexandrov–Fenchel check.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::PolynomialFit;
use crate::linalg::{factorial, Rational};
use crate::region::ConvexRegion;

/// Memoized covolumes of nonnegative integer combinations `Σ c_j Γ_j` of a fixed
/// family of regions, from which mixed covolumes are read off by polarization.
pub struct CovolumeTable {
    regions: Vec<ConvexRegion>,
    sums: HashMap<Vec<u32>, ConvexRegion>,
    covolumes: HashMap<Vec<u32>, Rational>,
}

impl CovolumeTable {
    pub fn new(regions: Vec<ConvexRegion>) -> Result<Self> {
        let first = regions.first().ok_or(Error::Arity {
            expected: 1,
            found: 0,
        })?;
        for r in &regions {
            if !first.same_cone(r) {
                return Err(Error::ConeMismatch);
            }
            r.cobounded_certificate()?;
        }
        Ok(CovolumeTable {
            regions,
            sums: HashMap::new(),
            covolumes: HashMap::new(),
        })
    }

    pub fn regions(&self) -> &[ConvexRegion] {
        &self.regions
    }

    fn dim(&self) -> usize {
        self.regions[0].dim()
    }

    /// `Σ counts[j] Γ_j`, built from the next smaller combination.
    pub fn combination(&mut self, counts: &[u32]) -> Result<ConvexRegion> {
        if let Some(r) = self.sums.get(counts) {
            return Ok(r.clone());
        }
        let region = match counts.iter().rposition(|&c| c > 0) {
            None => ConvexRegion::whole_cone(self.regions[0].cone()),
            Some(j) => {
                let mut smaller = counts.to_vec();
                smaller[j] -= 1;
                if smaller.iter().all(|&c| c == 0) {
                    self.regions[j].clone()
                } else {
                    self.combination(&smaller)?.sum(&self.regions[j])?
                }
            }
        };
        self.sums.insert(counts.to_vec(), region.clone());
        Ok(region)
    }

    pub fn covolume_of(&mut self, counts: &[u32]) -> Result<Rational> {
        if let Some(v) = self.covolumes.get(counts) {
            return Ok(v.clone());
        }
        let v = self.combination(counts)?.covolume()?;
        self.covolumes.insert(counts.to_vec(), v.clone());
        Ok(v)
    }

    /// `V(Γ_{args[0]}, ..., Γ_{args[n-1]})` for indices into the family (repeats allowed).
    pub fn mixed(&mut self, args: &[usize]) -> Result<Rational> {
        let n = self.dim();
        if args.len() != n {
            return Err(Error::Arity {
                expected: n,
                found: args.len(),
            });
        }
        let m = self.regions.len();
        let mut total = Rational::zero();
        for mask in 1u32..(1 << n) {
            let mut counts = vec![0u32; m];
            for (pos, &j) in args.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    counts[j] += 1;
                }
            }
            let v = self.covolume_of(&counts)?;
            if (n - mask.count_ones() as usize) % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        Ok(total / Rational::from_integer(factorial(n)))
    }
}

/// Mixed covolume `V(Γ_1, ..., Γ_n)`, normalized so that `V(Γ, ..., Γ) = covol(Γ)`.
pub fn mixed_covolume(regions: &[ConvexRegion]) -> Result<Rational> {
    let n = regions.first().map_or(0, ConvexRegion::dim);
    if regions.len() != n || n == 0 {
        return Err(Error::Arity {
            expected: n,
            found: regions.len(),
        });
    }
    let args: Vec<usize> = (0..n).collect();
    CovolumeTable::new(regions.to_vec())?.mixed(&args)
}

/// Fits `covol(λ_1 Γ_1 + ... + λ_m Γ_m)` by a homogeneous polynomial of degree `n`
/// on `λ ∈ {0..=grid_radius}^m`, verifying the held-out grid points.
pub fn covol_polynomial_fit(regions: &[ConvexRegion], grid_radius: u64) -> Result<PolynomialFit> {
    let mut table = CovolumeTable::new(regions.to_vec())?;
    let n = table.dim();
    PolynomialFit::fit(regions.len(), n, grid_radius, |lambda| {
        let counts: Vec<u32> = lambda.iter().map(|&x| x as u32).collect();
        table.covolume_of(&counts)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

impl InequalityReport {
    pub fn new(lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs >= rhs;
        InequalityReport { lhs, rhs, holds }
    }

    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Argument lists `(1,1,3..n)`, `(2,2,3..n)` and `(1,2,3..n)` (0-based).
pub(crate) fn af_argument_lists(n: usize) -> [Vec<usize>; 3] {
    let tail: Vec<usize> = (2..n).collect();
    let with = |a: usize, b: usize| {
        let mut v = vec![a, b];
        v.extend(&tail);
        v
    };
    [with(0, 0), with(1, 1), with(0, 1)]
}

/// `V(Γ1,Γ1,Γ3,…) V(Γ2,Γ2,Γ3,…) >= V(Γ1,Γ2,Γ3,…)^2`.
pub fn check_af_covolume(regions: &[ConvexRegion]) -> Result<InequalityReport> {
    let n = regions.first().map_or(0, ConvexRegion::dim);
    if regions.len() != n || n < 2 {
        return Err(Error::Arity {
            expected: n.max(2),
            found: regions.len(),
        });
    }
    let mut table = CovolumeTable::new(regions.to_vec())?;
    af_from_table(&mut table)
}

pub(crate) fn af_from_table(table: &mut CovolumeTable) -> Result<InequalityReport> {
    let [a, b, c] = af_argument_lists(table.dim());
    let lhs = table.mixed(&a)? * table.mixed(&b)?;
    let mixed = table.mixed(&c)?;
    Ok(InequalityReport::new(lhs, &mixed * &mixed))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cone::Cone;
    use crate::linalg::{rat, ratio, Point};

    fn region(c: &Arc<Cone>, pts: &[&[i64]]) -> ConvexRegion {
        ConvexRegion::from_generators(c, pts.iter().map(|p| Point::from_ints(p)).collect()).unwrap()
    }

    fn golden() -> (ConvexRegion, ConvexRegion) {
        let c = Arc::new(Cone::orthant(2));
        (region(&c, &[&[1, 0], &[0, 1]]), region(&c, &[&[2, 0], &[0, 1]]))
    }

    #[test]
    fn golden_mixed_covolume() {
        let (g1, g2) = golden();
        assert_eq!(mixed_covolume(&[g1.clone(), g2.clone()]).unwrap(), ratio(1, 2));
        assert_eq!(mixed_covolume(&[g2.clone(), g1.clone()]).unwrap(), ratio(1, 2));
        assert_eq!(mixed_covolume(&[g1.clone(), g1.clone()]).unwrap(), ratio(1, 2));
        assert_eq!(mixed_covolume(&[g2.clone(), g2]).unwrap(), rat(1));
        assert!(mixed_covolume(&[g1]).is_err());
    }

    #[test]
    fn golden_fit() {
        let (g1, g2) = golden();
        let fit = covol_polynomial_fit(&[g1.clone(), g2], 2).unwrap();
        assert_eq!(fit.coefficient(&[2, 0]), ratio(1, 2));
        assert_eq!(fit.coefficient(&[1, 1]), rat(1));
        assert_eq!(fit.coefficient(&[0, 2]), rat(1));
        let single = covol_polynomial_fit(&[g1], 3).unwrap();
        assert_eq!(single.coefficient(&[2]), ratio(1, 2));
        assert!(covol_polynomial_fit(&[golden().0], 1).is_err());
    }

    #[test]
    fn golden_af() {
        let (g1, g2) = golden();
        let r = check_af_covolume(&[g1.clone(), g2]).unwrap();
        assert_eq!(r.lhs, ratio(1, 2));
        assert_eq!(r.rhs, ratio(1, 4));
        assert!(r.holds);
        let eq = check_af_covolume(&[g1.clone(), g1]).unwrap();
        assert!(eq.holds && eq.is_equality());
    }

    #[test]
    fn mixed_covolume_in_three_dimensions_scales_linearly() {
        let c = Arc::new(Cone::orthant(3));
        let a = region(&c, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]);
        let b = region(&c, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 3], &[1, 1, 1]]);
        let d = region(&c, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let v = mixed_covolume(&[a.clone(), b.clone(), d.clone()]).unwrap();
        let a3 = a.scale(&ratio(3, 2)).unwrap();
        assert_eq!(mixed_covolume(&[a3, b.clone(), d.clone()]).unwrap(), &v * ratio(3, 2));
        assert_eq!(mixed_covolume(&[a.clone(), a.clone(), a.clone()]).unwrap(), a.covolume().unwrap());
        for perm in [[1, 0, 2], [2, 1, 0], [0, 2, 1]] {
            let regs = [a.clone(), b.clone(), d.clone()];
            let p: Vec<ConvexRegion> = perm.iter().map(|&i| regs[i].clone()).collect();
            assert_eq!(mixed_covolume(&p).unwrap(), v);
        }
    }
}
