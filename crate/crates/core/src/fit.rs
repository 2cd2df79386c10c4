//! Exact interpolation of homogeneous polynomials on nonnegative integer grids.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rank, rat, solve, Rational};

/// A homogeneous polynomial of degree `degree` in `variables` unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialFit {
    variables: usize,
    degree: usize,
    coefficients: BTreeMap<Vec<u32>, Rational>,
}

/// All exponent vectors of length `m` summing to `d`, in lexicographic order.
pub fn homogeneous_monomials(m: usize, d: usize) -> Vec<Vec<u32>> {
    fn go(m: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == m {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            go(m, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        go(m, d as u32, &mut Vec::new(), &mut out);
    }
    out
}

fn grid(m: usize, radius: u64) -> Vec<Vec<u64>> {
    let mut pts: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..m {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..=radius).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts.sort_by_key(|p| (p.iter().sum::<u64>(), p.clone()));
    pts
}

fn monomial_value(exps: &[u32], at: &[Rational]) -> Rational {
    exps.iter().zip(at).fold(rat(1), |acc, (&e, x)| {
        (0..e).fold(acc, |a, _| a * x)
    })
}

impl PolynomialFit {
    /// Interpolates `sample` on `{0..=grid_radius}^variables`: solves for the coefficients on a
    /// unisolvent subset of grid points, then checks every remaining (held-out) point exactly.
    pub fn fit<F>(variables: usize, degree: usize, grid_radius: u64, mut sample: F) -> Result<Self>
    where
        F: FnMut(&[u64]) -> Result<Rational>,
    {
        if grid_radius < degree as u64 {
            return Err(Error::GridTooSmall {
                radius: grid_radius,
                needed: degree as u64,
            });
        }
        let monomials = homogeneous_monomials(variables, degree);
        let points = grid(variables, grid_radius);
        let row_of = |p: &[u64]| -> Vec<Rational> {
            let at: Vec<Rational> = p.iter().map(|&x| rat(x as i64)).collect();
            monomials.iter().map(|e| monomial_value(e, &at)).collect()
        };

        let mut chosen: Vec<Vec<Rational>> = Vec::new();
        let mut chosen_points = Vec::new();
        for p in &points {
            if chosen.len() == monomials.len() {
                break;
            }
            let row = row_of(p);
            chosen.push(row);
            if rank(&chosen) < chosen.len() {
                chosen.pop();
            } else {
                chosen_points.push(p.clone());
            }
        }
        if chosen.len() < monomials.len() {
            return Err(Error::GridTooSmall {
                radius: grid_radius,
                needed: degree as u64,
            });
        }

        let values: Vec<Rational> = chosen_points
            .iter()
            .map(|p| sample(p))
            .collect::<Result<_>>()?;
        let coeffs = solve(&chosen, &values).expect("chosen rows are independent");
        let fit = PolynomialFit {
            variables,
            degree,
            coefficients: monomials.into_iter().zip(coeffs).collect(),
        };

        for p in points.iter().filter(|p| !chosen_points.contains(p)) {
            let s = sample(p)?;
            let at: Vec<Rational> = p.iter().map(|&x| rat(x as i64)).collect();
            let f = fit.evaluate(&at);
            if s != f {
                return Err(Error::FitMismatch {
                    at: p.clone(),
                    sample: s.to_string(),
                    fit: f.to_string(),
                });
            }
        }
        Ok(fit)
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.coefficients
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.coefficients.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn evaluate(&self, at: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .fold(Rational::zero(), |acc, (e, c)| acc + c * monomial_value(e, at))
    }
}
