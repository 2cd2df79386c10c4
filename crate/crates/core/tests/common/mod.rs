//! Independent oracles: none of these call the geometry or staircase code under test.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn cross(o: &[Q; 2], a: &[Q; 2], b: &[Q; 2]) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Strict convex hull of planar points, counter-clockwise (monotone chain).
pub fn hull_2d(points: &[[Q; 2]]) -> Vec<[Q; 2]> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[Q; 2]> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<[Q; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn shoelace(poly: &[[Q; 2]]) -> Q {
    let n = poly.len();
    let mut s = Q::zero();
    for i in 0..n {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        s += &a[0] * &b[1] - &a[1] * &b[0];
    }
    s.abs() / q(2)
}

/// Covolume of `conv(P) + C` for the planar cone spanned by `r1`, `r2`: the triangle
/// `0, M r1, M r2` minus `conv(P, M r1, M r2)` for `M` large enough that `P` lies inside.
pub fn covolume_2d(r1: [i64; 2], r2: [i64; 2], pts: &[[Q; 2]]) -> Q {
    // Coordinates of p in the basis (r1, r2); the line through M r1, M r2 is a + b = M.
    let det = q(r1[0] * r2[1] - r1[1] * r2[0]);
    let mut m = q(1);
    for p in pts {
        let a = (&p[0] * q(r2[1]) - &p[1] * q(r2[0])) / &det;
        let b = (&p[1] * q(r1[0]) - &p[0] * q(r1[1])) / &det;
        let s = a + b + q(1);
        if s > m {
            m = s;
        }
    }
    let far1 = [&m * q(r1[0]), &m * q(r1[1])];
    let far2 = [&m * q(r2[0]), &m * q(r2[1])];
    let triangle = shoelace(&[[q(0), q(0)], far1.clone(), far2.clone()]);
    let mut all = pts.to_vec();
    all.push(far1);
    all.push(far2);
    triangle - shoelace(&hull_2d(&all))
}

/// Determinant by the Leibniz permutation expansion.
pub fn leibniz_det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Q::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<Q>], total: &mut Q) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = Q::one();
        for (i, &j) in perm.iter().enumerate() {
            term *= &m[i][j];
        }
        if inversions % 2 == 1 {
            term = -term;
        }
        *total += term;
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

pub fn factorial(n: usize) -> Q {
    Q::from_integer((1..=n as u64).map(BigInt::from).product())
}

/// Membership of a lattice point in the cone `{x : <a, x> >= 0 for a in facets}`.
pub fn in_cone(facets: &[Vec<i64>], x: &[i64]) -> bool {
    facets
        .iter()
        .all(|a| a.iter().zip(x).map(|(p, q)| p * q).sum::<i64>() >= 0)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All lattice points `x` of the cone with `<xi, x> <= bound` inside the box `[-radius, radius]^n`.
pub fn lattice_points(facets: &[Vec<i64>], xi: &[i64], bound: i64, radius: i64) -> Vec<Vec<i64>> {
    let n = xi.len();
    let mut out = Vec::new();
    let mut x = vec![-radius; n];
    loop {
        if in_cone(facets, &x) && dot(xi, &x) <= bound {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if x[i] < radius {
                x[i] += 1;
                break;
            }
            x[i] = -radius;
            i += 1;
        }
    }
}

/// `#{α ∈ S : α ∉ I}` by testing every lattice point with `xi < bound` against every generator.
pub fn brute_colength(facets: &[Vec<i64>], xi: &[i64], gens: &[Vec<i64>], bound: i64, radius: i64) -> u64 {
    lattice_points(facets, xi, bound - 1, radius)
        .into_iter()
        .filter(|a| {
            !gens.iter().any(|g| {
                let d: Vec<i64> = a.iter().zip(g).map(|(x, y)| x - y).collect();
                in_cone(facets, &d)
            })
        })
        .count() as u64
}

/// Irreducible elements of `C ∩ Z^n` with `xi <= bound`.
pub fn brute_hilbert_basis(facets: &[Vec<i64>], xi: &[i64], bound: i64, radius: i64) -> Vec<Vec<i64>> {
    let pts: Vec<Vec<i64>> = lattice_points(facets, xi, bound, radius)
        .into_iter()
        .filter(|x| x.iter().any(|&c| c != 0))
        .collect();
    let mut out: Vec<Vec<i64>> = pts
        .iter()
        .filter(|x| {
            !pts.iter().any(|y| {
                y != *x && {
                    let d: Vec<i64> = x.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
                    d.iter().any(|&c| c != 0) && in_cone(facets, &d)
                }
            })
        })
        .cloned()
        .collect();
    out.sort();
    out
}

/// Box radius containing every lattice point of the cone with `xi <= bound`.
/// A point `x = Σ λ_i r_i` of a simplicial piece has `|x_j| <= Σ λ_i |r_ij|`, and
/// `xi(r_i) >= 1`, so `radius = bound * max |r_ij|` suffices.
pub fn box_radius(rays: &[Vec<i64>], bound: i64) -> i64 {
    let m = rays.iter().flatten().map(|x| x.abs()).max().unwrap_or(1);
    bound.max(0) * m
}

/// Brute membership of `x` in the ideal generated by `gens`.
pub fn in_ideal(facets: &[Vec<i64>], gens: &[Vec<i64>], x: &[i64]) -> bool {
    gens.iter().any(|g| {
        let d: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
        in_cone(facets, &d)
    })
}

/// A `xi`-level above every point of `S` outside the ideal.
/// With `k_i r_i ∈ I` for each extreme ray, a point `Σ λ_i r_i` of a simplicial
/// piece with some `λ_i >= k_i` is in `I`, so `xi < Σ k_i xi(r_i)` off the ideal.
pub fn staircase_bound(facets: &[Vec<i64>], xi: &[i64], rays: &[Vec<i64>], gens: &[Vec<i64>]) -> Option<i64> {
    let mut total = 0;
    for r in rays {
        let k = (1..=256).find(|&k| {
            let x: Vec<i64> = r.iter().map(|c| k * c).collect();
            in_ideal(facets, gens, &x)
        })?;
        total += k * dot(xi, r);
    }
    Some(total)
}
