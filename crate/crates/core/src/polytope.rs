//! Halfspaces, bounded polytopes, representation conversion and exact volume.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dd::cone_generators;
use crate::error::{Error, Result};
use crate::linalg::{affine_rank, determinant, factorial, make_primitive, rank, Point, Rational};

/// The closed halfspace `{x : <normal, x> >= offset}`.
///
/// Normals are primitive integer vectors, so two descriptions of the same
/// halfspace compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    normal: Vec<BigInt>,
    offset: Rational,
}

impl Halfspace {
    /// Builds a halfspace, rescaling `normal` to be primitive.
    pub fn new(normal: Vec<BigInt>, offset: Rational) -> Result<Self> {
        let g = normal.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return Err(Error::ZeroVector("halfspace normal"));
        }
        let normal = normal.into_iter().map(|x| x / &g).collect();
        Ok(Halfspace {
            normal,
            offset: offset / Rational::from_integer(g),
        })
    }

    pub fn from_i64(normal: &[i64], offset: Rational) -> Result<Self> {
        Self::new(normal.iter().map(|&x| BigInt::from(x)).collect(), offset)
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `<normal, x> - offset`; nonnegative exactly on the halfspace.
    pub fn slack(&self, x: &Point) -> Rational {
        x.dot_int(&self.normal) - &self.offset
    }

    pub fn contains(&self, x: &Point) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &Point) -> bool {
        self.slack(x).is_zero()
    }

    /// Integer row `(a * d, -b * d)` of the homogenized inequality `<a, x> - b t >= 0`.
    fn homogenized_row(&self) -> Vec<BigInt> {
        let d = self.offset.denom().clone();
        let mut row: Vec<BigInt> = self.normal.iter().map(|a| a * &d).collect();
        row.push(-self.offset.numer().clone());
        row
    }
}

impl fmt::Debug for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<(")?;
        for (i, a) in self.normal.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "), x> >= {}", self.offset)
    }
}

/// True iff `x` satisfies every inequality.
pub fn contains(halfspaces: &[Halfspace], x: &Point) -> bool {
    halfspaces.iter().all(|h| h.contains(x))
}

fn check_dims<'a>(dim: usize, points: impl IntoIterator<Item = &'a Point>) -> Result<()> {
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
    }
    Ok(())
}

/// Vertices of the bounded polyhedron `{x : <a_i, x> >= b_i}`, each exactly once, sorted.
pub fn hrep_to_vrep(halfspaces: &[Halfspace], dim: usize) -> Result<Vec<Point>> {
    for h in halfspaces {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            });
        }
    }
    let mut rows: Vec<Vec<BigInt>> = halfspaces.iter().map(Halfspace::homogenized_row).collect();
    let mut t_row = vec![BigInt::zero(); dim + 1];
    t_row[dim] = BigInt::one();
    rows.push(t_row);
    rows.sort();
    rows.dedup();

    let gens = cone_generators(dim + 1, &rows);
    let mut vertices = Vec::new();
    let mut recession = !gens.lineality.is_empty();
    for r in &gens.rays {
        let t = &r[dim];
        if t.is_positive() {
            let t = Rational::from_integer(t.clone());
            vertices.push(Point::new(
                r[..dim]
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()) / &t)
                    .collect(),
            ));
        } else {
            recession = true;
        }
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    if recession {
        return Err(Error::Unbounded);
    }
    vertices.sort();
    Ok(vertices)
}

/// Minimal halfspace description of `conv(points) + cone(rays)`, sorted.
///
/// Fails with [`Error::DegenerateHull`] if the set is not full-dimensional.
pub fn hull_halfspaces(points: &[Point], rays: &[Vec<BigInt>], dim: usize) -> Result<Vec<Halfspace>> {
    check_dims(dim, points)?;
    if points.is_empty() {
        return Err(Error::DegenerateHull);
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(points.len() + rays.len());
    for p in points {
        let (mut v, d) = p.to_homogeneous();
        v.push(d);
        make_primitive(&mut v);
        rows.push(v);
    }
    for r in rays {
        if r.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.len(),
            });
        }
        let mut v = r.clone();
        v.push(BigInt::zero());
        make_primitive(&mut v);
        rows.push(v);
    }
    rows.sort();
    rows.dedup();

    let gens = cone_generators(dim + 1, &rows);
    if !gens.lineality.is_empty() {
        return Err(Error::DegenerateHull);
    }
    let mut out = Vec::new();
    for y in gens.rays {
        let (normal, c) = y.split_at(dim);
        if normal.iter().all(Zero::is_zero) {
            // The face at infinity `t >= 0`.
            continue;
        }
        out.push(Halfspace::new(
            normal.to_vec(),
            Rational::from_integer(-c[0].clone()),
        )?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Minimal halfspace description of the convex hull of `points`.
pub fn vrep_to_hrep(points: &[Point]) -> Result<Vec<Halfspace>> {
    let dim = points.first().ok_or(Error::DegenerateHull)?.dim();
    hull_halfspaces(points, &[], dim)
}

/// Points of `points` at which the tight normals of `halfspaces` have full rank.
pub(crate) fn extreme_points(points: &[Point], halfspaces: &[Halfspace], dim: usize) -> Vec<Point> {
    let set: BTreeSet<&Point> = points.iter().collect();
    set.into_iter()
        .filter(|p| {
            let tight: Vec<Vec<Rational>> = halfspaces
                .iter()
                .filter(|h| h.is_tight(p))
                .map(|h| {
                    h.normal()
                        .iter()
                        .cloned()
                        .map(Rational::from_integer)
                        .collect()
                })
                .collect();
            tight.len() >= dim && rank(&tight) == dim
        })
        .cloned()
        .collect()
}

/// All pairwise sums `p + q`, deduplicated and sorted.
pub fn minkowski_sum_points(p: &[Point], q: &[Point]) -> Result<Vec<Point>> {
    if let Some(a) = p.first().or(q.first()) {
        check_dims(a.dim(), p.iter().chain(q))?;
    }
    let sums: BTreeSet<Point> = p
        .iter()
        .flat_map(|a| q.iter().map(move |b| a + b))
        .collect();
    Ok(sums.into_iter().collect())
}

/// A bounded convex polytope carried in both vertex and halfspace form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    halfspaces: Vec<Halfspace>,
}

impl Polytope {
    /// Convex hull of a full-dimensional point set.
    pub fn from_vertices(points: &[Point]) -> Result<Self> {
        let halfspaces = vrep_to_hrep(points)?;
        let dim = points[0].dim();
        let vertices = extreme_points(points, &halfspaces, dim);
        Ok(Polytope {
            dim,
            vertices,
            halfspaces,
        })
    }

    /// Intersection of halfspaces; may be lower-dimensional but must be bounded and nonempty.
    pub fn from_halfspaces(halfspaces: &[Halfspace], dim: usize) -> Result<Self> {
        let vertices = hrep_to_vrep(halfspaces, dim)?;
        let mut hs: Vec<Halfspace> = halfspaces.to_vec();
        hs.sort();
        hs.dedup();
        let mut poly = Polytope {
            dim,
            vertices,
            halfspaces: hs,
        };
        if poly.is_full_dimensional() {
            let facets: BTreeSet<usize> = poly.facet_indices().into_iter().collect();
            poly.halfspaces = poly
                .halfspaces
                .into_iter()
                .enumerate()
                .filter(|(i, _)| facets.contains(i))
                .map(|(_, h)| h)
                .collect();
        }
        debug_assert!(poly
            .vertices
            .iter()
            .all(|v| contains(&poly.halfspaces, v)));
        Ok(poly)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn is_full_dimensional(&self) -> bool {
        affine_rank(&self.vertices) == Some(self.dim)
    }

    fn tight_set(&self, h: &Halfspace) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| h.is_tight(&self.vertices[i]))
            .collect()
    }

    /// Indices of the halfspaces that define facets: those whose tight vertex sets are
    /// maximal, one per distinct set.
    fn facet_indices(&self) -> Vec<usize> {
        let sets: Vec<Vec<usize>> = self.halfspaces.iter().map(|h| self.tight_set(h)).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (i, s) in sets.iter().enumerate() {
            if s.len() < self.dim || s.len() == self.vertices.len() {
                continue;
            }
            let dominated = sets
                .iter()
                .any(|t| t.len() > s.len() && t.len() < self.vertices.len() && is_subset(s, t));
            if !dominated && seen.insert(s.clone()) {
                out.push(i);
            }
        }
        out
    }

    /// Vertex index sets of the facets.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facet_indices()
            .into_iter()
            .map(|i| self.tight_set(&self.halfspaces[i]))
            .collect()
    }

    /// Pulling triangulation: each face is coned from its first vertex in `order`
    /// over the faces of its facets not containing that vertex.
    pub fn triangulate_with_order(&self, order: &[usize]) -> Vec<Vec<usize>> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        let mut rank_of = vec![0; self.vertices.len()];
        for (r, &v) in order.iter().enumerate() {
            rank_of[v] = r;
        }
        let facets = self.facets();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut out = Vec::new();
        pull(&all, self.dim, &facets, &rank_of, &mut Vec::new(), &mut out);
        out
    }

    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        let order: Vec<usize> = (0..self.vertices.len()).collect();
        self.triangulate_with_order(&order)
    }

    /// Exact volume; zero for lower-dimensional polytopes.
    pub fn volume(&self) -> Rational {
        let order: Vec<usize> = (0..self.vertices.len()).collect();
        self.volume_with_order(&order)
    }

    pub fn volume_with_order(&self, order: &[usize]) -> Rational {
        self.triangulate_with_order(order)
            .iter()
            .map(|s| {
                let pts: Vec<&Point> = s.iter().map(|&i| &self.vertices[i]).collect();
                simplex_volume(&pts)
            })
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn contains(&self, x: &Point) -> bool {
        contains(&self.halfspaces, x)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn pull(
    face: &[usize],
    dim: usize,
    facets: &[Vec<usize>],
    rank_of: &[usize],
    apexes: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if face.len() == dim + 1 {
        let mut s = apexes.clone();
        s.extend_from_slice(face);
        out.push(s);
        return;
    }
    let apex = *face.iter().min_by_key(|&&v| rank_of[v]).unwrap();

    // Facets of `face` are the maximal proper intersections with facets of the polytope.
    let mut subfaces: Vec<Vec<usize>> = facets
        .iter()
        .map(|f| face.iter().copied().filter(|v| f.binary_search(v).is_ok()).collect::<Vec<_>>())
        .filter(|s: &Vec<usize>| s.len() >= dim && s.len() < face.len())
        .collect();
    subfaces.sort();
    subfaces.dedup();
    let maximal: Vec<&Vec<usize>> = subfaces
        .iter()
        .filter(|s| {
            !subfaces
                .iter()
                .any(|t| t.len() > s.len() && is_subset(s, t))
        })
        .collect();

    apexes.push(apex);
    for sub in maximal {
        if sub.binary_search(&apex).is_ok() {
            continue;
        }
        pull(sub, dim - 1, facets, rank_of, apexes, out);
    }
    apexes.pop();
}

/// `|det(v1 - v0, ..., vn - v0)| / n!`.
pub fn simplex_volume(vertices: &[&Point]) -> Rational {
    let Some((v0, rest)) = vertices.split_first() else {
        return Rational::zero();
    };
    let n = v0.dim();
    if rest.len() != n {
        return Rational::zero();
    }
    let m: Vec<Vec<Rational>> = rest.iter().map(|v| (*v - *v0).0).collect();
    determinant(m).abs() / Rational::from_integer(factorial(n))
}
