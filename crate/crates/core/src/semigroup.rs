//! The toric semigroup `S = C ∩ Z^n` and its Hilbert basis.

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::cone::Cone;
use crate::error::Result;
use crate::linalg::{determinant, rat, Point, Rational};
use crate::polytope::Polytope;

/// An exponent vector.
pub type LatticePoint = Vec<i64>;

/// `S = C ∩ Z^n` together with its Hilbert basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricSemigroup {
    cone: Arc<Cone>,
    hilbert_basis: Vec<LatticePoint>,
}

impl ToricSemigroup {
    pub fn new(cone: Arc<Cone>) -> Result<Self> {
        let hilbert_basis = hilbert_basis(&cone)?;
        Ok(ToricSemigroup {
            cone,
            hilbert_basis,
        })
    }

    pub fn cone(&self) -> &Arc<Cone> {
        &self.cone
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    /// The irreducible elements of `S`, sorted.
    pub fn hilbert_basis(&self) -> &[LatticePoint] {
        &self.hilbert_basis
    }

    pub fn contains(&self, alpha: &[i64]) -> bool {
        alpha.len() == self.dim() && self.cone.contains_lattice(alpha)
    }

    pub fn xi(&self, alpha: &[i64]) -> i64 {
        self.cone.xi_of_lattice(alpha)
    }

    /// Every lattice point of `C ∩ {xi <= bound}`, by scanning its bounding box.
    pub fn lattice_points_up_to(&self, bound: i64) -> Vec<LatticePoint> {
        if bound < 0 {
            return Vec::new();
        }
        let dim = self.dim();
        let corners = self.cone.section_vertices(&rat(bound));
        let mut lo = vec![0i64; dim];
        let mut hi = vec![0i64; dim];
        for v in &corners {
            for i in 0..dim {
                lo[i] = lo[i].min(floor(&v[i]));
                hi[i] = hi[i].max(ceil(&v[i]));
            }
        }
        let mut out = Vec::new();
        let mut x = lo.clone();
        loop {
            if self.cone.contains_lattice(&x) && self.xi(&x) <= bound {
                out.push(x.clone());
            }
            let mut i = 0;
            loop {
                if i == dim {
                    return out;
                }
                if x[i] < hi[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = lo[i];
                i += 1;
            }
        }
    }

    /// Whether `alpha` is a nonnegative integer combination of the Hilbert basis.
    pub fn decomposes(&self, alpha: &[i64]) -> bool {
        let mut memo = FxHashMap::default();
        self.decomposes_memo(alpha, &mut memo)
    }

    fn decomposes_memo(&self, alpha: &[i64], memo: &mut FxHashMap<LatticePoint, bool>) -> bool {
        if alpha.iter().all(|&x| x == 0) {
            return true;
        }
        if let Some(&b) = memo.get(alpha) {
            return b;
        }
        let mut ok = false;
        for h in &self.hilbert_basis {
            let rest: LatticePoint = alpha.iter().zip(h).map(|(a, b)| a - b).collect();
            if self.cone.contains_lattice(&rest) && self.decomposes_memo(&rest, memo) {
                ok = true;
                break;
            }
        }
        memo.insert(alpha.to_vec(), ok);
        ok
    }
}

pub(crate) fn floor(q: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    q.floor().to_integer().to_i64().expect("coordinate fits in i64")
}

pub(crate) fn ceil(q: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    q.ceil().to_integer().to_i64().expect("coordinate fits in i64")
}

/// Hilbert basis of `C ∩ Z^n`.
///
/// The cone is split into simplicial cones by a pulling triangulation of
/// `conv(0, rays)` from the apex; every irreducible element is an extreme ray
/// or a lattice point of the half-open fundamental parallelepiped of one of
/// those simplicial cones. Candidates are then reduced to the irreducible ones.
pub fn hilbert_basis(cone: &Cone) -> Result<Vec<LatticePoint>> {
    let dim = cone.dim();
    let mut pts = vec![Point::origin(dim)];
    pts.extend(cone.rays().iter().map(|r| Point::from_ints(r)));
    let hull = Polytope::from_vertices(&pts)?;
    let origin = hull
        .vertices()
        .iter()
        .position(Point::is_origin)
        .expect("apex is a vertex");
    let mut order = vec![origin];
    order.extend((0..hull.vertices().len()).filter(|&i| i != origin));

    let mut candidates: FxHashSet<LatticePoint> = cone.rays().iter().cloned().collect();
    for simplex in hull.triangulate_with_order(&order) {
        let rays: Vec<LatticePoint> = simplex
            .iter()
            .filter(|&&i| i != origin)
            .map(|&i| hull.vertices()[i].to_lattice().expect("rays are integral"))
            .collect();
        candidates.extend(parallelepiped_points(&rays));
    }
    candidates.retain(|x| x.iter().any(|&c| c != 0));

    let cands: Vec<&LatticePoint> = candidates.iter().collect();
    let mut basis: Vec<LatticePoint> = cands
        .iter()
        .filter(|x| {
            !cands.iter().any(|y| {
                y != *x && {
                    let d: LatticePoint = x.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
                    cone.contains_lattice(&d)
                }
            })
        })
        .map(|x| (*x).clone())
        .collect();
    basis.sort();
    Ok(basis)
}

/// Lattice points `Σ λ_i r_i` with every `λ_i ∈ [0, 1)`.
fn parallelepiped_points(rays: &[LatticePoint]) -> Vec<LatticePoint> {
    let dim = rays.len();
    // Columns are the rays: x = R λ, so λ = adj(R) x / det(R).
    let m: Vec<Vec<Rational>> = (0..dim)
        .map(|i| rays.iter().map(|r| rat(r[i])).collect())
        .collect();
    let det = determinant(m.clone());
    let inverse = invert(&m);
    let adj: Vec<Vec<i128>> = inverse
        .iter()
        .map(|row| {
            row.iter()
                .map(|q| {
                    let v = q * &det;
                    debug_assert!(v.is_integer());
                    i128::try_from(v.to_integer()).expect("adjugate entry fits in i128")
                })
                .collect()
        })
        .collect();
    let det = i128::try_from(det.to_integer()).expect("determinant fits in i128");
    let (sign, abs_det) = if det < 0 { (-1, -det) } else { (1, det) };

    let mut lo = vec![0i64; dim];
    let mut hi = vec![0i64; dim];
    for r in rays {
        for i in 0..dim {
            if r[i] < 0 {
                lo[i] += r[i];
            } else {
                hi[i] += r[i];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        let inside = adj.iter().all(|row| {
            let v: i128 = row.iter().zip(&x).map(|(a, &b)| a * b as i128).sum::<i128>() * sign;
            (0..abs_det).contains(&v)
        });
        if inside {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == dim {
                return out;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![rat(0); n];
        e[j] = rat(1);
        cols.push(crate::linalg::solve(m, &e).expect("simplicial cone has independent rays"));
    }
    (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
}
