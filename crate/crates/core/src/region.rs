//! `C`-convex regions `conv(P) + C`, coboundedness and covolume.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{Point, Rational};
use crate::polytope::{contains, extreme_points, hull_halfspaces, minkowski_sum_points, Halfspace, Polytope};

/// A polyhedral region `Γ = conv(generators) + C` inside the cone `C`.
///
/// Stored with its generators, its vertices and its minimal halfspace
/// description. When `C \ Γ` is bounded the region also carries a
/// truncation level `T` such that `C ∩ {xi >= T} ⊆ Γ`.
#[derive(Clone)]
pub struct ConvexRegion {
    cone: Arc<Cone>,
    generators: Vec<Point>,
    vertices: Vec<Point>,
    halfspaces: Vec<Halfspace>,
    certificate: std::result::Result<Rational, Vec<i64>>,
}

impl ConvexRegion {
    pub fn from_generators(cone: &Arc<Cone>, generators: Vec<Point>) -> Result<Self> {
        let dim = cone.dim();
        if generators.is_empty() {
            return Err(Error::Input("a region needs at least one generator".into()));
        }
        for p in &generators {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if !cone.contains(p) {
                return Err(Error::GeneratorOutsideCone(p.to_string()));
            }
        }
        let mut generators = generators;
        generators.sort();
        generators.dedup();

        let halfspaces = hull_halfspaces(&generators, &cone.rays_bigint(), dim)?;
        debug_assert!(halfspaces.iter().all(|h| cone
            .rays()
            .iter()
            .all(|r| !Point::from_ints(r).dot_int(h.normal()).is_negative())));
        let vertices = extreme_points(&generators, &halfspaces, dim);
        let certificate = certify(cone, &vertices, &halfspaces);

        Ok(ConvexRegion {
            cone: Arc::clone(cone),
            generators,
            vertices,
            halfspaces,
            certificate,
        })
    }

    /// The region `C` itself (generated by the apex).
    pub fn whole_cone(cone: &Arc<Cone>) -> Self {
        Self::from_generators(cone, vec![Point::origin(cone.dim())]).expect("apex generates C")
    }

    pub fn cone(&self) -> &Arc<Cone> {
        &self.cone
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Minimal halfspace description, sorted; equal regions have equal descriptions.
    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains(&self, x: &Point) -> bool {
        contains(&self.halfspaces, x)
    }

    /// `self ⊆ other`; both share the recession cone, so checking vertices suffices.
    pub fn is_subset_of(&self, other: &ConvexRegion) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    pub fn same_cone(&self, other: &ConvexRegion) -> bool {
        Arc::ptr_eq(&self.cone, &other.cone) || self.cone == other.cone
    }

    pub fn is_cobounded(&self) -> bool {
        self.certificate.is_ok()
    }

    /// The truncation level `T`: the largest, over extreme rays, of the smallest `xi`
    /// of a generator on that ray. `C \ Γ` lies in `{xi < T}`.
    pub fn cobounded_certificate(&self) -> Result<Rational> {
        self.certificate
            .clone()
            .map_err(|ray| Error::NotCobounded { ray })
    }

    /// Minkowski sum; its generators are the pairwise sums of vertices.
    pub fn sum(&self, other: &ConvexRegion) -> Result<ConvexRegion> {
        if !self.same_cone(other) {
            return Err(Error::ConeMismatch);
        }
        let gens = minkowski_sum_points(&self.vertices, &other.vertices)?;
        ConvexRegion::from_generators(&self.cone, gens)
    }

    /// `λ Γ` for `λ >= 0`; `0 · Γ` is `C`.
    pub fn scale(&self, lambda: &Rational) -> Result<ConvexRegion> {
        if lambda.is_negative() {
            return Err(Error::NegativeScale(lambda.to_string()));
        }
        if lambda.is_zero() {
            return Ok(ConvexRegion::whole_cone(&self.cone));
        }
        let gens = self.generators.iter().map(|p| p.scale(lambda)).collect();
        ConvexRegion::from_generators(&self.cone, gens)
    }

    /// Volume of `C \ Γ`.
    pub fn covolume(&self) -> Result<Rational> {
        let t = self.cobounded_certificate()?;
        self.covolume_truncated(&t)
    }

    /// `vol(C ∩ {xi <= t}) - vol(Γ ∩ {xi <= t})`; equals the covolume for every `t >= T`.
    pub fn covolume_truncated(&self, t: &Rational) -> Result<Rational> {
        let cert = self.cobounded_certificate()?;
        if t < &cert {
            return Err(Error::Input(format!(
                "truncation {t} is below the coboundedness certificate {cert}"
            )));
        }
        if t.is_zero() {
            return Ok(Rational::zero());
        }
        let dim = self.dim();
        let outer = self.cone.unit_section_volume() * pow(t, dim);
        let mut hs = self.halfspaces.clone();
        let neg_xi: Vec<i64> = self.cone.xi().iter().map(|x| -x).collect();
        hs.push(Halfspace::from_i64(&neg_xi, -t)?);
        let inner = Polytope::from_halfspaces(&hs, dim)?.volume();
        Ok(outer - inner)
    }
}

fn pow(x: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::from_integer(1.into()), |acc, _| acc * x)
}

fn certify(cone: &Cone, vertices: &[Point], halfspaces: &[Halfspace]) -> std::result::Result<Rational, Vec<i64>> {
    let mut t = Rational::zero();
    for r in cone.rays() {
        let level = vertices
            .iter()
            .filter(|p| Cone::on_ray(p, r))
            .map(|p| cone.xi_of(p))
            .min()
            .ok_or_else(|| r.clone())?;
        if level > t {
            t = level;
        }
    }
    // Re-verify directly: the section at level T must lie in the region.
    if !t.is_zero() {
        if let Some(v) = cone
            .section_vertices(&t)
            .into_iter()
            .find(|v| !contains(halfspaces, v))
        {
            return Err(v.to_lattice().unwrap_or_default());
        }
    }
    Ok(t)
}

impl PartialEq for ConvexRegion {
    fn eq(&self, other: &Self) -> bool {
        self.same_cone(other) && self.halfspaces == other.halfspaces
    }
}

impl fmt::Debug for ConvexRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvexRegion")
            .field("vertices", &self.vertices)
            .field("halfspaces", &self.halfspaces)
            .finish()
    }
}
