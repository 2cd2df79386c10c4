//! Seeded random instances and exact checks of the local Bernstein–Kushnirenko
//! theorem, the reverse Alexandrov–Fenchel inequalities, multi-additivity and
//! polynomiality.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fit::PolynomialFit;
use crate::ideal::MonomialIdeal;
use crate::linalg::{factorial, parse_rational, rat, Point, Rational};
use crate::polytope::Polytope;
use crate::mixed::{af_argument_lists, af_from_table, CovolumeTable};
use crate::multiplicity::MultiplicityTable;
use crate::region::ConvexRegion;
use crate::semigroup::{LatticePoint, ToricSemigroup};

const MAX_ATTEMPTS: u32 = 200;

/// Largest normalized volume `n! vol(conv(0, rays))` accepted for a random cone.
/// Products of four ideals have multiplicity at least `256` times this in dimension four.
fn max_cone_volume(dim: usize) -> Option<i64> {
    match dim {
        4 => Some(2),
        _ => None,
    }
}

/// Parameters of a random instance. Equal specs generate equal instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub dimension: usize,
    pub ray_count: usize,
    pub generator_count: usize,
    pub coordinate_bound: i64,
}

impl InstanceSpec {
    /// Sizes that keep the staircases small in each dimension.
    pub fn standard(seed: u64, dimension: usize) -> Self {
        let (ray_count, generator_count, coordinate_bound) = match dimension {
            2 => (3, 3, 3),
            3 => (4, 2, 2),
            _ => (4, 2, 1),
        };
        InstanceSpec {
            seed,
            dimension,
            ray_count,
            generator_count,
            coordinate_bound,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(2..=4).contains(&self.dimension) {
            return Err(Error::Input(format!("dimension {} is not in 2..=4", self.dimension)));
        }
        if self.ray_count < self.dimension {
            return Err(Error::Input(format!(
                "ray_count {} is below the dimension {}",
                self.ray_count, self.dimension
            )));
        }
        if self.generator_count == 0 || self.coordinate_bound <= 0 {
            return Err(Error::Input("generator_count and coordinate_bound must be positive".into()));
        }
        Ok(())
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seed={} dim={} rays={} gens={} bound={}",
            self.seed, self.dimension, self.ray_count, self.generator_count, self.coordinate_bound
        )
    }
}

/// A cone with `n + 1` m-primary ideals; the last one is the second factor in
/// the additivity check.
#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub cone: Arc<Cone>,
    pub semigroup: Arc<ToricSemigroup>,
    pub ideals: Vec<MonomialIdeal>,
}

impl Instance {
    pub fn newton_regions(&self) -> Vec<ConvexRegion> {
        self.ideals.iter().map(|i| i.newton().clone()).collect()
    }
}

pub fn random_instance(spec: &InstanceSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut last = String::new();
    for _ in 0..MAX_ATTEMPTS {
        match attempt(spec, &mut rng) {
            Ok(instance) => return Ok(instance),
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::GenerationFailed {
        seed: spec.seed,
        reason: last,
    })
}

fn attempt(spec: &InstanceSpec, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let n = spec.dimension;
    let b = spec.coordinate_bound;
    let mut rays = Vec::with_capacity(spec.ray_count);
    while rays.len() < spec.ray_count {
        let r: Vec<i64> = (0..n).map(|_| rng.gen_range(-b..=b)).collect();
        if r.iter().sum::<i64>() > 0 {
            rays.push(r);
        }
    }
    let cone = Arc::new(Cone::from_rays(&rays)?);
    if let Some(max) = max_cone_volume(n) {
        let mut pts = vec![Point::origin(n)];
        pts.extend(cone.rays().iter().map(|r| Point::from_ints(r)));
        let volume = Polytope::from_vertices(&pts)?.volume() * Rational::from_integer(factorial(n));
        if volume > rat(max) {
            return Err(Error::Input(format!("cone volume {volume} exceeds {max}")));
        }
    }
    let semigroup = Arc::new(ToricSemigroup::new(Arc::clone(&cone))?);
    let basis = semigroup.hilbert_basis().to_vec();

    let mut ideals = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let mut gens: Vec<LatticePoint> = cone
            .rays()
            .iter()
            .map(|r| {
                let m = rng.gen_range(1..=b);
                r.iter().map(|x| m * x).collect()
            })
            .collect();
        for _ in 0..spec.generator_count {
            let terms = rng.gen_range(1..=b.max(2));
            let mut x = vec![0i64; n];
            for _ in 0..terms {
                let h = &basis[rng.gen_range(0..basis.len())];
                for (xi, hi) in x.iter_mut().zip(h) {
                    *xi += hi;
                }
            }
            gens.push(x);
        }
        let ideal = MonomialIdeal::new(&semigroup, gens)?;
        ideal.require_m_primary()?;
        ideals.push(ideal);
    }
    Ok(Instance {
        spec: *spec,
        cone,
        semigroup,
        ideals,
    })
}

/// The four theorem checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Bk,
    Af,
    Poly,
    Additivity,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Bk => "bk",
            Check::Af => "af",
            Check::Poly => "poly",
            Check::Additivity => "additivity",
        }
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bk" => Ok(Check::Bk),
            "af" => Ok(Check::Af),
            "poly" => Ok(Check::Poly),
            "additivity" => Ok(Check::Additivity),
            other => Err(Error::Input(format!("unknown check {other:?}"))),
        }
    }
}

fn ser_quantities<S: Serializer>(q: &BTreeMap<String, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(q.iter().map(|(k, v)| (k, v.to_string())))
}

/// One check on one instance, serialized as a single JSON line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub instance: InstanceSpec,
    #[serde(serialize_with = "ser_quantities")]
    pub quantities: BTreeMap<String, Rational>,
    pub holds: bool,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn new(check: Check, spec: &InstanceSpec, quantities: BTreeMap<String, Rational>, start: Instant) -> Self {
        let mut report = VerificationReport {
            check_name: check.name().to_string(),
            instance: *spec,
            quantities,
            holds: false,
            elapsed_ms: start.elapsed().as_millis() as u64,
        };
        report.holds = report.recompute_holds();
        report
    }

    pub fn quantity(&self, name: &str) -> Rational {
        self.quantities.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    /// Re-derives `holds` from the recorded quantities alone.
    pub fn recompute_holds(&self) -> bool {
        let q = |name: &str| self.quantity(name);
        match self.check_name.as_str() {
            "bk" => q("mixed_multiplicity") == q("n_factorial") * q("mixed_covolume"),
            "af" => q("covol_lhs") >= q("covol_rhs") && q("mult_lhs") >= q("mult_rhs"),
            "additivity" => q("e_product") == q("e_first") + q("e_second"),
            "poly" => q("covol_residual").is_zero() && q("mult_residual").is_zero(),
            _ => false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

fn insert(q: &mut BTreeMap<String, Rational>, name: &str, v: Rational) {
    q.insert(name.to_string(), v);
}

fn first_n(instance: &Instance) -> (Vec<MonomialIdeal>, Vec<ConvexRegion>) {
    let n = instance.spec.dimension;
    let ideals = instance.ideals[..n].to_vec();
    let regions = ideals.iter().map(|i| i.newton().clone()).collect();
    (ideals, regions)
}

fn bk_on(
    spec: &InstanceSpec,
    mult: &mut MultiplicityTable,
    covol: &mut CovolumeTable,
    start: Instant,
) -> Result<VerificationReport> {
    let args: Vec<usize> = (0..spec.dimension).collect();
    let e = mult.mixed(&args)?;
    let v = covol.mixed(&args)?;
    let mut q = BTreeMap::new();
    insert(&mut q, "mixed_multiplicity", rat(e as i64));
    insert(&mut q, "mixed_covolume", v);
    insert(&mut q, "n_factorial", Rational::from_integer(factorial(spec.dimension)));
    Ok(VerificationReport::new(Check::Bk, spec, q, start))
}

fn af_on(
    spec: &InstanceSpec,
    mult: &mut MultiplicityTable,
    covol: &mut CovolumeTable,
    start: Instant,
) -> Result<VerificationReport> {
    let covol_report = af_from_table(covol)?;
    let [a, b, c] = af_argument_lists(spec.dimension);
    let ea = mult.mixed(&a)?;
    let eb = mult.mixed(&b)?;
    let ec = mult.mixed(&c)?;
    let mut q = BTreeMap::new();
    insert(&mut q, "covol_lhs", covol_report.lhs);
    insert(&mut q, "covol_rhs", covol_report.rhs);
    insert(&mut q, "mult_lhs", Rational::from_integer((ea as u128 * eb as u128).into()));
    insert(&mut q, "mult_rhs", Rational::from_integer((ec as u128 * ec as u128).into()));
    Ok(VerificationReport::new(Check::Af, spec, q, start))
}

fn tables(ideals: Vec<MonomialIdeal>, regions: Vec<ConvexRegion>) -> Result<(MultiplicityTable, CovolumeTable)> {
    Ok((MultiplicityTable::new(ideals)?, CovolumeTable::new(regions)?))
}

/// `e(I_1, ..., I_n) = n! V(Γ_1, ..., Γ_n)`.
pub fn verify_bk(spec: &InstanceSpec) -> Result<VerificationReport> {
    let start = Instant::now();
    let instance = random_instance(spec)?;
    let (ideals, regions) = first_n(&instance);
    let (mut mult, mut covol) = tables(ideals, regions)?;
    bk_on(spec, &mut mult, &mut covol, start)
}

/// Both reverse Alexandrov–Fenchel inequalities: for covolumes and for multiplicities.
pub fn verify_af(spec: &InstanceSpec) -> Result<VerificationReport> {
    let start = Instant::now();
    let instance = random_instance(spec)?;
    let (ideals, regions) = first_n(&instance);
    let (mut mult, mut covol) = tables(ideals, regions)?;
    af_on(spec, &mut mult, &mut covol, start)
}

/// The BK and AF reports for one instance, sharing every intermediate value.
pub fn verify_bk_af(spec: &InstanceSpec) -> Result<(VerificationReport, VerificationReport)> {
    let start = Instant::now();
    let instance = random_instance(spec)?;
    let (ideals, regions) = first_n(&instance);
    let (mut mult, mut covol) = tables(ideals, regions)?;
    let bk = bk_on(spec, &mut mult, &mut covol, start)?;
    let start = Instant::now();
    let af = af_on(spec, &mut mult, &mut covol, start)?;
    Ok((bk, af))
}

/// `e(I'·I'', I_2, ..., I_n) = e(I', I_2, ..., I_n) + e(I'', I_2, ..., I_n)`
/// with `I' = I_1` and `I''` the extra ideal of the instance.
pub fn verify_additivity(spec: &InstanceSpec) -> Result<VerificationReport> {
    let start = Instant::now();
    let instance = random_instance(spec)?;
    let n = spec.dimension;
    let first = instance.ideals[0].clone();
    let second = instance.ideals[n].clone();
    let product = first.product(&second)?;
    let mut family = instance.ideals[..n].to_vec();
    family.push(second);
    family.push(product);
    let mut table = MultiplicityTable::new(family)?;
    let with_head = |head: usize| {
        let mut args = vec![head];
        args.extend(1..n);
        args
    };
    let e_first = table.mixed(&with_head(0))?;
    let e_second = table.mixed(&with_head(n))?;
    let e_product = table.mixed(&with_head(n + 1))?;
    let mut q = BTreeMap::new();
    insert(&mut q, "e_first", rat(e_first as i64));
    insert(&mut q, "e_second", rat(e_second as i64));
    insert(&mut q, "e_product", rat(e_product as i64));
    Ok(VerificationReport::new(Check::Additivity, spec, q, start))
}

/// `sample - fit` at the first held-out point where they differ, or zero.
fn residual(fit: Result<PolynomialFit>) -> Result<(Rational, Option<PolynomialFit>)> {
    match fit {
        Ok(f) => Ok((Rational::zero(), Some(f))),
        Err(Error::FitMismatch { sample, fit, .. }) => {
            Ok((parse_rational(&sample)? - parse_rational(&fit)?, None))
        }
        Err(e) => Err(e),
    }
}

/// Exact degree-`n` fits of `covol(λ1 Γ1 + λ2 Γ2)` and `e(I1^k1 I2^k2)` on the grid
/// `{0..=n+1}^2`, with every held-out point checked.
pub fn verify_polynomiality(spec: &InstanceSpec) -> Result<VerificationReport> {
    let start = Instant::now();
    let instance = random_instance(spec)?;
    let n = spec.dimension;
    let radius = n as u64 + 1;
    let regions = vec![instance.ideals[0].newton().clone(), instance.ideals[1].newton().clone()];
    let mut covol = CovolumeTable::new(regions)?;
    let covol_fit = PolynomialFit::fit(2, n, radius, |l| {
        covol.covolume_of(&[l[0] as u32, l[1] as u32])
    });
    let mut mult = MultiplicityTable::new(instance.ideals[..2].to_vec())?;
    let mult_fit = PolynomialFit::fit(2, n, radius, |k| {
        mult.multiplicity_of(&[k[0] as u32, k[1] as u32]).map(|e| rat(e as i64))
    });
    let (covol_residual, covol_fit) = residual(covol_fit)?;
    let (mult_residual, mult_fit) = residual(mult_fit)?;
    let mut q = BTreeMap::new();
    insert(&mut q, "covol_residual", covol_residual);
    insert(&mut q, "mult_residual", mult_residual);
    for (prefix, fit) in [("covol", covol_fit), ("mult", mult_fit)] {
        if let Some(fit) = fit {
            for (exps, c) in fit.coefficients() {
                insert(&mut q, &format!("{prefix}_coeff_{}_{}", exps[0], exps[1]), c.clone());
            }
        }
    }
    Ok(VerificationReport::new(Check::Poly, spec, q, start))
}

pub fn verify(check: Check, spec: &InstanceSpec) -> Result<VerificationReport> {
    match check {
        Check::Bk => verify_bk(spec),
        Check::Af => verify_af(spec),
        Check::Poly => verify_polynomiality(spec),
        Check::Additivity => verify_additivity(spec),
    }
}

/// Runs `check` on every spec on `jobs` threads; results keep the order of `specs`.
pub fn verify_batch(check: Check, specs: &[InstanceSpec], jobs: usize) -> Vec<Result<VerificationReport>> {
    run_parallel(specs, jobs, |s| verify(check, s))
}

pub(crate) fn run_parallel<T, F>(specs: &[InstanceSpec], jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&InstanceSpec) -> T + Sync,
{
    if jobs <= 1 {
        return specs.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| specs.par_iter().map(&f).collect())
}

/// BK and AF over a batch, sharing tables within each instance.
pub fn verify_bk_af_batch(
    specs: &[InstanceSpec],
    jobs: usize,
) -> Vec<Result<(VerificationReport, VerificationReport)>> {
    run_parallel(specs, jobs, verify_bk_af)
}
