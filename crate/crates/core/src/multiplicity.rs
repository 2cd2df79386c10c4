//! Colengths, Hilbert–Samuel functions, Samuel and mixed multiplicities.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg::{binomial, factorial};
use crate::semigroup::LatticePoint;

/// Bounds on the staircase exploration and on the stabilization search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub bfs_cap: usize,
    pub max_k: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            bfs_cap: 1_000_000,
            max_k: 64,
        }
    }
}

impl Limits {
    /// Defaults, with `COCONE_BFS_CAP` overriding the exploration cap.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var("COCONE_BFS_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.bfs_cap = cap;
        }
        limits
    }
}

/// Lattice points packed into one integer, `w` bits per coordinate with a bias,
/// so that packing is additive: `pack(a - b) = pack(a) - lin(b)`.
#[derive(Clone, Copy)]
struct Packing {
    dim: usize,
    width: u32,
    bias: i64,
}

impl Packing {
    fn new(dim: usize) -> Result<Self> {
        if dim == 0 || dim > 8 {
            return Err(Error::Input(format!(
                "staircase exploration supports dimensions 1..=8, not {dim}"
            )));
        }
        let width = (127 / dim as u32).min(32);
        Ok(Packing {
            dim,
            width,
            bias: 1 << (width - 1),
        })
    }

    fn lin(&self, v: &[i64]) -> i128 {
        v.iter()
            .enumerate()
            .map(|(i, &x)| (x as i128) << (i as u32 * self.width))
            .sum()
    }

    fn pack(&self, v: &[i64]) -> Result<i128> {
        if v.iter().any(|&x| x.abs() >= self.bias) {
            return Err(Error::Overflow(format!("exponent {v:?} leaves the packed range")));
        }
        Ok(self.lin(v) + self.lin(&vec![self.bias; self.dim]))
    }

    fn unpack(&self, key: i128, out: &mut [i64]) {
        let mask = (1i128 << self.width) - 1;
        for (i, x) in out.iter_mut().enumerate() {
            *x = ((key >> (i as u32 * self.width)) & mask) as i64 - self.bias;
        }
    }
}

/// `dim k[S]/I`: breadth-first search from the apex along Hilbert basis steps,
/// never stepping into the ideal.
pub fn colength(ideal: &MonomialIdeal) -> Result<u64> {
    colength_with(ideal, &Limits::from_env())
}

pub fn colength_with(ideal: &MonomialIdeal, limits: &Limits) -> Result<u64> {
    ideal.require_m_primary()?;
    let s = ideal.semigroup();
    let origin = vec![0i64; s.dim()];
    if ideal.contains_unchecked(&origin) {
        return Ok(0);
    }
    let mut seen: FxHashSet<LatticePoint> = FxHashSet::default();
    let mut queue = VecDeque::new();
    seen.insert(origin.clone());
    queue.push_back(origin);
    while let Some(alpha) = queue.pop_front() {
        for h in s.hilbert_basis() {
            let next: LatticePoint = alpha.iter().zip(h).map(|(a, b)| a + b).collect();
            if seen.contains(&next) || ideal.contains_unchecked(&next) {
                continue;
            }
            if seen.len() >= limits.bfs_cap {
                return Err(Error::ExplorationCap(limits.bfs_cap));
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(seen.len() as u64)
}

/// Values `H_I(k) = dim k[S]/I^k` for `k = 1..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSamuelTable {
    pub entries: Vec<(u32, u64)>,
}

impl HilbertSamuelTable {
    /// `H(k)`, with `H(0) = 0`.
    pub fn get(&self, k: u32) -> Option<u64> {
        if k == 0 {
            return Some(0);
        }
        self.entries.get(k as usize - 1).map(|&(_, v)| v)
    }
}

pub fn hilbert_samuel(ideal: &MonomialIdeal, k_max: u32) -> Result<HilbertSamuelTable> {
    hilbert_samuel_with(ideal, k_max, &Limits::from_env())
}

/// For each exponent `α ∈ S` let `ord(α)` be the largest `k` with `x^α ∈ I^k`. Then
/// `ord(α) = max(0, 1 + ord(α - g))` over generators `g` with `α - g ∈ S`, and
/// `H(k) = #{α : ord(α) < k}`. Points with `ord < k_max` are visited in order of
/// increasing `xi`, so every `α - g` is settled before `α`; a missing one has
/// `ord >= k_max`.
pub fn hilbert_samuel_with(ideal: &MonomialIdeal, k_max: u32, limits: &Limits) -> Result<HilbertSamuelTable> {
    if k_max == 0 {
        return Err(Error::Input("k_max must be positive".into()));
    }
    ideal.require_m_primary()?;
    if ideal.is_unit() {
        return Ok(HilbertSamuelTable {
            entries: (1..=k_max).map(|k| (k, 0)).collect(),
        });
    }
    let s = ideal.semigroup();
    let cone = s.cone();
    let dim = s.dim();
    let packing = Packing::new(dim)?;
    let steps: Vec<(i128, i64)> = s
        .hilbert_basis()
        .iter()
        .map(|h| (packing.lin(h), s.xi(h)))
        .collect();
    let gens: Vec<(i128, &[i64])> = ideal
        .generators()
        .iter()
        .map(|g| (packing.lin(g), g.as_slice()))
        .collect();

    // Queued points hold `k_max` until they are settled.
    let mut ord: FxHashMap<i128, u32> = FxHashMap::default();
    let mut buckets: BTreeMap<i64, Vec<i128>> = BTreeMap::new();
    let mut counts = vec![0u64; k_max as usize];
    let mut settled = 0usize;
    let origin = packing.pack(&vec![0; dim])?;
    ord.insert(origin, k_max);
    buckets.insert(0, vec![origin]);

    let mut alpha = vec![0i64; dim];
    let mut diff = vec![0i64; dim];
    while let Some((level, keys)) = buckets.pop_first() {
        for key in keys {
            packing.unpack(key, &mut alpha);
            let mut o = 0u32;
            for (lin, g) in &gens {
                match ord.get(&(key - lin)) {
                    Some(&d) => o = o.max(d + 1),
                    None => {
                        for ((d, a), b) in diff.iter_mut().zip(&alpha).zip(g.iter()) {
                            *d = a - b;
                        }
                        if cone.contains_lattice(&diff) {
                            o = k_max;
                        }
                    }
                }
                if o >= k_max {
                    break;
                }
            }
            if o >= k_max {
                continue;
            }
            counts[o as usize] += 1;
            ord.insert(key, o);
            settled += 1;
            if settled > limits.bfs_cap {
                return Err(Error::ExplorationCap(limits.bfs_cap));
            }
            for (lin, xi) in &steps {
                let next = key + lin;
                if let std::collections::hash_map::Entry::Vacant(e) = ord.entry(next) {
                    packing.unpack(next, &mut diff);
                    if diff.iter().any(|&x| x.abs() >= packing.bias / 2) {
                        return Err(Error::Overflow("staircase exponent leaves the packed range".into()));
                    }
                    e.insert(k_max);
                    buckets.entry(level + xi).or_default().push(next);
                }
            }
        }
    }

    let mut entries = Vec::with_capacity(k_max as usize);
    let mut total = 0u64;
    for k in 1..=k_max {
        total += counts[k as usize - 1];
        entries.push((k, total));
    }
    Ok(HilbertSamuelTable { entries })
}

/// `Δ^n H(k) = Σ_i (-1)^(n-i) C(n,i) H(k+i)`.
fn nth_difference(table: &HilbertSamuelTable, n: usize, k: u32) -> i128 {
    (0..=n)
        .map(|i| {
            let sign = if (n - i) % 2 == 0 { 1 } else { -1 };
            sign * binomial(n, i) as i128 * table.get(k + i as u32).expect("table covers k + n") as i128
        })
        .sum()
}

/// `e(I)`: the stabilized `n`-th forward difference of the Hilbert–Samuel function.
pub fn samuel_multiplicity(ideal: &MonomialIdeal) -> Result<u64> {
    samuel_multiplicity_with(ideal, &Limits::from_env())
}

/// Starts at `k = n + 1` and doubles `k` until `Δ^n H` is constant on `[k, 2k]`.
pub fn samuel_multiplicity_with(ideal: &MonomialIdeal, limits: &Limits) -> Result<u64> {
    ideal.require_m_primary()?;
    if ideal.is_unit() {
        return Ok(0);
    }
    let n = ideal.dim();
    let mut k = n as u32 + 1;
    while k <= limits.max_k {
        let table = hilbert_samuel_with(ideal, 2 * k + n as u32, limits)?;
        let first = nth_difference(&table, n, k);
        if (k + 1..=2 * k).all(|j| nth_difference(&table, n, j) == first) {
            return u64::try_from(first).map_err(|_| Error::Overflow(format!("multiplicity {first}")));
        }
        k *= 2;
    }
    Err(Error::NoStabilization(limits.max_k))
}

/// Memoized multiplicities of products `Π I_j^{c_j}` of a fixed family of ideals.
pub struct MultiplicityTable {
    ideals: Vec<MonomialIdeal>,
    limits: Limits,
    products: HashMap<Vec<u32>, MonomialIdeal>,
    values: HashMap<Vec<u32>, u64>,
}

impl MultiplicityTable {
    pub fn new(ideals: Vec<MonomialIdeal>) -> Result<Self> {
        Self::with_limits(ideals, Limits::from_env())
    }

    pub fn with_limits(ideals: Vec<MonomialIdeal>, limits: Limits) -> Result<Self> {
        let first = ideals.first().ok_or(Error::Arity {
            expected: 1,
            found: 0,
        })?;
        for i in &ideals {
            if !first.same_semigroup(i) {
                return Err(Error::SemigroupMismatch);
            }
            i.require_m_primary()?;
        }
        Ok(MultiplicityTable {
            ideals,
            limits,
            products: HashMap::new(),
            values: HashMap::new(),
        })
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    fn dim(&self) -> usize {
        self.ideals[0].dim()
    }

    pub fn product(&mut self, counts: &[u32]) -> Result<MonomialIdeal> {
        if let Some(p) = self.products.get(counts) {
            return Ok(p.clone());
        }
        let ideal = match counts.iter().rposition(|&c| c > 0) {
            None => MonomialIdeal::unit(self.ideals[0].semigroup()),
            Some(j) => {
                let mut smaller = counts.to_vec();
                smaller[j] -= 1;
                if smaller.iter().all(|&c| c == 0) {
                    self.ideals[j].clone()
                } else {
                    self.product(&smaller)?.product(&self.ideals[j])?
                }
            }
        };
        self.products.insert(counts.to_vec(), ideal.clone());
        Ok(ideal)
    }

    pub fn multiplicity_of(&mut self, counts: &[u32]) -> Result<u64> {
        if let Some(&v) = self.values.get(counts) {
            return Ok(v);
        }
        let v = samuel_multiplicity_with(&self.product(counts)?, &self.limits)?;
        self.values.insert(counts.to_vec(), v);
        Ok(v)
    }

    /// `e(I_{args[0]}, ..., I_{args[n-1]})` by polarization.
    pub fn mixed(&mut self, args: &[usize]) -> Result<u64> {
        let n = self.dim();
        if args.len() != n {
            return Err(Error::Arity {
                expected: n,
                found: args.len(),
            });
        }
        let mut total = BigInt::zero();
        for mask in 1u32..(1 << n) {
            let mut counts = vec![0u32; self.ideals.len()];
            for (pos, &j) in args.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    counts[j] += 1;
                }
            }
            let v = BigInt::from(self.multiplicity_of(&counts)?);
            if (n - mask.count_ones() as usize) % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        let (q, r) = total.div_rem(&factorial(n));
        if !r.is_zero() {
            return Err(Error::NonIntegerResult(format!("{total}/{}", factorial(n))));
        }
        q.to_u64()
            .ok_or_else(|| Error::NonIntegerResult(format!("{q} is not a nonnegative machine integer")))
    }
}

/// `e(I_1, ..., I_n)`, normalized so that `e(I, ..., I) = e(I)`.
pub fn mixed_multiplicity(ideals: &[MonomialIdeal]) -> Result<u64> {
    let n = ideals.first().map_or(0, MonomialIdeal::dim);
    if ideals.len() != n || n == 0 {
        return Err(Error::Arity {
            expected: n,
            found: ideals.len(),
        });
    }
    let args: Vec<usize> = (0..n).collect();
    MultiplicityTable::new(ideals.to_vec())?.mixed(&args)
}
