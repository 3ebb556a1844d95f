//! Discreteness and density of finitely generated subgroups of `R^k` and of
//! polynomial function spaces.

mod functions;
mod search;
mod symbolic;


pub use functions::{approximate_in_span, independence_constant, Approximation, FunctionGenerator};
pub use search::{
    density_scan_f64, find_small_combination_f64, min_nonzero_norm_f64, DensityReport, SmallCombination,
    ENUMERATION_LIMIT,
};
pub use symbolic::{common_shape, SymExpr, SymbolBasis, SymbolMode, SymbolicVector};

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::RationalLattice;
use crate::linalg::rank;
use crate::num::{rational_gcd, rint, to_f64};

/// Largest evaluation grid used for generic rank.
pub const GENERIC_GRID_LIMIT: usize = 200_000;

/// Rational coordinates of the vectors, indexed by (axis, monomial).
fn coordinates(vs: &[SymbolicVector]) -> Vec<Vec<BigRational>> {
    let monos: BTreeSet<&Vec<u32>> = vs.iter().flat_map(|v| v.entries.iter().flat_map(|e| e.terms().map(|(m, _)| m))).collect();
    let monos: Vec<&Vec<u32>> = monos.into_iter().collect();
    vs.iter()
        .map(|v| {
            let mut row = Vec::with_capacity(v.dim() * monos.len());
            for e in &v.entries {
                let lookup: alloc::collections::BTreeMap<&Vec<u32>, &BigRational> = e.terms().collect();
                for m in &monos {
                    row.push(lookup.get(m).map(|c| (*c).clone()).unwrap_or_else(BigRational::zero));
                }
            }
            row
        })
        .collect()
}

/// Rank of the integer span.
pub fn z_rank(gens: &[SymbolicVector]) -> Result<usize> {
    if gens.is_empty() {
        return Ok(0);
    }
    common_shape(gens)?;
    Ok(rank(&coordinates(gens)))
}

/// Dimension of the real span. With independent transcendental symbols this
/// is the rank over the rational function field, found as the largest rank
/// at points of a grid fine enough that no nonzero minor vanishes on all of it.
pub fn real_span_dim(gens: &[SymbolicVector]) -> Result<usize> {
    if gens.is_empty() {
        return Ok(0);
    }
    let (basis, dim) = common_shape(gens)?;
    let s = basis.len();
    let full = gens.len().min(dim);
    if !basis.is_transcendental() || s == 0 {
        let rows: Vec<Vec<BigRational>> =
            gens.iter().map(|v| v.entries.iter().map(|e| e.eval(&vec![BigRational::zero(); e.nvars()])).collect()).collect();
        return Ok(rank(&rows));
    }
    let sides: Vec<usize> = (0..s)
        .map(|i| {
            let d = gens.iter().flat_map(|v| v.entries.iter()).map(|e| e.degree_in(i)).max().unwrap_or(0);
            full * d as usize + 1
        })
        .collect();
    let total = sides.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n).filter(|t| *t <= GENERIC_GRID_LIMIT));
    if total.is_none() {
        return Err(Error::CapExceeded(format!("generic rank grid {sides:?}")));
    }
    let mut idx = vec![0usize; s];
    let mut best = 0;
    loop {
        let point: Vec<BigRational> = idx.iter().map(|&i| rint(i as i64)).collect();
        let rows: Vec<Vec<BigRational>> = gens.iter().map(|v| v.entries.iter().map(|e| e.eval(&point)).collect()).collect();
        best = best.max(rank(&rows));
        if best == full {
            return Ok(best);
        }
        let mut j = 0;
        loop {
            if j == s {
                return Ok(best);
            }
            idx[j] += 1;
            if idx[j] < sides[j] {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Kronecker: a finitely generated subgroup is discrete iff its rank equals
/// the dimension of its real span.
pub fn is_discrete(gens: &[SymbolicVector]) -> Result<bool> {
    Ok(z_rank(gens)? == real_span_dim(gens)?)
}

/// Exact minimum search for nonzero combinations of the numeric shadows.
pub fn min_nonzero_norm(gens: &[SymbolicVector], bound: i64) -> Result<Option<SmallCombination>> {
    let shadows: Vec<Vec<f64>> = gens.iter().map(SymbolicVector::shadow).collect();
    min_nonzero_norm_f64(&shadows, bound)
}

/// Smallest nonzero combination of norm below `delta`, if any within `bound`.
pub fn find_small_combination(gens: &[SymbolicVector], bound: i64, delta: f64) -> Result<Option<SmallCombination>> {
    let shadows: Vec<Vec<f64>> = gens.iter().map(SymbolicVector::shadow).collect();
    find_small_combination_f64(&shadows, bound, delta)
}

/// Grid scan of a rational box for combinations within `eps`. Inexact.
pub fn density_check(
    gens: &[SymbolicVector],
    lo: &[BigRational],
    hi: &[BigRational],
    eps: &BigRational,
    word_bound: i64,
) -> Result<DensityReport> {
    if !eps.is_positive() {
        return Err(Error::Precondition(String::from("eps must be positive")));
    }
    if !gens.is_empty() {
        common_shape(gens)?;
    }
    let shadows: Vec<Vec<f64>> = gens.iter().map(SymbolicVector::shadow).collect();
    let lo: Vec<f64> = lo.iter().map(to_f64).collect();
    let hi: Vec<f64> = hi.iter().map(to_f64).collect();
    density_scan_f64(&shadows, &lo, &hi, to_f64(eps), word_bound)
}

/// A linear functional on `R^k`.
#[derive(Clone, Debug, PartialEq)]
pub enum Functional {
    Coordinate(usize),
    Linear(Vec<BigRational>),
}

impl Functional {
    pub fn apply(&self, v: &SymbolicVector) -> Result<SymExpr> {
        match self {
            Functional::Coordinate(j) => v
                .entries
                .get(*j)
                .cloned()
                .ok_or(Error::Dimension { expected: *j + 1, found: v.dim() }),
            Functional::Linear(w) => {
                if w.len() != v.dim() {
                    return Err(Error::Dimension { expected: v.dim(), found: w.len() });
                }
                Ok(w.iter()
                    .zip(&v.entries)
                    .fold(SymExpr::zero(v.basis.len()), |acc, (c, e)| acc.add(&e.scale(c))))
            }
        }
    }
}

/// Whether a functional's values on the generators form a cyclic group `c·Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceWitness {
    pub discrete: bool,
    /// The generator `c`; zero when every value vanishes.
    pub generator: Option<SymExpr>,
    pub values: Vec<SymExpr>,
}

/// Values `f(g_i)`: discrete iff they span a rank ≤ 1 group, then `c` is the
/// rational gcd of their coordinates along the common direction.
pub fn discrete_trace_witness(gens: &[SymbolicVector], functional: &Functional) -> Result<TraceWitness> {
    let nv = if gens.is_empty() { 0 } else { common_shape(gens)?.0.len() };
    let values: Vec<SymExpr> = gens.iter().map(|g| functional.apply(g)).collect::<Result<_>>()?;
    let nonzero: Vec<&SymExpr> = values.iter().filter(|v| !v.is_zero()).collect();
    let Some(dir) = nonzero.first() else {
        return Ok(TraceWitness { discrete: true, generator: Some(SymExpr::zero(nv)), values });
    };
    let (lead_mono, lead_coeff) = dir.terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let unit = dir.scale(&lead_coeff.recip());
    let mut ratios = Vec::with_capacity(nonzero.len());
    for v in &nonzero {
        let r = v.terms().find(|(m, _)| **m == lead_mono).map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero);
        if r.is_zero() || unit.scale(&r) != **v {
            return Ok(TraceWitness { discrete: false, generator: None, values });
        }
        ratios.push(r);
    }
    let c = rational_gcd(ratios.iter());
    Ok(TraceWitness { discrete: true, generator: Some(unit.scale(&c)), values })
}

/// Trace generators along a growing family of generator sets. The family is
/// reported non-discrete when the generator shrinks at every step; this is
/// evidence from a finite prefix, not a proof.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceChain {
    pub generators: Vec<Option<SymExpr>>,
    pub shrinking: bool,
}

pub fn discrete_trace_chain(family: &[Vec<SymbolicVector>], functional: &Functional) -> Result<TraceChain> {
    let mut generators = Vec::with_capacity(family.len());
    let mut shrinking = family.len() >= 2;
    let mut prev: Option<BigRational> = None;
    for gens in family {
        let w = discrete_trace_witness(gens, functional)?;
        let c = w.generator.as_ref().and_then(SymExpr::as_constant);
        match (&prev, &c) {
            (Some(p), Some(c)) if c.abs() < p.abs() && !c.is_zero() => {}
            (None, Some(_)) if generators.is_empty() => {}
            _ => shrinking = false,
        }
        prev = c;
        generators.push(w.generator);
    }
    Ok(TraceChain { generators, shrinking })
}

/// The generators `x_i = (α^i, 2^{-i})`, `i = 0..n`, with α transcendental.
pub fn build_power_pairs(n: usize, alpha_shadow: f64) -> Result<Vec<SymbolicVector>> {
    if n == 0 {
        return Err(Error::Precondition(String::from("n must be at least 1")));
    }
    let basis = SymbolBasis::transcendental(&["alpha"], vec![alpha_shadow])?;
    let alpha = basis.symbol(0);
    Ok((0..n)
        .map(|i| {
            let half = BigRational::new(BigInt::one(), BigInt::one() << i);
            SymbolicVector::new(basis.clone(), vec![alpha.pow(i as u32), SymExpr::constant(half)])
        })
        .collect())
}

/// A finitely generated subgroup of `R^k` given by generators.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupModel {
    pub basis: Arc<SymbolBasis>,
    pub dim: usize,
    pub gens: Vec<SymbolicVector>,
}

impl GroupModel {
    pub fn new(gens: Vec<SymbolicVector>) -> Result<Self> {
        let (basis, dim) = common_shape(&gens)?;
        Ok(GroupModel { basis, dim, gens })
    }

    /// The standard lattice `Z^k`.
    pub fn integer_lattice(k: usize) -> Result<Self> {
        let basis = SymbolBasis::plain();
        let gens = (0..k)
            .map(|i| {
                let v: Vec<BigRational> = (0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect();
                SymbolicVector::rational(basis.clone(), &v)
            })
            .collect();
        Self::new(gens)
    }
}

/// `Z^m + θZ` with `θ = (β_1, …, β_m)` independent transcendentals.
pub fn build_critical(m: usize, shadows: &[f64]) -> Result<GroupModel> {
    if m == 0 {
        return Err(Error::Precondition(String::from("m must be at least 1")));
    }
    if shadows.len() != m {
        return Err(Error::Dimension { expected: m, found: shadows.len() });
    }
    let names: Vec<String> = (1..=m).map(|i| format!("b{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let basis = SymbolBasis::transcendental(&refs, shadows.to_vec())?;
    let mut gens: Vec<SymbolicVector> = (0..m)
        .map(|i| {
            let v: Vec<BigRational> = (0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect();
            SymbolicVector::rational(basis.clone(), &v)
        })
        .collect();
    gens.push(SymbolicVector::new(basis.clone(), (0..m).map(|i| basis.symbol(i)).collect()));
    GroupModel::new(gens)
}

/// Outcome of a sampled search for non-discrete subgroups of small rank.
#[derive(Clone, Debug, PartialEq)]
pub struct AntiFdSample {
    /// Combinations (rows, over the model's generators) spanning a
    /// non-discrete subgroup.
    pub witness: Option<Vec<Vec<i64>>>,
    pub samples: usize,
}

impl AntiFdSample {
    pub fn no_counterexample(&self) -> bool {
        self.witness.is_none()
    }
}

/// Samples subgroups generated by at most `m` small combinations of the
/// model's generators and reports the first non-discrete one. When `m`
/// covers all generators the whole group is tried first.
pub fn antifd_m_check<R: Rng + ?Sized>(model: &GroupModel, m: usize, budget: usize, rng: &mut R) -> Result<AntiFdSample> {
    let n = model.gens.len();
    let mut samples = 0;
    if m >= n && budget > 0 {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        samples += 1;
        if !is_discrete(&model.gens)? {
            return Ok(AntiFdSample { witness: Some(rows), samples });
        }
    }
    while samples < budget {
        let k = rng.random_range(1..=m.max(1));
        let mut rows = Vec::with_capacity(k);
        while rows.len() < k {
            let row: Vec<i64> = (0..n).map(|_| rng.random_range(-2..=2)).collect();
            if row.iter().any(|&c| c != 0) {
                rows.push(row);
            }
        }
        let sub: Vec<SymbolicVector> =
            rows.iter().map(|r| SymbolicVector::combination(&model.gens, r)).collect::<Result<_>>()?;
        samples += 1;
        if !is_discrete(&sub)? {
            return Ok(AntiFdSample { witness: Some(rows), samples });
        }
    }
    Ok(AntiFdSample { witness: None, samples })
}

/// Checks on a proposed decomposition `H = K ⊕ F`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitReport {
    pub same_group: bool,
    pub trivial_intersection: bool,
    pub f_discrete: bool,
    /// Numeric (inexact) density of `K` in its real span; `None` if skipped.
    pub k_dense: Option<bool>,
    pub notes: Vec<String>,
}

impl SplitReport {
    pub fn valid(&self) -> bool {
        self.same_group && self.trivial_intersection && self.f_discrete && self.k_dense != Some(false)
    }
}

fn span_coordinates(shadows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    // Greedy orthonormal basis of the span, then coordinates along it.
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in shadows {
        let mut r = v.clone();
        for b in &basis {
            let d: f64 = r.iter().zip(b).map(|(x, y)| x * y).sum();
            r.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let n = libm::sqrt(r.iter().map(|x| x * x).sum::<f64>());
        if n > 1e-9 {
            basis.push(r.iter().map(|x| x / n).collect());
        }
    }
    shadows.iter().map(|v| basis.iter().map(|b| v.iter().zip(b).map(|(x, y)| x * y).sum()).collect()).collect()
}

/// Verifies a user-proposed split of `H` into `K ⊕ F`.
pub fn verify_split(h: &[SymbolicVector], k: &[SymbolicVector], f: &[SymbolicVector]) -> Result<SplitReport> {
    let all: Vec<SymbolicVector> = h.iter().chain(k).chain(f).cloned().collect();
    if all.is_empty() {
        return Err(Error::Precondition(String::from("no generators")));
    }
    common_shape(&all)?;
    let coords = coordinates(&all);
    let width = coords[0].len();
    let (hc, rest) = coords.split_at(h.len());
    let (kc, fc) = rest.split_at(k.len());
    let kf: Vec<Vec<BigRational>> = kc.iter().chain(fc).cloned().collect();
    let hl = RationalLattice::new(hc, width);
    let kfl = RationalLattice::new(&kf, width);
    let mut notes = Vec::new();
    let h_in = hc.iter().all(|v| kfl.contains(v));
    let kf_in = kf.iter().all(|v| hl.contains(v));
    if !h_in {
        notes.push(String::from("some generator of H is not in K + F"));
    }
    if !kf_in {
        notes.push(String::from("some generator of K or F is not in H"));
    }
    let trivial_intersection = rank(kc) + rank(fc) == rank(&kf);
    if !trivial_intersection {
        notes.push(String::from("K and F intersect nontrivially"));
    }
    let f_discrete = is_discrete(f)?;
    if !f_discrete {
        notes.push(String::from("F is not discrete"));
    }
    let k_dense = if k.is_empty() {
        Some(true)
    } else if is_discrete(k)? {
        // A nonzero lattice is never dense in its span.
        Some(z_rank(k)? == 0)
    } else {
        let shadows: Vec<Vec<f64>> = k.iter().map(SymbolicVector::shadow).collect();
        let local = span_coordinates(&shadows);
        let d = local[0].len();
        let mut bound = 1i64;
        while (2 * bound + 3).checked_pow(k.len() as u32).is_some_and(|t| t <= 2_000_000) && bound < 12 {
            bound += 1;
        }
        let report = density_scan_f64(&local, &vec![0.0; d], &vec![1.0; d], 0.1, bound)?;
        notes.push(format!("K density scan is numeric (worst gap {:.4})", report.worst_gap));
        Some(report.dense)
    };
    Ok(SplitReport { same_group: h_in && kf_in, trivial_intersection, f_discrete, k_dense, notes })
}
