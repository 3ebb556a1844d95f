use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::chain::{integerize_chain, relative_deviation, solve_chain_bounded};
use super::decompose_gcd;
use super::target::{DenseTargetGroup, Frac};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::limitgroup::{LimitGroup, PolySequence, RElement, TailVerdict};
use crate::num::rint;

/// Largest vertex set the non-interactive routines will enumerate.
pub const VERTEX_CAP: usize = 1 << 16;

/// `p_n = a_n + b_n·x` with `1 < a_n, b_n` coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialSequence {
    pairs: Vec<(BigInt, BigInt)>,
}

impl BinomialSequence {
    pub fn new(pairs: Vec<(BigInt, BigInt)>) -> Result<Self> {
        for (i, (a, b)) in pairs.iter().enumerate() {
            if *a <= BigInt::one() || *b <= BigInt::one() {
                return Err(Error::InvalidSequence {
                    index: i + 1,
                    reason: format!("need 1 < a, b, got ({a}, {b})"),
                });
            }
            if !a.gcd(b).is_one() {
                return Err(Error::NotCoprime(format!("stage {}: gcd({a}, {b}) = {}", i + 1, a.gcd(b))));
            }
        }
        Ok(BinomialSequence { pairs })
    }

    pub fn from_i64(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(a, b)| (a.into(), b.into())).collect())
    }

    /// Reads `a + b·x` entries.
    pub fn from_polys(ps: &[LaurentPoly]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(ps.len());
        for (i, p) in ps.iter().enumerate() {
            if p.len() != 2 || p.coeff(0).is_zero() || p.coeff(1).is_zero() {
                return Err(Error::InvalidSequence { index: i + 1, reason: format!("{p} is not a + b·x") });
            }
            pairs.push((p.coeff(0), p.coeff(1)));
        }
        Self::new(pairs)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `(a_n, b_n)` for `n ≥ 1`.
    pub fn pair(&self, n: usize) -> Result<&(BigInt, BigInt)> {
        if n == 0 || n > self.pairs.len() {
            return Err(Error::StageUnavailable { stage: n, available: self.pairs.len() });
        }
        Ok(&self.pairs[n - 1])
    }

    pub fn poly(&self, n: usize) -> Result<LaurentPoly> {
        let (a, b) = self.pair(n)?;
        Ok(LaurentPoly::from_terms([(0, a.clone()), (1, b.clone())]))
    }

    /// `∏_{n≤N} |a_n − b_n|/(a_n + b_n)`.
    pub fn d(&self, big_n: usize) -> Result<BigRational> {
        (1..=big_n).try_fold(BigRational::one(), |acc, n| {
            let (a, b) = self.pair(n)?;
            Ok(acc * BigRational::new((a - b).abs(), a + b))
        })
    }

    /// `1/∏_{n≤N} (a_n + b_n)`, the value of every stage-`N` vertex at `x = 1`.
    pub fn c(&self, big_n: usize) -> Result<BigRational> {
        (1..=big_n).try_fold(BigRational::one(), |acc, n| {
            let (a, b) = self.pair(n)?;
            Ok(acc / BigRational::from_integer(a + b))
        })
    }

    pub fn to_poly_sequence(&self) -> Result<PolySequence> {
        PolySequence::finite((1..=self.len()).map(|n| self.poly(n)).collect::<Result<_>>()?)
    }
}

/// Images `u[n][j]` of `x^j/Q_n`, keyed by stage and then exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct HomomorphismData<E> {
    /// `p_1, …, p_N`.
    pub entries: Vec<LaurentPoly>,
    pub unit: E,
    pub table: Vec<BTreeMap<i64, E>>,
}

impl<E: Clone + PartialEq + core::fmt::Debug> HomomorphismData<E> {
    pub fn stages(&self) -> usize {
        self.table.len() - 1
    }

    /// Re-checks `u[n][j] = Σ_t (p_{n+1}, x^t)·u[n+1][j+t]` and positivity.
    pub fn verify<G: DenseTargetGroup<Elem = E>>(&self, g: &G) -> Result<()> {
        if self.table.first().and_then(|t| t.get(&0)) != Some(&self.unit) {
            return Err(Error::Verification(String::from("u[0][0] is not the unit")));
        }
        for (n, level) in self.table.iter().enumerate() {
            for (j, e) in level {
                if !g.is_order_unit(e) {
                    return Err(Error::Verification(format!("u[{n}][{j}] is not an order unit")));
                }
                let Some(next) = self.table.get(n + 1) else { continue };
                let mut sum = g.zero();
                for (t, c) in self.entries[n].terms() {
                    let child = next
                        .get(&(j + t))
                        .ok_or_else(|| Error::Verification(format!("u[{}][{}] missing", n + 1, j + t)))?;
                    sum = g.add(&sum, &g.scale(child, c));
                }
                if sum != *e {
                    return Err(Error::Verification(format!("recurrence fails at u[{n}][{j}]")));
                }
            }
        }
        Ok(())
    }
}

/// Stage tables for `R(a_n + b_n x)` into `G`, sending `1` to `u`. Every
/// stage-`n` image lies within `d_N/∏_{t≤n}|a_t − b_t|` of
/// `1/∏_{t≤n}(a_t + b_t)` (states normalized at `u`).
pub fn build_initial_hom<G: DenseTargetGroup>(
    seq: &BinomialSequence,
    g: &G,
    u: &G::Elem,
    stages: usize,
    threshold: &BigRational,
) -> Result<HomomorphismData<G::Elem>> {
    if !g.is_order_unit(u) {
        return Err(Error::Precondition(String::from("u is not an order unit")));
    }
    let d = seq.d(stages)?;
    if d <= *threshold {
        return Err(Error::Precondition(format!("d = {d} does not exceed the threshold {threshold}")));
    }
    let min_u = g.traces(u).into_iter().min().unwrap();
    let mut table = vec![BTreeMap::from([(0i64, u.clone())])];
    let mut bound = d.clone();
    let mut dev = BigRational::zero();
    for n in 1..=stages {
        let (an, bn) = seq.pair(n)?.clone();
        let gap = BigRational::from_integer((&an - &bn).abs());
        let c_prev = seq.c(n - 1)?;
        let next_bound = &bound / &gap;
        let delta = (&dev + &bound) / rint(2);
        let eps = (&next_bound - &delta / &gap) / rint(2);

        let prev: Vec<G::Elem> = (0..n as i64).map(|j| table[n - 1][&j].clone()).collect();
        // Rows read a_n·x_i + b_n·x_{i+1}; the bounded solver wants the smaller
        // coefficient on the superdiagonal, so reverse when a_n < b_n.
        let reversed = an < bn;
        let (a_l, b_l) = if reversed { (an.clone(), bn.clone()) } else { (bn.clone(), an.clone()) };
        let mut rhs = prev;
        if reversed {
            rhs.reverse();
        }
        let rhs_frac: Vec<Frac<G::Elem>> = rhs.iter().cloned().map(Frac::whole).collect();
        let solved = solve_chain_bounded(g, &a_l, &b_l, &rhs_frac, u, &c_prev, &delta)?;
        let mut v = integerize_chain(g, &a_l, &b_l, &rhs, &solved.x, &(&eps * &min_u))?;
        if reversed {
            v.reverse();
        }
        let c_n = seq.c(n)?;
        let mut level = BTreeMap::new();
        let mut worst = BigRational::zero();
        for (j, e) in v.into_iter().enumerate() {
            worst = worst.max(relative_deviation(g, &Frac::whole(e.clone()), &c_n, u));
            level.insert(j as i64, e);
        }
        if worst >= next_bound {
            return Err(Error::Verification(format!("stage {n} exceeds its norm window")));
        }
        table.push(level);
        dev = worst;
        bound = next_bound;
    }
    let entries = (1..=stages).map(|n| seq.poly(n)).collect::<Result<_>>()?;
    let h = HomomorphismData { entries, unit: u.clone(), table };
    h.verify(g)?;
    Ok(h)
}

/// `Σ_j (f, x^j)·u[n][j]`.
pub fn hom_apply_at<G: DenseTargetGroup>(
    h: &HomomorphismData<G::Elem>,
    g: &G,
    f: &LaurentPoly,
    n: usize,
) -> Result<G::Elem> {
    let level = h.table.get(n).ok_or(Error::NotMaterialized { level: n, index: h.stages() })?;
    let mut out = g.zero();
    for (j, c) in f.terms() {
        let img = level.get(&j).ok_or(Error::Membership { stage: n })?;
        out = g.add(&out, &g.scale(img, c));
    }
    Ok(out)
}

/// The image of an element of the limit group.
pub fn hom_apply<G: DenseTargetGroup>(h: &HomomorphismData<G::Elem>, g: &G, e: &RElement) -> Result<G::Elem> {
    hom_apply_at(h, g, &e.f, e.stage)
}

/// Outcome of checking `‖φ(e)^‖ ≤ ‖ê‖·‖φ(1)^‖` on samples.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormBoundReport {
    pub checked: usize,
    /// Holds against a lower bound for `‖ê‖`.
    pub verified: usize,
    /// Between the lower and upper bounds for `‖ê‖`.
    pub inconclusive: usize,
    /// Indices of samples exceeding even the upper bound.
    pub violations: Vec<usize>,
}

/// Bounds `‖ê‖` below by point, `τ₀` and `τ∞` traces and above by
/// `max_j |(f, x^j)|/(Q_n, x^j)`, then compares with the image norm.
pub fn phi_norm_bound_check<G: DenseTargetGroup>(
    h: &HomomorphismData<G::Elem>,
    g: &G,
    lg: &LimitGroup,
    samples: &[RElement],
) -> Result<NormBoundReport> {
    let unit_norm = g.norm(&h.unit);
    let points: Vec<BigRational> = (1..=32).map(|k| BigRational::new(k.into(), 8.into())).collect();
    let mut report = NormBoundReport::default();
    for (idx, e) in samples.iter().enumerate() {
        let image = g.norm(&hom_apply(h, g, e)?);
        let mut lower = lg.trace_zero(e)?.abs().max(lg.trace_infty(e)?.abs());
        for t in &points {
            lower = lower.max(lg.trace_point(e, t)?.abs());
        }
        let q = lg.q_product(e.stage)?;
        let upper = e
            .f
            .terms()
            .map(|(j, c)| {
                let qj = q.coeff(j);
                (!qj.is_zero()).then(|| BigRational::new(c.abs(), qj))
            })
            .try_fold(BigRational::zero(), |acc, r| r.map(|r| acc.max(r)));
        report.checked += 1;
        if image <= &lower * &unit_norm {
            report.verified += 1;
        } else if upper.is_some_and(|up| image > up * &unit_norm) {
            report.violations.push(idx);
        } else {
            report.inconclusive += 1;
        }
    }
    Ok(report)
}

/// First failure of `(j + Log p_{n+1}) ∩ (k + Log p_{n+1}) = ∅` for `j ≠ k ∈ Log Q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonInteractiveCheck {
    pub passed: bool,
    /// `(n, j, k, common exponent)`.
    pub violation: Option<(usize, i64, i64, i64)>,
    pub depth: usize,
}

/// `Log Q_n` for `n = 0..=depth`, failing on the first interaction.
fn vertex_levels(seq: &PolySequence, depth: usize) -> Result<(Vec<BTreeSet<i64>>, NonInteractiveCheck)> {
    let mut levels = vec![BTreeSet::from([0i64])];
    for n in 0..depth {
        let p = seq.entry(n + 1)?;
        let mut owner: BTreeMap<i64, i64> = BTreeMap::new();
        for &j in &levels[n] {
            for (t, _) in p.terms() {
                if let Some(&k) = owner.get(&(j + t)) {
                    let check = NonInteractiveCheck { passed: false, violation: Some((n, k, j, j + t)), depth };
                    return Ok((levels, check));
                }
                owner.insert(j + t, j);
            }
        }
        if owner.len() > VERTEX_CAP {
            return Err(Error::CapExceeded(format!("stage {} has more than {VERTEX_CAP} vertices", n + 1)));
        }
        levels.push(owner.into_keys().collect());
    }
    Ok((levels, NonInteractiveCheck { passed: true, violation: None, depth }))
}

/// Checks the disjointness condition for `n = 0, …, depth − 1`.
pub fn noninteractive_check(seq: &PolySequence, depth: usize) -> Result<NonInteractiveCheck> {
    vertex_levels(seq, depth).map(|(_, c)| c)
}

/// Per-vertex tables for a non-interactive sequence with content-one entries.
pub fn build_initial_hom_noninteractive<G: DenseTargetGroup>(
    seq: &PolySequence,
    g: &G,
    u: &G::Elem,
    depth: usize,
) -> Result<HomomorphismData<G::Elem>> {
    if !g.is_order_unit(u) {
        return Err(Error::Precondition(String::from("u is not an order unit")));
    }
    let (levels, check) = vertex_levels(seq, depth)?;
    if let Some((n, j, k, s)) = check.violation {
        return Err(Error::Precondition(format!("stage {n} interacts: {j} and {k} both reach {s}")));
    }
    let entries: Vec<LaurentPoly> = (1..=depth).map(|n| seq.entry(n)).collect::<Result<_>>()?;
    for (i, p) in entries.iter().enumerate() {
        let content = p.content()?;
        if !content.is_one() {
            return Err(Error::NotCoprime(format!("p_{} has content {content}", i + 1)));
        }
    }
    let mut table = vec![BTreeMap::from([(0i64, u.clone())])];
    for (n, p) in entries.iter().enumerate() {
        let (shifts, coeffs): (Vec<i64>, Vec<BigInt>) = p.terms().map(|(t, c)| (t, c.clone())).unzip();
        let mut level = BTreeMap::new();
        for &j in &levels[n] {
            let parts = decompose_gcd(g, &table[n][&j], &coeffs)?;
            for (t, v) in shifts.iter().zip(parts) {
                level.insert(j + t, v);
            }
        }
        table.push(level);
    }
    let h = HomomorphismData { entries, unit: u.clone(), table };
    h.verify(g)?;
    Ok(h)
}

/// Dense range for a non-interactive sequence: infinitely many entries with
/// every coefficient above one.
pub fn dense_range_verdict_noninteractive(seq: &PolySequence) -> TailVerdict {
    seq.infinitely_often(|p| p.terms().all(|(_, c)| *c > BigInt::one()))
}
