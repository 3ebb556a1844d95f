//! Direct limits of ordered groups: the polynomial limit `R(p_i)` and
//! limits of integer matrix systems.
//!
//! An element of `R(p_i)` is written `[f, n] = f/Q_n` with
//! `Q_n = p_1···p_n` and `Log f ⊆ Log Q_n`. Positivity in the limit is only
//! semi-decidable, so [`LimitGroup::is_positive`] searches for a stage where
//! the numerator becomes coefficientwise nonnegative and looks for a
//! negative trace value to refute.

mod matrix;
mod sequence;
mod verdict;

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use spin::RwLock;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub use matrix::{Matrix, MatrixSystem};
pub use sequence::{PolySequence, Tail, TailVerdict};
pub use verdict::{Certificate, Truth, Verdict};

/// Default stage cap for positivity searches.
pub const DEFAULT_STAGE_CAP: usize = 64;
/// Default multiplier cap for order-unit searches.
pub const DEFAULT_MULT_CAP: u64 = 1 << 16;

/// The element `f/Q_stage`. Values produced by [`LimitGroup::make_element`]
/// are canonical: `stage` is minimal, so structural equality is equality in
/// the limit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RElement {
    pub f: LaurentPoly,
    pub stage: usize,
}

/// First multipliers of an endpoint trace range `lim ×m_i : Z → Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRange {
    pub multipliers: Vec<BigInt>,
    /// The range is noncyclic (dense) iff some multiplier exceeds 1 infinitely often.
    pub dense: TailVerdict,
}

/// The dimension group `R(p_i)`.
pub struct LimitGroup {
    seq: PolySequence,
    q_cache: RwLock<Vec<LaurentPoly>>,
}

impl Clone for LimitGroup {
    fn clone(&self) -> Self {
        LimitGroup { seq: self.seq.clone(), q_cache: RwLock::new(self.q_cache.read().clone()) }
    }
}

impl core::fmt::Debug for LimitGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("LimitGroup").field("seq", &self.seq).finish()
    }
}

impl LimitGroup {
    pub fn new(seq: PolySequence) -> Self {
        LimitGroup { seq, q_cache: RwLock::new(alloc::vec![LaurentPoly::one()]) }
    }

    pub fn sequence(&self) -> &PolySequence {
        &self.seq
    }

    /// `Q_n = p_1···p_n`, with `Q_0 = 1`.
    pub fn q_product(&self, n: usize) -> Result<LaurentPoly> {
        if let Some(q) = self.q_cache.read().get(n) {
            return Ok(q.clone());
        }
        let mut cache = self.q_cache.write();
        while cache.len() <= n {
            let k = cache.len();
            let next = cache.last().unwrap() * &self.seq.entry(k)?;
            cache.push(next);
        }
        Ok(cache[n].clone())
    }

    /// `p_{from+1}···p_to`.
    pub fn connecting_product(&self, from: usize, to: usize) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::one();
        for i in from + 1..=to {
            p = p * self.seq.entry(i)?;
        }
        Ok(p)
    }

    fn check_support(&self, f: &LaurentPoly, n: usize) -> Result<()> {
        let q = self.q_product(n)?;
        if f.terms().all(|(k, _)| !q.coeff(k).is_zero()) {
            Ok(())
        } else {
            Err(Error::Membership { stage: n })
        }
    }

    /// `[f, n]` in canonical form.
    pub fn make_element(&self, f: LaurentPoly, n: usize) -> Result<RElement> {
        self.check_support(&f, n)?;
        Ok(self.canonicalize(RElement { f, stage: n }))
    }

    /// `[f, n]` exactly as given (support is still checked).
    pub fn raw_element(&self, f: LaurentPoly, n: usize) -> Result<RElement> {
        self.check_support(&f, n)?;
        Ok(RElement { f, stage: n })
    }

    fn canonicalize(&self, mut e: RElement) -> RElement {
        if e.f.is_zero() {
            e.stage = 0;
            return e;
        }
        while e.stage > 0 {
            let Ok(p) = self.seq.entry(e.stage) else { break };
            let Some(g) = e.f.div_exact(&p) else { break };
            if self.check_support(&g, e.stage - 1).is_err() {
                break;
            }
            e = RElement { f: g, stage: e.stage - 1 };
        }
        e
    }

    pub fn zero(&self) -> RElement {
        RElement { f: LaurentPoly::zero(), stage: 0 }
    }

    /// The order unit `[1, 0]`.
    pub fn one(&self) -> RElement {
        RElement { f: LaurentPoly::one(), stage: 0 }
    }

    /// Numerator of `e` at a later stage `m`.
    pub fn lift(&self, e: &RElement, m: usize) -> Result<LaurentPoly> {
        if m < e.stage {
            return Err(Error::Precondition(String::from("cannot lift to an earlier stage")));
        }
        Ok(&e.f * &self.connecting_product(e.stage, m)?)
    }

    pub fn elem_equal(&self, a: &RElement, b: &RElement) -> Result<bool> {
        let m = a.stage.max(b.stage);
        Ok(self.lift(a, m)? == self.lift(b, m)?)
    }

    pub fn add(&self, a: &RElement, b: &RElement) -> Result<RElement> {
        let m = a.stage.max(b.stage);
        self.make_element(self.lift(a, m)? + self.lift(b, m)?, m)
    }

    pub fn sub(&self, a: &RElement, b: &RElement) -> Result<RElement> {
        let m = a.stage.max(b.stage);
        self.make_element(self.lift(a, m)? - self.lift(b, m)?, m)
    }

    pub fn neg(&self, a: &RElement) -> RElement {
        RElement { f: -&a.f, stage: a.stage }
    }

    pub fn scale(&self, a: &RElement, k: &BigInt) -> RElement {
        if k.is_zero() {
            return self.zero();
        }
        RElement { f: a.f.scale(k), stage: a.stage }
    }

    /// `f(t)/Q_n(t)` for `t > 0`.
    pub fn trace_point(&self, e: &RElement, t: &BigRational) -> Result<BigRational> {
        if !t.is_positive() {
            return Err(Error::BadEvaluationPoint(crate::num::fmt_rational(t)));
        }
        Ok(e.f.eval(t)? / self.q_product(e.stage)?.eval(t)?)
    }

    /// `τ₀`: ratio of the coefficients at `min Log Q_n`.
    pub fn trace_zero(&self, e: &RElement) -> Result<BigRational> {
        let q = self.q_product(e.stage)?;
        let k = q.min_exp().unwrap();
        Ok(BigRational::new(e.f.coeff(k), q.coeff(k)))
    }

    /// `τ∞`: ratio of the coefficients at `max Log Q_n`.
    pub fn trace_infty(&self, e: &RElement) -> Result<BigRational> {
        let q = self.q_product(e.stage)?;
        let k = q.max_exp().unwrap();
        Ok(BigRational::new(e.f.coeff(k), q.coeff(k)))
    }

    /// Multipliers `(p_i, x^0)` of the `τ₀` range, normalized entries.
    pub fn trace_range_zero(&self, n: usize) -> Result<TraceRange> {
        let multipliers = self
            .seq
            .first_normalized(n)?
            .iter()
            .map(|p| p.terminal_coeff().unwrap().clone())
            .collect();
        let dense = self.seq.infinitely_often(|p| *p.terminal_coeff().unwrap() > BigInt::one());
        Ok(TraceRange { multipliers, dense })
    }

    /// Multipliers `(p_i, x^{d_i})` of the `τ∞` range.
    pub fn trace_range_infty(&self, n: usize) -> Result<TraceRange> {
        let multipliers = self
            .seq
            .first_normalized(n)?
            .iter()
            .map(|p| p.leading_coeff().unwrap().clone())
            .collect();
        let dense = self.seq.infinitely_often(|p| *p.leading_coeff().unwrap() > BigInt::one());
        Ok(TraceRange { multipliers, dense })
    }

    /// True iff `e` is zero; a nonzero Laurent polynomial has a nonzero
    /// value at some positive rational, so there are no infinitesimals.
    pub fn infinitesimal_test(&self, e: &RElement) -> bool {
        e.f.is_zero()
    }

    /// A trace of `e` that is negative (or `≤ 0` when `allow_zero`).
    fn trace_witness(&self, e: &RElement, allow_zero: bool) -> Result<Option<Certificate>> {
        let bad = |v: &BigRational| v.is_negative() || (allow_zero && v.is_zero());
        let t0 = self.trace_zero(e)?;
        if bad(&t0) {
            return Ok(Some(Certificate::TerminalTrace { value: t0 }));
        }
        let ti = self.trace_infty(e)?;
        if bad(&ti) {
            return Ok(Some(Certificate::LeadingTrace { value: ti }));
        }
        let (g, _) = e.f.to_upoly();
        let (probes, roots) = g.positive_axis_probes();
        for t in probes {
            let v = self.trace_point(e, &t)?;
            if bad(&v) {
                return Ok(Some(Certificate::PointTrace { t, value: v }));
            }
        }
        if allow_zero {
            if let Some(t) = roots.into_iter().next() {
                return Ok(Some(Certificate::PointTrace { t, value: BigRational::zero() }));
            }
        }
        Ok(None)
    }

    /// Smallest `k` in `n..=cap` with `f·p_{n+1}···p_k ≥ 0` coefficientwise.
    fn nonnegative_stage(&self, f: &LaurentPoly, n: usize, cap: usize) -> Result<Option<(usize, LaurentPoly)>> {
        let mut prod = f.clone();
        let mut k = n;
        loop {
            if prod.is_nonnegative() {
                return Ok(Some((k, prod)));
            }
            if k >= cap || self.seq.available().is_some_and(|a| k >= a) {
                return Ok(None);
            }
            k += 1;
            prod = prod * self.seq.entry(k)?;
        }
    }

    /// Capped semi-decision of `e ≥ 0` in the limit.
    pub fn is_positive(&self, e: &RElement, cap: usize) -> Result<Verdict> {
        if e.f.is_zero() {
            return Ok(Verdict::yes(Certificate::Stage { stage: e.stage, product: LaurentPoly::zero() }));
        }
        if let Some(c) = self.trace_witness(e, false)? {
            return Ok(Verdict::no(c));
        }
        Ok(match self.nonnegative_stage(&e.f, e.stage, cap)? {
            Some((stage, product)) => Verdict::yes(Certificate::Stage { stage, product }),
            None => Verdict::unknown(cap, None),
        })
    }

    /// Capped semi-decision of "`e` is an order unit": `m·e − 1 ≥ 0` for some `m`.
    pub fn is_order_unit(&self, e: &RElement, mult_cap: &BigInt, stage_cap: usize) -> Result<Verdict> {
        if e.f.is_zero() {
            return Ok(Verdict::no(Certificate::ZeroElement));
        }
        if let Some(c) = self.trace_witness(e, true)? {
            return Ok(Verdict::no(c));
        }
        let q = self.q_product(e.stage)?;
        let mut m = BigInt::one();
        loop {
            let g = &e.f.scale(&m) - &q;
            if let Some((stage, product)) = self.nonnegative_stage(&g, e.stage, stage_cap)? {
                return Ok(Verdict::yes(Certificate::Multiplier { multiplier: m, stage, product }));
            }
            if m >= *mult_cap {
                return Ok(Verdict::unknown(stage_cap, Some(mult_cap.clone())));
            }
            m = (&m * 2u32).min(mult_cap.clone());
        }
    }

    /// Re-checks a positivity or order-unit certificate exactly.
    pub fn verify_certificate(&self, e: &RElement, v: &Verdict) -> Result<bool> {
        Ok(match (&v.value, &v.certificate) {
            (Truth::True, Certificate::Stage { stage, product }) => {
                *stage >= e.stage && product.is_nonnegative() && self.lift(e, *stage)? == *product
            }
            (Truth::True, Certificate::Multiplier { multiplier, stage, product }) => {
                let g = &e.f.scale(multiplier) - &self.q_product(e.stage)?;
                *stage >= e.stage
                    && product.is_nonnegative()
                    && &g * &self.connecting_product(e.stage, *stage)? == *product
            }
            (Truth::False, Certificate::TerminalTrace { value }) => {
                *value == self.trace_zero(e)? && !value.is_positive()
            }
            (Truth::False, Certificate::LeadingTrace { value }) => {
                *value == self.trace_infty(e)? && !value.is_positive()
            }
            (Truth::False, Certificate::PointTrace { t, value }) => {
                *value == self.trace_point(e, t)? && !value.is_positive()
            }
            (Truth::False, Certificate::ZeroElement) => e.f.is_zero(),
            (Truth::Unknown, Certificate::Cap { .. }) => true,
            _ => false,
        })
    }

    /// Cross-multiplied integer form of `τ(e)` over several sample points.
    pub fn point_traces(&self, e: &RElement, ts: &[BigRational]) -> Result<Vec<BigRational>> {
        ts.iter().map(|t| self.trace_point(e, t)).collect()
    }

    /// Unit helper used by other modules: `[x^j, n]` for `j ∈ Log Q_n`.
    pub fn monomial(&self, j: i64, n: usize) -> Result<RElement> {
        self.raw_element(LaurentPoly::monomial(1, j), n)
    }

    /// Integer combination of elements.
    pub fn combine(&self, terms: &[(BigInt, RElement)]) -> Result<RElement> {
        let m = terms.iter().map(|(_, e)| e.stage).max().unwrap_or(0);
        let mut f = LaurentPoly::zero();
        for (c, e) in terms {
            f = f + self.lift(e, m)?.scale(c);
        }
        self.make_element(f, m)
    }
}

#[cfg(test)]
mod tests;
