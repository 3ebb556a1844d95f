//! Groups `Z[x] + (1 − 2x)M` on `[1/3, 2/3]` for a rational module `M`
//! (`Q`, `√2·Z` or `Q[√2]`), with the strict ordering.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{rank, QSqrt2};
use crate::num::{rat, rint};
use crate::upoly::{one_minus_two_x, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// `Z[x] + (1 − 2x)Q`
    Q,
    /// `Z[x] + √2(1 − 2x)Z`
    Sqrt2Z,
    /// `Z[x] + (1 − 2x)Q[√2]`
    QSqrt2,
}

/// `g + q·(1 − 2x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedElement {
    pub g: LaurentPoly,
    pub q: QSqrt2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedModel {
    pub kind: ModelKind,
    pub lo: BigRational,
    pub hi: BigRational,
}

pub fn counterexample_model(kind: ModelKind) -> MixedModel {
    MixedModel { kind, lo: rat(1, 3), hi: rat(2, 3) }
}

/// Sign of `a + b√2`.
fn sign(v: &QSqrt2) -> Ordering {
    let (sa, sb) = (v.a.cmp(&BigRational::zero()), v.b.cmp(&BigRational::zero()));
    if sa == sb || sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    // Opposite signs: compare a² with 2b².
    match (&v.a * &v.a).cmp(&(rint(2) * &v.b * &v.b)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

fn sign_of(p: &UPoly, t: &BigRational) -> Ordering {
    p.eval(t).cmp(&BigRational::zero())
}

/// Exact decision of `A(t) + √2·B(t) > 0` on `[lo, hi]`. Any zero of the sum
/// is a zero of the norm `A² − 2B²`; at each such root the signs of `A` and
/// `B` decide whether the sum or its conjugate vanishes.
pub fn qsqrt2_positive_on(a: &UPoly, b: &UPoly, lo: &BigRational, hi: &BigRational) -> Result<bool> {
    if lo > hi {
        return Err(Error::InvalidInterval { lo: format!("{lo}"), hi: format!("{hi}") });
    }
    if b.is_zero() {
        return a.positive_on(lo, hi);
    }
    let at = |t: &BigRational| QSqrt2::new(a.eval(t), b.eval(t));
    if sign(&at(lo)) != Ordering::Greater {
        return Ok(false);
    }
    let norm = a.mul(a).sub(&b.mul(b).scale(&rint(2)));
    if norm.is_zero() {
        // A = ±√2 B is impossible for rational polynomials unless both vanish.
        return Ok(false);
    }
    let common = a.gcd(&norm);
    for mut iv in norm.isolate_roots(lo, hi) {
        if iv.is_exact() {
            if sign(&at(&iv.lo)) != Ordering::Greater {
                return Ok(false);
            }
            continue;
        }
        if common.degree().unwrap_or(0) > 0 && common.count_roots(&iv.lo, &iv.hi) > 0 {
            // A(r) = 0 forces B(r) = 0.
            return Ok(false);
        }
        let mut steps = 0;
        while a.count_roots(&iv.lo, &iv.hi) > 0 || b.count_roots(&iv.lo, &iv.hi) > 0 {
            norm.refine(&mut iv);
            steps += 1;
            if iv.is_exact() || steps > 4096 {
                break;
            }
        }
        let (sa, sb) = (sign_of(a, &iv.hi), sign_of(b, &iv.hi));
        if iv.is_exact() {
            if sign(&at(&iv.lo)) != Ordering::Greater {
                return Ok(false);
            }
        } else if sa != Ordering::Equal && sa == sb.reverse() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl MixedModel {
    /// Checks that `q` lies in the model's module and `g` in `Z[x]`.
    pub fn element(&self, g: LaurentPoly, q: QSqrt2) -> Result<MixedElement> {
        if g.min_exp().is_some_and(|k| k < 0) {
            return Err(Error::Precondition(String::from("integer part must be a polynomial")));
        }
        let ok = match self.kind {
            ModelKind::Q => q.b.is_zero(),
            ModelKind::Sqrt2Z => q.a.is_zero() && q.b.is_integer(),
            ModelKind::QSqrt2 => true,
        };
        if !ok {
            return Err(Error::Precondition(format!("coefficient {} + {}·√2 is not in the model", q.a, q.b)));
        }
        Ok(MixedElement { g, q })
    }

    /// The rational and `√2` parts as polynomials.
    fn parts(&self, e: &MixedElement) -> (UPoly, UPoly) {
        let (g, _) = e.g.to_upoly();
        let g = if let Some(k) = e.g.min_exp().filter(|k| *k > 0) {
            let mut c = vec![BigRational::zero(); k as usize];
            c.extend_from_slice(g.coeffs());
            UPoly::new(c)
        } else {
            g
        };
        let l = one_minus_two_x();
        (g.add(&l.scale(&e.q.a)), l.scale(&e.q.b))
    }

    pub fn eval(&self, e: &MixedElement, t: &BigRational) -> QSqrt2 {
        let (a, b) = self.parts(e);
        QSqrt2::new(a.eval(t), b.eval(t))
    }

    /// Strict positivity on the interval, exactly.
    pub fn is_strictly_positive(&self, e: &MixedElement) -> Result<bool> {
        let (a, b) = self.parts(e);
        qsqrt2_positive_on(&a, &b, &self.lo, &self.hi)
    }

    /// The `k`-th sample of a nonzero coefficient from the module.
    pub fn sample_coefficient(&self, k: usize) -> QSqrt2 {
        let k = k as i64 + 1;
        let s = if k % 2 == 0 { -1 } else { 1 };
        match self.kind {
            ModelKind::Q => QSqrt2::rational(rat(s * k, k + 1)),
            ModelKind::Sqrt2Z => QSqrt2::new(BigRational::zero(), rint(s * k)),
            ModelKind::QSqrt2 => QSqrt2::new(rat(s * k, k + 1), rat(1, k + 2)),
        }
    }

    /// Condition (a), every countable subgroup free, and its evidence.
    pub fn free_condition(&self) -> Result<(bool, String)> {
        match self.kind {
            ModelKind::Sqrt2Z => {
                // Z[x] ∩ √2(1 − 2x)Z = 0, so the group is free on x^i and √2(1 − 2x).
                Ok((true, String::from("free on {x^i} and √2(1 − 2x)")))
            }
            _ => {
                let base = self.element(LaurentPoly::from_dense(0, &[1, -2]), QSqrt2::rational(BigRational::zero()))?;
                for n in 2..=6i64 {
                    let part = self.element(LaurentPoly::zero(), QSqrt2::rational(rat(1, n)))?;
                    let t = rat(1, 5);
                    let lhs = self.eval(&part, &t);
                    let rhs = self.eval(&base, &t);
                    if QSqrt2::new(lhs.a * rint(n), lhs.b * rint(n)) != rhs {
                        return Err(Error::Verification(format!("(1 − 2x)/{n} check")));
                    }
                }
                Ok((false, String::from("(1 − 2x)/n lies in the group for every n: a nonzero divisible element")))
            }
        }
    }

    /// Condition (b), every finitely generated subgroup discrete, and its evidence.
    pub fn discrete_condition(&self) -> (bool, String) {
        match self.kind {
            ModelKind::Q => (
                true,
                String::from("coefficients on (1 − 2x) are rational, so any finite set spans a cyclic group there"),
            ),
            _ => {
                // 1 and √2 are rationally independent on the single line (1 − 2x)R.
                let rows = vec![vec![BigRational::one(), BigRational::zero()], vec![BigRational::zero(), BigRational::one()]];
                let r = rank(&rows);
                (false, format!("(1 − 2x) and √2(1 − 2x) have rank {r} on a line: not discrete"))
            }
        }
    }
}

/// Outcome of sampling the `(1 − 2x)` direction against the positive cone.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeMissReport {
    pub kind: ModelKind,
    pub samples: usize,
    /// Samples `q(1 − 2x)` that were strictly positive (should be none).
    pub positive_hits: Vec<QSqrt2>,
    pub unit_positive: bool,
    pub free: bool,
    pub discrete: bool,
    pub evidence: Vec<String>,
}

impl ConeMissReport {
    pub fn passed(&self) -> bool {
        let expected = match self.kind {
            ModelKind::Q => (false, true),
            ModelKind::Sqrt2Z => (true, false),
            ModelKind::QSqrt2 => (false, false),
        };
        self.positive_hits.is_empty() && self.unit_positive && (self.free, self.discrete) == expected
    }
}

pub fn positive_cone_miss_check(model: &MixedModel, samples: usize) -> Result<ConeMissReport> {
    let mut positive_hits = Vec::new();
    let half = rat(1, 2);
    for k in 0..samples {
        let q = model.sample_coefficient(k);
        let e = model.element(LaurentPoly::zero(), q.clone())?;
        let v = model.eval(&e, &half);
        if !(v.a.is_zero() && v.b.is_zero()) || model.is_strictly_positive(&e)? {
            positive_hits.push(q);
        }
    }
    let one = model.element(LaurentPoly::one(), QSqrt2::rational(BigRational::zero()))?;
    let unit_positive = model.is_strictly_positive(&one)?;
    let (free, fe) = model.free_condition()?;
    let (discrete, de) = model.discrete_condition();
    Ok(ConeMissReport { kind: model.kind, samples, positive_hits, unit_positive, free, discrete, evidence: vec![fe, de] })
}
