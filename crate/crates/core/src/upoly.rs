//! Dense univariate polynomials over the rationals, with Sturm-sequence root
//! isolation. Used for exact sign decisions on intervals and on `(0, ∞)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{fmt_rational, rat, rint};

/// Polynomial `Σ c[i] xⁱ`. Trailing zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<BigRational>,
}

/// A half-open interval `(lo, hi]` holding exactly one root, or the exact
/// root `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

impl UPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| rint(v)).collect())
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(q: BigRational) -> Self {
        Self::new(vec![q])
    }

    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    /// Coefficient of `xⁱ` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.c.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * t + a;
        }
        acc
    }

    /// Fast inexact evaluation.
    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for a in self.c.iter().rev() {
            acc = acc * t + crate::num::to_f64(a);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * rint(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        let lc = d.lead().clone();
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &lc;
            if !f.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &f * dj;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead().recip();
        a.scale(&l)
    }

    /// Same roots, all simple.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Sturm chain `p, p', -rem(p, p'), …`.
    pub fn sturm_chain(&self) -> Vec<UPoly> {
        let mut chain = vec![self.clone()];
        if self.is_zero() {
            return chain;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = chain.last().unwrap().div_rem(&next).1;
            chain.push(next);
            next = r.scale(&-BigRational::one());
        }
        chain
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let sf = self.square_free();
        let chain = sf.sturm_chain();
        sign_changes(&chain, a).saturating_sub(sign_changes(&chain, b))
    }

    /// Isolating intervals for the distinct roots in `(lo, hi]`, sorted.
    pub fn isolate_roots(&self, lo: &BigRational, hi: &BigRational) -> Vec<RootInterval> {
        let mut out = Vec::new();
        if self.is_zero() || lo >= hi {
            return out;
        }
        let sf = self.square_free();
        let chain = sf.sturm_chain();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((l, h)) = stack.pop() {
            let n = sign_changes(&chain, &l).saturating_sub(sign_changes(&chain, &h));
            if n == 0 {
                continue;
            }
            if n == 1 {
                if sf.eval(&h).is_zero() {
                    out.push(RootInterval { lo: h.clone(), hi: h });
                } else {
                    out.push(RootInterval { lo: l, hi: h });
                }
                continue;
            }
            let m = (&l + &h) / rint(2);
            stack.push((m.clone(), h));
            stack.push((l, m));
        }
        out.sort_by(|x, y| x.hi.cmp(&y.hi));
        out
    }

    /// Shrinks a non-exact isolating interval by one bisection step.
    pub fn refine(&self, iv: &mut RootInterval) {
        if iv.is_exact() {
            return;
        }
        let sf = self.square_free();
        let m = (&iv.lo + &iv.hi) / rint(2);
        let vm = sf.eval(&m);
        if vm.is_zero() {
            iv.lo = m.clone();
            iv.hi = m;
            return;
        }
        let vh = sf.eval(&iv.hi);
        if (vm.is_positive() && vh.is_negative()) || (vm.is_negative() && vh.is_positive()) {
            iv.lo = m;
        } else if sf.count_roots(&iv.lo, &m) == 1 {
            iv.hi = m;
        } else {
            iv.lo = m;
        }
    }

    /// Exact decision of `p(t) > 0` for every `t ∈ [a, b]`.
    pub fn positive_on(&self, a: &BigRational, b: &BigRational) -> Result<bool> {
        if a > b {
            return Err(Error::InvalidInterval { lo: fmt_rational(a), hi: fmt_rational(b) });
        }
        if self.is_zero() {
            return Ok(false);
        }
        Ok(self.eval(a).is_positive() && self.count_roots(a, b) == 0)
    }

    /// Strict upper bound on the absolute value of every real root.
    pub fn cauchy_bound(&self) -> BigRational {
        let Some(d) = self.degree() else {
            return BigRational::one();
        };
        let lc = self.lead().abs();
        let m = self.c[..d].iter().map(|a| a.abs() / &lc).max().unwrap_or_else(BigRational::zero);
        BigRational::one() + m
    }

    /// Bound on `sup |p|` over `[a, b]` from the coefficients.
    pub fn coefficient_sup_bound(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let m = a.abs().max(b.abs());
        let mut pw = BigRational::one();
        let mut s = BigRational::zero();
        for c in &self.c {
            s += c.abs() * &pw;
            pw *= &m;
        }
        s
    }

    /// Rational points of `(0, ∞)` separating the positive roots, so that the
    /// sign of `p` on `(0, ∞)` is determined by its values there and at the
    /// exact roots. Returns `(sample points, exact roots)`.
    pub fn positive_axis_probes(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        if self.is_zero() {
            return (vec![BigRational::one()], Vec::new());
        }
        let bound = self.cauchy_bound() + BigRational::one();
        let mut ivs = self.isolate_roots(&BigRational::zero(), &bound);
        let mut probes = Vec::new();
        let mut exact = Vec::new();
        if ivs.is_empty() {
            probes.push(BigRational::one());
            return (probes, exact);
        }
        for iv in ivs.iter_mut() {
            if let Some(r) = self.rational_root_in(iv) {
                iv.lo = r.clone();
                iv.hi = r;
            }
        }
        while !ivs[0].is_exact() && ivs[0].lo.is_zero() {
            self.refine(&mut ivs[0]);
        }
        probes.push(&ivs[0].lo / rint(2));
        for i in 0..ivs.len() - 1 {
            while ivs[i].hi >= ivs[i + 1].lo {
                if ivs[i + 1].is_exact() {
                    self.refine(&mut ivs[i]);
                } else {
                    self.refine(&mut ivs[i + 1]);
                }
            }
            probes.push((&ivs[i].hi + &ivs[i + 1].lo) / rint(2));
        }
        probes.push(bound);
        for iv in &ivs {
            if iv.is_exact() {
                exact.push(iv.lo.clone());
            }
        }
        (probes, exact)
    }

    /// The rational root inside a non-exact isolating interval, if the root
    /// is rational. A rational root `r/s` of the primitive square-free part
    /// has `s` dividing its leading coefficient `L`, and distinct such
    /// fractions are at least `1/L²` apart, so after shrinking the interval
    /// below that width the only candidate is the simplest fraction in it.
    pub fn rational_root_in(&self, iv: &RootInterval) -> Option<BigRational> {
        if iv.is_exact() {
            return Some(iv.lo.clone());
        }
        let sf = self.square_free();
        let ints = sf.to_integer_coeffs();
        let lead = ints.last()?.abs();
        let width = BigRational::new(BigInt::one(), &lead * &lead);
        let mut w = iv.clone();
        while &w.hi - &w.lo >= width {
            self.refine(&mut w);
            if w.is_exact() {
                return Some(w.lo);
            }
        }
        let c = simplest_rational(&w.lo, &w.hi);
        (c > w.lo && c <= w.hi && sf.eval(&c).is_zero()).then_some(c)
    }

    /// Some rational `t > 0` with `p(t) < 0`, if one exists.
    pub fn negative_point_on_positive_axis(&self) -> Option<BigRational> {
        let (probes, _) = self.positive_axis_probes();
        probes.into_iter().find(|t| self.eval(t).is_negative())
    }

    /// Clears denominators: returns a primitive integer polynomial with the
    /// same roots and the same sign.
    pub fn to_integer_coeffs(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for a in &self.c {
            l = num_integer::lcm(l, a.denom().clone());
        }
        self.c.iter().map(|a| (a * rint(l.clone())).to_integer()).collect()
    }
}

fn sign_changes(chain: &[UPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (neg, mag) = (a.is_negative(), a.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show = i == 0 || !mag.is_one();
            if show {
                write!(f, "{}", fmt_rational(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show { "*" } else { "" })?,
                _ => write!(f, "{}x^{}", if show { "*" } else { "" }, i)?,
            }
        }
        Ok(())
    }
}

/// The fraction with the smallest denominator in `[a, b]`, `0 ≤ a ≤ b`.
pub fn simplest_rational(a: &BigRational, b: &BigRational) -> BigRational {
    let fl = crate::num::floor(a);
    let fl_q = BigRational::from_integer(fl.clone());
    if fl_q == *a {
        return fl_q;
    }
    let next = BigRational::from_integer(fl + 1);
    if next <= *b {
        return next;
    }
    let inner = simplest_rational(&(b - &fl_q).recip(), &(a - &fl_q).recip());
    fl_q + inner.recip()
}

/// `n` equally spaced rationals from `a` to `b` inclusive (`n ≥ 2`).
pub fn grid(a: &BigRational, b: &BigRational, n: usize) -> Vec<BigRational> {
    let n = n.max(2);
    let step = (b - a) / rint((n - 1) as i64);
    (0..n).map(|i| a + &step * rint(i as i64)).collect()
}

/// The polynomial `1 - 2x` used by several models.
pub fn one_minus_two_x() -> UPoly {
    UPoly::new(vec![rat(1, 1), rat(-2, 1)])
}
