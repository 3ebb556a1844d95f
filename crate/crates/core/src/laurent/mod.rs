//! Laurent polynomials with integer coefficients, the ring `Z[x, x⁻¹]`.

mod parse;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{fmt_rational, rint};
use crate::upoly::UPoly;

pub use parse::parse_laurent;

/// Finitely supported map exponent → nonzero integer coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

/// Isolated exponents of a polynomial: support points with both neighbours absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isolani {
    pub exponents: BTreeSet<i64>,
    /// `max Log f` is isolated.
    pub leading: bool,
    /// `min Log f` is isolated.
    pub terminal: bool,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        Self::from_terms([(k, c.into())])
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (k, c) in terms {
            *coeffs.entry(k).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }

    /// `Σ c[i] x^(shift + i)`.
    pub fn from_dense(shift: i64, c: &[i64]) -> Self {
        Self::from_terms(c.iter().enumerate().map(|(i, &v)| (shift + i as i64, BigInt::from(v))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(f, x^k)`.
    pub fn coeff(&self, k: i64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn log_set(&self) -> BTreeSet<i64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient at `min Log f`.
    pub fn terminal_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next()
    }

    /// Coefficient at `max Log f`.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Positive gcd of the nonzero coefficients.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c)))
    }

    /// `(x^(-min Log f)·f, -min Log f)`.
    pub fn normalize_min_zero(&self) -> Result<(LaurentPoly, i64)> {
        let m = self.min_exp().ok_or(Error::ZeroPolynomial)?;
        Ok((self.shift(-m), -m))
    }

    pub fn isolani(&self) -> Result<Isolani> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let exponents: BTreeSet<i64> = self
            .coeffs
            .keys()
            .copied()
            .filter(|&i| !self.coeffs.contains_key(&(i - 1)) && !self.coeffs.contains_key(&(i + 1)))
            .collect();
        let leading = exponents.contains(&self.max_exp().unwrap());
        let terminal = exponents.contains(&self.min_exp().unwrap());
        Ok(Isolani { exponents, leading, terminal })
    }

    /// Same support, every coefficient replaced by 1.
    pub fn flatten(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.keys().map(|&k| (k, BigInt::one())).collect() }
    }

    /// `x^k · f`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// `f / k` when every coefficient is divisible by `k`.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            coeffs.insert(*e, q);
        }
        Some(LaurentPoly { coeffs })
    }

    /// Exact quotient `f / g` in `Z[x, x⁻¹]`, if it exists.
    pub fn div_exact(&self, g: &LaurentPoly) -> Option<LaurentPoly> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let gmin = g.min_exp().unwrap();
        let gmax = g.max_exp().unwrap();
        let glead = g.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot: BTreeMap<i64, BigInt> = BTreeMap::new();
        // Peel off leading terms; the quotient support is bounded below by
        // min Log f - min Log g.
        let floor = self.min_exp().unwrap() - gmin;
        while let Some(top) = rem.max_exp() {
            let k = top - gmax;
            if k < floor {
                return None;
            }
            let (q, r) = rem.coeff(top).div_rem(&glead);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &g.shift(k).scale(&q);
            quot.insert(k, q);
        }
        Some(LaurentPoly { coeffs: quot })
    }

    /// All coefficients are `≥ 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact value at a rational point; negative exponents need `t ≠ 0`.
    pub fn eval(&self, t: &BigRational) -> Result<BigRational> {
        if t.is_zero() && self.min_exp().is_some_and(|m| m < 0) {
            return Err(Error::BadEvaluationPoint(fmt_rational(t)));
        }
        let mut s = BigRational::zero();
        for (k, c) in &self.coeffs {
            s += crate::num::pow(t, *k) * rint(c.clone());
        }
        Ok(s)
    }

    /// `(x^(-min Log f)·f, min Log f)` as a dense rational polynomial.
    pub fn to_upoly(&self) -> (UPoly, i64) {
        let Some(m) = self.min_exp() else {
            return (UPoly::zero(), 0);
        };
        let d = (self.max_exp().unwrap() - m) as usize;
        let mut c = alloc::vec![BigRational::zero(); d + 1];
        for (k, v) in &self.coeffs {
            c[(k - m) as usize] = rint(v.clone());
        }
        (UPoly::new(c), m)
    }

    /// Exact decision of `f(t) > 0` on `[a, b]` for `0 < a < b`.
    pub fn strictly_positive_on_interval(&self, a: &BigRational, b: &BigRational) -> Result<bool> {
        if !a.is_positive() || a >= b {
            return Err(Error::InvalidInterval { lo: fmt_rational(a), hi: fmt_rational(b) });
        }
        // x^k > 0 on the interval, so the shift does not change signs.
        self.to_upoly().0.positive_on(a, b)
    }
}

/// Functional form of [`LaurentPoly::log_set`].
pub fn log_set(f: &LaurentPoly) -> BTreeSet<i64> {
    f.log_set()
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if *k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match *k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl core::str::FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_laurent(s)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &o.coeffs {
            *coeffs.entry(*k).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &o.coeffs {
            *coeffs.entry(*k).or_default() -= c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                *coeffs.entry(i + j).or_default() += a * b;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: &LaurentPoly) -> LaurentPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl core::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

impl From<Vec<(i64, i64)>> for LaurentPoly {
    fn from(v: Vec<(i64, i64)>) -> Self {
        Self::from_terms(v.into_iter().map(|(k, c)| (k, BigInt::from(c))))
    }
}

#[cfg(test)]
mod tests;
