use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{fmt_rational, precision_for, round};

/// An approximately divisible ordered group with finitely many pure traces,
/// all computed exactly.
pub trait DenseTargetGroup {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    /// The default order unit.
    fn unit(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, k: &BigInt) -> Self::Elem;
    /// `a/k` when it lies in the group.
    fn div_exact(&self, a: &Self::Elem, k: &BigInt) -> Option<Self::Elem>;
    /// Values at the pure traces.
    fn traces(&self, a: &Self::Elem) -> Vec<BigRational>;
    /// A group element within `tol` (sup-norm, strictly) of `x`.
    fn approximate(&self, x: &Frac<Self::Elem>, tol: &BigRational) -> Result<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn norm(&self, a: &Self::Elem) -> BigRational {
        self.traces(a).into_iter().map(|t| t.abs()).max().unwrap_or_else(BigRational::zero)
    }

    fn is_order_unit(&self, a: &Self::Elem) -> bool {
        let t = self.traces(a);
        !t.is_empty() && t.iter().all(|v| v.is_positive())
    }
}

/// An element of `G ⊗ Q` written `num/den` with `den > 0`.
#[derive(Clone, Debug)]
pub struct Frac<E> {
    pub num: E,
    pub den: BigInt,
}

impl<E: Clone + PartialEq> Frac<E> {
    pub fn new(num: E, den: BigInt) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        Frac { num, den }
    }

    pub fn whole(num: E) -> Self {
        Frac { num, den: BigInt::one() }
    }

    pub fn add<G: DenseTargetGroup<Elem = E>>(&self, g: &G, o: &Self) -> Self {
        let num = g.add(&g.scale(&self.num, &o.den), &g.scale(&o.num, &self.den));
        Frac { num, den: &self.den * &o.den }
    }

    pub fn sub<G: DenseTargetGroup<Elem = E>>(&self, g: &G, o: &Self) -> Self {
        self.add(g, &o.scale(g, &-BigRational::one()))
    }

    pub fn scale<G: DenseTargetGroup<Elem = E>>(&self, g: &G, q: &BigRational) -> Self {
        let mut num = g.scale(&self.num, q.numer());
        let mut den = &self.den * q.denom();
        if den.is_negative() {
            num = g.neg(&num);
            den = -den;
        }
        Frac { num, den }
    }

    pub fn traces<G: DenseTargetGroup<Elem = E>>(&self, g: &G) -> Vec<BigRational> {
        let d = BigRational::from_integer(self.den.clone());
        g.traces(&self.num).into_iter().map(|t| t / &d).collect()
    }

    pub fn eq<G: DenseTargetGroup<Elem = E>>(&self, g: &G, o: &Self) -> bool {
        g.scale(&self.num, &o.den) == g.scale(&o.num, &self.den)
    }

    /// The element itself when it lies in `G`.
    pub fn to_elem<G: DenseTargetGroup<Elem = E>>(&self, g: &G) -> Option<E> {
        g.div_exact(&self.num, &self.den)
    }

    /// `max_τ |τ(self) − τ(o)|`.
    pub fn distance<G: DenseTargetGroup<Elem = E>>(&self, g: &G, o: &Self) -> BigRational {
        self.traces(g)
            .iter()
            .zip(o.traces(g))
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// `Z[1/p]^k` with the strict coordinatewise order and unit `(1, …, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicVectorGroup {
    pub dim: usize,
    pub base: BigInt,
}

impl DyadicVectorGroup {
    pub fn new(dim: usize, base: impl Into<BigInt>) -> Result<Self> {
        let base = base.into();
        if dim == 0 || base <= BigInt::one() {
            return Err(Error::Precondition(format!("need dim ≥ 1 and base ≥ 2, got {dim}, {base}")));
        }
        Ok(DyadicVectorGroup { dim, base })
    }

    fn admissible(&self, q: &BigRational) -> bool {
        let mut d = q.denom().clone();
        loop {
            if d.is_one() {
                return true;
            }
            let g = d.gcd(&self.base);
            if g.is_one() {
                return false;
            }
            d /= g;
        }
    }

    /// Validates a vector of `Z[1/p]` entries.
    pub fn element(&self, v: Vec<BigRational>) -> Result<Vec<BigRational>> {
        if v.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, found: v.len() });
        }
        if let Some(bad) = v.iter().find(|q| !self.admissible(q)) {
            return Err(Error::Precondition(format!("{} is not in Z[1/{}]", fmt_rational(bad), self.base)));
        }
        Ok(v)
    }

    pub fn constant(&self, q: BigRational) -> Result<Vec<BigRational>> {
        self.element(alloc::vec![q; self.dim])
    }
}

impl DenseTargetGroup for DyadicVectorGroup {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Self::Elem {
        alloc::vec![BigRational::zero(); self.dim]
    }

    fn unit(&self) -> Self::Elem {
        alloc::vec![BigRational::one(); self.dim]
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }

    fn scale(&self, a: &Self::Elem, k: &BigInt) -> Self::Elem {
        let k = BigRational::from_integer(k.clone());
        a.iter().map(|x| x * &k).collect()
    }

    fn div_exact(&self, a: &Self::Elem, k: &BigInt) -> Option<Self::Elem> {
        if k.is_zero() {
            return None;
        }
        let k = BigRational::from_integer(k.clone());
        let out: Vec<BigRational> = a.iter().map(|x| x / &k).collect();
        out.iter().all(|q| self.admissible(q)).then_some(out)
    }

    fn traces(&self, a: &Self::Elem) -> Vec<BigRational> {
        a.clone()
    }

    fn approximate(&self, x: &Frac<Self::Elem>, tol: &BigRational) -> Result<Self::Elem> {
        if !tol.is_positive() {
            return Err(Error::Precondition(String::from("tolerance must be positive")));
        }
        // Rounding to p^-e errs by at most p^-e/2 < tol.
        let e = precision_for(&(tol * BigRational::from_integer(2.into())), &self.base);
        let scale = BigRational::from_integer(num_traits::pow(self.base.clone(), e as usize));
        Ok(x.traces(self).iter().map(|t| BigRational::from_integer(round(&(t * &scale))) / &scale).collect())
    }

    fn render(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.iter().map(fmt_rational).collect();
        format!("({})", parts.join(", "))
    }
}
