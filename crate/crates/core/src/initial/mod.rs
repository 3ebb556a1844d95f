//! Constructive maps out of `R(p_i)` into approximately divisible targets:
//! splitting order units, exact chain systems and their integerization, and
//! the stage-by-stage homomorphism tables.

mod chain;
mod hom;
mod target;


pub use chain::{chain_apply, chain_nullspace, integerize_chain, solve_chain_bounded, solve_chain_rational, BoundedChain};
pub use hom::{
    build_initial_hom, build_initial_hom_noninteractive, dense_range_verdict_noninteractive, hom_apply, hom_apply_at,
    noninteractive_check, phi_norm_bound_check, BinomialSequence, HomomorphismData, NonInteractiveCheck, NormBoundReport,
};
pub use target::{DenseTargetGroup, DyadicVectorGroup, Frac};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{mod_inverse, rint};

/// Retry cap for every approximation-driven construction.
pub const RETRY_CAP: u32 = 40;

/// `max_τ |τ(x) − c·τ(u)|`.
pub fn deviation<G: DenseTargetGroup>(g: &G, x: &G::Elem, c: &BigRational, u: &G::Elem) -> BigRational {
    g.traces(x)
        .iter()
        .zip(g.traces(u))
        .map(|(a, b)| (a - c * b).abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// `h ≡ x (mod kG)` with `‖h‖ < eps`: `h = x − k·z` for `z` close to `x/k`.
pub fn small_coset_rep<G: DenseTargetGroup>(g: &G, x: &G::Elem, k: &BigInt, eps: &BigRational) -> Result<G::Elem> {
    if !k.is_positive() || !eps.is_positive() {
        return Err(Error::Precondition(String::from("need k > 0 and eps > 0")));
    }
    let mut tol = eps / BigRational::from_integer(k.clone());
    for _ in 0..RETRY_CAP {
        let z = g.approximate(&Frac::new(x.clone(), k.clone()), &tol)?;
        let h = g.sub(x, &g.scale(&z, k));
        if g.norm(&h) < *eps && g.div_exact(&g.sub(x, &h), k).is_some() {
            return Ok(h);
        }
        tol /= rint(2);
    }
    Err(Error::ApproximationExhausted { attempts: RETRY_CAP, detail: format!("coset representative mod {k}") })
}

/// Order units `v, w` with `u = p·v + q·w`, `‖v − (r/p)u‖ < eps/p` and
/// `‖w − ((1−r)/q)u‖ < eps/q`.
pub fn split_unit<G: DenseTargetGroup>(
    g: &G,
    u: &G::Elem,
    p: &BigInt,
    q: &BigInt,
    r: &BigRational,
    eps: &BigRational,
) -> Result<(G::Elem, G::Elem)> {
    if !p.is_positive() || !q.is_positive() {
        return Err(Error::Precondition(String::from("p and q must be positive")));
    }
    if !p.gcd(q).is_one() {
        return Err(Error::NotCoprime(format!("gcd({p}, {q}) = {}", p.gcd(q))));
    }
    let one = BigRational::one();
    if !r.is_positive() || *r > one || !eps.is_positive() {
        return Err(Error::Precondition(format!("need 0 < r ≤ 1 and eps > 0, got r = {r}")));
    }
    if !g.is_order_unit(u) {
        return Err(Error::Precondition(String::from("u is not an order unit")));
    }
    if *r < BigRational::new(1.into(), 2.into()) {
        let (w, v) = split_unit(g, u, q, p, &(&one - r), eps)?;
        return Ok((v, w));
    }
    let tr = g.traces(u);
    let (m, big) = (tr.iter().min().unwrap().clone(), tr.iter().max().unwrap().clone());
    let k = if q.is_one() { BigInt::one() } else { mod_inverse(&p.mod_floor(q), q).unwrap() };
    let t = (p * &k - 1) / q;
    let (pr, qr) = (BigRational::from_integer(p.clone()), BigRational::from_integer(q.clone()));
    let mut e = eps.clone().min(big.clone());
    for _ in 0..RETRY_CAP {
        let rc = if r.is_one() { &one - &e / (rint(2) * &big) } else { r.clone() };
        let zeta = (BigRational::from_integer(k.clone()) - &rc / &pr) / &qr;
        let target = Frac::new(g.scale(u, zeta.numer()), zeta.denom().clone());
        let tol = &e * &m / (rint(8) * &big * &pr * &qr);
        let z = g.approximate(&target, &tol)?;
        let v = g.sub(&g.scale(u, &k), &g.scale(&z, q));
        let w = g.sub(&g.scale(&z, p), &g.scale(u, &t));
        let ok = g.add(&g.scale(&v, p), &g.scale(&w, q)) == *u
            && g.is_order_unit(&v)
            && g.is_order_unit(&w)
            && deviation(g, &v, &(r / &pr), u) < eps / &pr
            && deviation(g, &w, &((&one - r) / &qr), u) < eps / &qr;
        if ok {
            return Ok((v, w));
        }
        e /= rint(2);
    }
    Err(Error::ApproximationExhausted { attempts: RETRY_CAP, detail: format!("split by ({p}, {q})") })
}

/// Order units `v_i` with `U = Σ p_i v_i` for positive `p_i` with gcd 1.
pub fn decompose_gcd<G: DenseTargetGroup>(g: &G, big_u: &G::Elem, ps: &[BigInt]) -> Result<Vec<G::Elem>> {
    if ps.is_empty() || ps.iter().any(|p| !p.is_positive()) {
        return Err(Error::Precondition(String::from("need a nonempty list of positive integers")));
    }
    if ps.len() == 1 {
        return if ps[0].is_one() {
            Ok(vec![big_u.clone()])
        } else {
            Err(Error::NotCoprime(format!("gcd = {}", ps[0])))
        };
    }
    let q = ps[1..].iter().fold(BigInt::zero(), |acc, p| acc.gcd(p));
    let r = BigRational::new(BigInt::one(), BigInt::from(ps.len()));
    let (v, w) = split_unit(g, big_u, &ps[0], &q, &r, &BigRational::new(1.into(), 2.into()))?;
    let rest: Vec<BigInt> = ps[1..].iter().map(|p| p / &q).collect();
    let mut out = vec![v];
    out.extend(decompose_gcd(g, &w, &rest)?);
    let sum = out.iter().zip(ps).fold(g.zero(), |acc, (v, p)| g.add(&acc, &g.scale(v, p)));
    if sum != *big_u {
        return Err(Error::Verification(String::from("gcd decomposition does not sum to U")));
    }
    Ok(out)
}

/// `g` as an integer combination of order units of norm `< 1/n`.
pub fn small_order_unit_decomposition<G: DenseTargetGroup>(
    g: &G,
    x: &G::Elem,
    n: u64,
) -> Result<Vec<(BigInt, G::Elem)>> {
    if n == 0 || !g.is_order_unit(x) {
        return Err(Error::Precondition(String::from("need n ≥ 1 and an order unit")));
    }
    let limit = BigRational::new(BigInt::one(), BigInt::from(n));
    if g.norm(x) < limit {
        return Ok(vec![(BigInt::one(), x.clone())]);
    }
    // p, q > n‖x‖, coprime; halves of x are then below 1/n.
    let p = crate::num::floor(&(g.norm(x) * rint(n as i64))) + 1;
    let q = &p + 1;
    let half = BigRational::new(1.into(), 2.into());
    let m = g.traces(x).into_iter().min().unwrap();
    let (y, z) = split_unit(g, x, &p, &q, &half, &(m / rint(4)))?;
    let out = vec![(p, y), (q, z)];
    let sum = out.iter().fold(g.zero(), |acc, (c, e)| g.add(&acc, &g.scale(e, c)));
    if sum != *x || out.iter().any(|(_, e)| !g.is_order_unit(e) || g.norm(e) >= limit) {
        return Err(Error::Verification(String::from("small order unit decomposition")));
    }
    Ok(out)
}
