use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::target::{DenseTargetGroup, Frac};
use super::{small_coset_rep, RETRY_CAP};
use crate::error::{Error, Result};
use crate::num::{mod_inverse, rint};

/// `max_τ |τ(x)/τ(r) − c|`: the sup-norm distance of `x̂` from `c` when states
/// are normalized at `r`.
pub(crate) fn relative_deviation<G: DenseTargetGroup>(
    g: &G,
    x: &Frac<G::Elem>,
    c: &BigRational,
    reference: &G::Elem,
) -> BigRational {
    x.traces(g)
        .iter()
        .zip(g.traces(reference))
        .map(|(t, r)| (t / r - c).abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Rows `b·x_i + a·x_{i+1}` of the band system.
pub fn chain_apply<G: DenseTargetGroup>(g: &G, a: &BigInt, b: &BigInt, x: &[Frac<G::Elem>]) -> Vec<Frac<G::Elem>> {
    let (ar, br) = (BigRational::from_integer(a.clone()), BigRational::from_integer(b.clone()));
    x.windows(2).map(|w| w[0].scale(g, &br).add(g, &w[1].scale(g, &ar))).collect()
}

/// The nullspace generator `(1, −b/a, …, (−b/a)^n)`.
pub fn chain_nullspace(a: &BigInt, b: &BigInt, n: usize) -> Vec<BigRational> {
    let ratio = BigRational::new(-b.clone(), a.clone());
    let mut out = vec![BigRational::one()];
    for i in 0..n {
        let next = &out[i] * &ratio;
        out.push(next);
    }
    out
}

fn check_ab(a: &BigInt, b: &BigInt) -> Result<()> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Precondition(format!("need a, b ≥ 1, got {a}, {b}")));
    }
    Ok(())
}

fn verify_rows<G: DenseTargetGroup>(
    g: &G,
    a: &BigInt,
    b: &BigInt,
    x: &[Frac<G::Elem>],
    u: &[Frac<G::Elem>],
) -> bool {
    let rows = chain_apply(g, a, b, x);
    rows.len() == u.len() && rows.iter().zip(u).all(|(r, u)| r.eq(g, u))
}

/// The solution of `A·X = U` in `G ⊗ Q` with the given `x_0`.
pub fn solve_chain_rational<G: DenseTargetGroup>(
    g: &G,
    a: &BigInt,
    b: &BigInt,
    u: &[Frac<G::Elem>],
    x0: &Frac<G::Elem>,
) -> Result<Vec<Frac<G::Elem>>> {
    check_ab(a, b)?;
    let inv_a = BigRational::new(BigInt::one(), a.clone());
    let br = BigRational::from_integer(b.clone());
    let mut x = vec![x0.clone()];
    for ui in u {
        let last = x.last().unwrap();
        let next = ui.sub(g, &last.scale(g, &br)).scale(g, &inv_a);
        x.push(next);
    }
    if !verify_rows(g, a, b, &x, u) {
        return Err(Error::Verification(String::from("rational chain solution")));
    }
    Ok(x)
}

/// A rational chain solution inside the window `‖x̂_i − center‖ < bound`.
#[derive(Clone, Debug)]
pub struct BoundedChain<E> {
    pub x: Vec<Frac<E>>,
    pub center: BigRational,
    pub bound: BigRational,
    /// `δ < c(b−a)/(a+b)`, so every `x_i` is an order unit.
    pub positivity_guaranteed: bool,
}

/// Solves `A·X = U` for `1 ≤ a < b` given `‖û_i − c‖ < δ` (states normalized at
/// `reference`), keeping every `x̂_i` within `δ/(b−a)` of `c/(a+b)`.
pub fn solve_chain_bounded<G: DenseTargetGroup>(
    g: &G,
    a: &BigInt,
    b: &BigInt,
    u: &[Frac<G::Elem>],
    reference: &G::Elem,
    c: &BigRational,
    delta: &BigRational,
) -> Result<BoundedChain<G::Elem>> {
    check_ab(a, b)?;
    if a >= b {
        return Err(Error::Precondition(format!("need a < b, got {a}, {b}; reverse the indexing")));
    }
    if !g.is_order_unit(reference) || !delta.is_positive() {
        return Err(Error::Precondition(String::from("need an order unit reference and δ > 0")));
    }
    if let Some(i) = u.iter().position(|ui| relative_deviation(g, ui, c, reference) >= *delta) {
        return Err(Error::Precondition(format!("u_{i} is not within δ of c")));
    }
    let (ar, br) = (BigRational::from_integer(a.clone()), BigRational::from_integer(b.clone()));
    let center = c / (&ar + &br);
    let bound = delta / (&br - &ar);
    let inv_b = br.recip();
    let n = u.len();
    let mut x = vec![Frac::whole(g.zero()); n + 1];
    x[n] = Frac::whole(reference.clone()).scale(g, &center);
    for i in (0..n).rev() {
        x[i] = u[i].sub(g, &x[i + 1].scale(g, &ar)).scale(g, &inv_b);
    }
    if !verify_rows(g, a, b, &x, u) {
        return Err(Error::Verification(String::from("bounded chain identity")));
    }
    if x.iter().any(|xi| relative_deviation(g, xi, &center, reference) >= bound) {
        return Err(Error::Verification(String::from("bounded chain window")));
    }
    let positivity_guaranteed = *delta < c * (&br - &ar) / (&ar + &br);
    Ok(BoundedChain { x, center, bound, positivity_guaranteed })
}

/// A solution `V ∈ G^{N+1}` of `A·V = U` with `‖v̂_i − x̂_i‖ < ε` for a rational
/// solution `X`; needs `gcd(a, b) = 1`.
pub fn integerize_chain<G: DenseTargetGroup>(
    g: &G,
    a: &BigInt,
    b: &BigInt,
    u: &[G::Elem],
    x: &[Frac<G::Elem>],
    eps: &BigRational,
) -> Result<Vec<G::Elem>> {
    check_ab(a, b)?;
    if !a.gcd(b).is_one() {
        return Err(Error::NotCoprime(format!("gcd({a}, {b}) = {}", a.gcd(b))));
    }
    if !eps.is_positive() {
        return Err(Error::Precondition(String::from("ε must be positive")));
    }
    let uf: Vec<Frac<G::Elem>> = u.iter().cloned().map(Frac::whole).collect();
    if x.len() != u.len() + 1 || !verify_rows(g, a, b, x, &uf) {
        return Err(Error::Precondition(String::from("X does not solve A·X = U")));
    }
    if let Some(v) = x.iter().map(|xi| xi.to_elem(g)).collect::<Option<Vec<_>>>() {
        return Ok(v);
    }
    let n = u.len();
    // a^i v_i = (−b)^i v_0 + s_i; only the congruence at i = N constrains v_0.
    let mut s = g.zero();
    let mut a_pow = BigInt::one();
    for ui in u {
        s = g.sub(&g.scale(ui, &a_pow), &g.scale(&s, b));
        a_pow *= a;
    }
    let minus_b_pow = num_traits::pow(-b.clone(), n);
    let beta = mod_inverse(&minus_b_pow, &a_pow).expect("coprime");
    let y_star = g.neg(&g.scale(&s, &beta));

    let ratio = BigRational::new(a.clone(), b.clone());
    let shrink = if ratio < BigRational::one() { crate::num::pow(&ratio, n as i64) } else { BigRational::one() };
    let mut e = eps * shrink / rint(2);
    for _ in 0..RETRY_CAP {
        let attempt = (|| -> Result<Option<Vec<G::Elem>>> {
            let y0 = g.approximate(&x[0], &e)?;
            let h = small_coset_rep(g, &g.sub(&y_star, &y0), &a_pow, &e)?;
            let mut v = vec![g.add(&y0, &h)];
            for ui in u {
                let next = g.div_exact(&g.sub(ui, &g.scale(v.last().unwrap(), b)), a);
                match next {
                    Some(w) => v.push(w),
                    None => return Ok(None),
                }
            }
            let close = v.iter().zip(x).all(|(vi, xi)| Frac::whole(vi.clone()).distance(g, xi) < *eps);
            Ok(close.then_some(v))
        })()?;
        if let Some(v) = attempt {
            let vf: Vec<Frac<G::Elem>> = v.iter().cloned().map(Frac::whole).collect();
            if verify_rows(g, a, b, &vf, &uf) {
                return Ok(v);
            }
        }
        e /= rint(2);
    }
    Err(Error::ApproximationExhausted { attempts: RETRY_CAP, detail: format!("integerizing a chain with a = {a}, b = {b}") })
}
