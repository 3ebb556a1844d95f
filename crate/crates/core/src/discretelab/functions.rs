//! Polynomials as elements of `C(I, R)` with the sup-norm.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::num::{ceil, rint, to_f64};
use crate::upoly::{grid, UPoly};

/// A rational polynomial viewed as a function on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionGenerator {
    pub poly: UPoly,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl FunctionGenerator {
    pub fn new(poly: UPoly, lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidInterval { lo: format!("{lo}"), hi: format!("{hi}") });
        }
        Ok(FunctionGenerator { poly, lo, hi })
    }

    /// `1, x, …, x^{n-1}` on `[lo, hi]`.
    pub fn monomials(n: usize, lo: &BigRational, hi: &BigRational) -> Result<Vec<Self>> {
        (0..n)
            .map(|i| {
                let mut c = vec![BigRational::zero(); i + 1];
                c[i] = BigRational::one();
                Self::new(UPoly::new(c), lo.clone(), hi.clone())
            })
            .collect()
    }

    /// Upper bound on the sup-norm over the interval.
    pub fn sup_bound(&self) -> BigRational {
        self.poly.coefficient_sup_bound(&self.lo, &self.hi)
    }
}

fn shared_interval(fs: &[FunctionGenerator]) -> Result<(BigRational, BigRational)> {
    let first = fs.first().ok_or_else(|| Error::Precondition(String::from("no functions")))?;
    if fs.iter().any(|f| f.lo != first.lo || f.hi != first.hi) {
        return Err(Error::Precondition(String::from("functions live on different intervals")));
    }
    Ok((first.lo.clone(), first.hi.clone()))
}

fn coefficient_rows(fs: &[FunctionGenerator]) -> Vec<Vec<BigRational>> {
    let width = fs.iter().map(|f| f.poly.coeffs().len()).max().unwrap_or(0);
    fs.iter().map(|f| (0..width).map(|i| f.poly.coeff(i)).collect()).collect()
}

/// Compositions of `total` into `n` nonnegative parts.
fn compositions(total: usize, n: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if cur.len() + 1 == n {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for k in 0..=total {
        cur.push(k);
        compositions(total - k, n, out, cur);
        cur.pop();
    }
}

/// A certified positive lower bound for `min_{‖λ‖₁ = 1} ‖Σ λ_i f_i‖_∞`.
///
/// Points of the sphere with denominators `r` are evaluated exactly on a
/// sample grid; every sphere point is within `n/r` of one of them and the
/// objective is Lipschitz with constant `max ‖f_i‖`.
pub fn independence_constant(fs: &[FunctionGenerator], grid_resolution: usize) -> Result<BigRational> {
    let (lo, hi) = shared_interval(fs)?;
    let n = fs.len();
    if rank(&coefficient_rows(fs)) < n {
        return Err(Error::Dependent);
    }
    let lip = fs.iter().map(FunctionGenerator::sup_bound).max().unwrap();
    let mut r = grid_resolution.max(1);
    for _ in 0..6 {
        let samples = grid(&lo, &hi, (4 * r).clamp(16, 400));
        let values: Vec<Vec<BigRational>> = samples.iter().map(|t| fs.iter().map(|f| f.poly.eval(t)).collect()).collect();
        // Clear denominators once so the inner loop is integer arithmetic.
        let den = values.iter().flatten().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<Vec<BigInt>> =
            values.iter().map(|row| row.iter().map(|v| v.numer() * (&den / v.denom())).collect()).collect();
        let mut comps = Vec::new();
        compositions(r, n, &mut comps, &mut Vec::new());
        let mut least: Option<BigInt> = None;
        for comp in &comps {
            let support: Vec<usize> = (0..n).filter(|&i| comp[i] > 0).collect();
            // The sign of the first nonzero part is fixed by symmetry.
            for mask in 0..(1u64 << (support.len() - 1)) {
                let mut lam = vec![0i64; n];
                for (bit, &i) in support.iter().enumerate() {
                    let neg = bit > 0 && (mask >> (bit - 1)) & 1 == 1;
                    lam[i] = if neg { -(comp[i] as i64) } else { comp[i] as i64 };
                }
                let best = ints
                    .iter()
                    .map(|row| row.iter().zip(&lam).map(|(v, &l)| v * l).sum::<BigInt>().abs())
                    .max()
                    .unwrap();
                if least.as_ref().is_none_or(|m| best < *m) {
                    least = Some(best);
                }
            }
        }
        let least = BigRational::new(least.unwrap(), den);
        let rr = rint(r as i64);
        let least = least / &rr;
        let slack = if n == 1 { BigRational::zero() } else { &lip * rint(n as i64) / &rr };
        let bound = least - slack;
        if bound.is_positive() {
            return Ok(bound);
        }
        r *= 2;
    }
    Err(Error::CapExceeded(format!("sphere grid resolution {r}")))
}

/// A certified integer approximation.
#[derive(Clone, Debug, PartialEq)]
pub struct Approximation {
    pub coeffs: Vec<BigInt>,
    pub poly: UPoly,
    /// Largest error on the certification grid.
    pub grid_max: BigRational,
    /// Derivative bound times half the grid spacing.
    pub slack: BigRational,
    pub certified: BigRational,
}

fn chebyshev_nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let th = core::f64::consts::PI * (2 * i + 1) as f64 / (2 * n) as f64;
            (lo + hi) / 2.0 + (hi - lo) / 2.0 * libm::cos(th)
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// LLL on the rows of `b`, returning the reduced rows and the unimodular
/// transform expressing them in the original rows.
fn lll(mut b: Vec<Vec<f64>>) -> (Vec<Vec<f64>>, Vec<Vec<i64>>) {
    let n = b.len();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let gso = |b: &[Vec<f64>]| {
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(b.len());
        let mut mu = vec![vec![0.0; b.len()]; b.len()];
        for i in 0..b.len() {
            let mut v = b[i].clone();
            for j in 0..i {
                let d = dot(&bs[j], &bs[j]);
                mu[i][j] = if d > 0.0 { dot(&b[i], &bs[j]) / d } else { 0.0 };
                v.iter_mut().zip(&bs[j]).for_each(|(x, y)| *x -= mu[i][j] * y);
            }
            bs.push(v);
        }
        (bs, mu)
    };
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 100_000 {
        guard += 1;
        let (_, mu) = gso(&b);
        for j in (0..k).rev() {
            let q = libm::round(mu[k][j]);
            if q != 0.0 && q.is_finite() && libm::fabs(q) < 1e15 {
                let qi = q as i64;
                let (bj, uj) = (b[j].clone(), u[j].clone());
                b[k].iter_mut().zip(&bj).for_each(|(x, y)| *x -= q * y);
                u[k].iter_mut().zip(&uj).for_each(|(x, y)| *x = x.saturating_sub(qi.saturating_mul(*y)));
            }
        }
        let (bs, mu) = gso(&b);
        let lhs = dot(&bs[k], &bs[k]);
        let rhs = (0.99 - mu[k][k - 1] * mu[k][k - 1]) * dot(&bs[k - 1], &bs[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    (b, u)
}

/// Babai's nearest plane: integer coordinates (in the given rows) of a
/// lattice point near `t`.
fn babai(b: &[Vec<f64>], t: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut bs: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = b[i].clone();
        for w in &bs {
            let d = dot(w, w);
            let m = if d > 0.0 { dot(&b[i], w) / d } else { 0.0 };
            v.iter_mut().zip(w).for_each(|(x, y)| *x -= m * y);
        }
        bs.push(v);
    }
    let mut r = t.to_vec();
    let mut c = vec![0.0; n];
    for i in (0..n).rev() {
        let d = dot(&bs[i], &bs[i]);
        if d <= 0.0 {
            continue;
        }
        c[i] = libm::round(dot(&r, &bs[i]) / d);
        r.iter_mut().zip(&b[i]).for_each(|(x, y)| *x -= c[i] * y);
    }
    c
}

fn sup_error(vals: &[Vec<f64>], target: &[f64], c: &[i64]) -> f64 {
    target
        .iter()
        .enumerate()
        .map(|(s, t)| libm::fabs(vals.iter().zip(c).map(|(v, &ci)| ci as f64 * v[s]).sum::<f64>() - t))
        .fold(0.0, f64::max)
}

fn certify(err: &UPoly, lo: &BigRational, hi: &BigRational, eps: &BigRational) -> Option<(BigRational, BigRational)> {
    let dbound = err.derivative().coefficient_sup_bound(lo, hi);
    let mut n = 64;
    while n <= 8192 {
        let g = grid(lo, hi, n);
        let grid_max = g.iter().map(|t| err.eval(t).abs()).max().unwrap();
        if grid_max > *eps {
            return None;
        }
        let slack = &dbound * (hi - lo) / rint(2 * (n as i64 - 1));
        if &grid_max + &slack <= *eps {
            return Some((grid_max, slack));
        }
        n *= 2;
    }
    None
}

/// Integer combination of `gens` within `eps` of `target` on the interval,
/// certified exactly. The interval must contain no integer.
pub fn approximate_in_span(
    target: &UPoly,
    gens: &[FunctionGenerator],
    eps: &BigRational,
    height_cap: &BigInt,
    degree_cap: usize,
) -> Result<Approximation> {
    let (lo, hi) = shared_interval(gens)?;
    if BigRational::from_integer(ceil(&lo)) <= hi {
        return Err(Error::Precondition(format!("[{lo}, {hi}] contains an integer")));
    }
    if !eps.is_positive() {
        return Err(Error::Precondition(String::from("eps must be positive")));
    }
    let (lf, hf) = (to_f64(&lo), to_f64(&hi));
    let max_k = gens.len().min(degree_cap + 1);
    let mut attempts = 0u32;
    let mut last = String::from("no attempt");
    for k in 1..=max_k {
        attempts += 1;
        let nodes = chebyshev_nodes(lf, hf, (4 * k).max(32));
        let vals: Vec<Vec<f64>> = gens[..k].iter().map(|g| nodes.iter().map(|&t| g.poly.eval_f64(t)).collect()).collect();
        let tv: Vec<f64> = nodes.iter().map(|&t| target.eval_f64(t)).collect();
        let (reduced, u) = lll(vals.clone());
        let y = babai(&reduced, &tv);
        let mut c = vec![0i64; k];
        for (yi, row) in y.iter().zip(&u) {
            let yi = *yi as i64;
            for (cj, uj) in c.iter_mut().zip(row) {
                *cj = cj.saturating_add(yi.saturating_mul(*uj));
            }
        }
        let mut err = sup_error(&vals, &tv, &c);
        for _ in 0..400 {
            let mut best: Option<(usize, i64, f64)> = None;
            for i in 0..k {
                for d in [-1i64, 1] {
                    c[i] += d;
                    let e = sup_error(&vals, &tv, &c);
                    c[i] -= d;
                    if e < err && best.is_none_or(|b| e < b.2) {
                        best = Some((i, d, e));
                    }
                }
            }
            match best {
                Some((i, d, e)) => {
                    c[i] += d;
                    err = e;
                }
                None => break,
            }
        }
        let coeffs: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        if coeffs.iter().any(|x| x.abs() > *height_cap) {
            last = format!("{k} generators need height above {height_cap}");
            continue;
        }
        let poly = gens[..k]
            .iter()
            .zip(&coeffs)
            .fold(UPoly::zero(), |acc, (g, ci)| acc.add(&g.poly.scale(&BigRational::from_integer(ci.clone()))));
        let diff = poly.sub(target);
        match certify(&diff, &lo, &hi, eps) {
            Some((grid_max, slack)) => {
                let certified = &grid_max + &slack;
                return Ok(Approximation { coeffs, poly, grid_max, slack, certified });
            }
            None => last = format!("{k} generators: numeric error {err:.3e}"),
        }
    }
    Err(Error::ApproximationExhausted { attempts, detail: last })
}
