//! Numeric searches over bounded integer combinations. Everything here works
//! with floating shadows and is reported as inexact.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest number of combinations any exhaustive search will enumerate.
pub const ENUMERATION_LIMIT: u64 = 40_000_000;

/// A nonzero integer combination with small sup-norm.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallCombination {
    pub coeffs: Vec<i64>,
    /// Sup-norm of the combination's numeric shadow.
    pub norm: f64,
}

/// Outcome of a grid density scan.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub dense: bool,
    /// Largest distance from a grid point to its nearest found combination
    /// (infinite when some grid point had none within reach).
    pub worst_gap: f64,
    pub grid_points: usize,
    pub combinations: u64,
    /// Always true: the scan uses floating shadows.
    pub inexact: bool,
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)))
}

fn count(n: usize, bound: i64) -> Result<u64> {
    let side = (2 * bound + 1) as u64;
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total
            .checked_mul(side)
            .filter(|t| *t <= ENUMERATION_LIMIT)
            .ok_or_else(|| Error::CapExceeded(format!("{side}^{n} combinations")))?;
    }
    Ok(total)
}

/// Visits every coefficient vector in `[-bound, bound]^n` with its point.
fn enumerate(vs: &[Vec<f64>], dim: usize, bound: i64, mut visit: impl FnMut(&[i64], &[f64])) {
    let n = vs.len();
    let mut c = vec![-bound; n];
    let mut p = vec![0.0f64; dim];
    for (v, &ci) in vs.iter().zip(&c) {
        for j in 0..dim {
            p[j] += ci as f64 * v[j];
        }
    }
    loop {
        visit(&c, &p);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if c[i] < bound {
                c[i] += 1;
                for j in 0..dim {
                    p[j] += vs[i][j];
                }
                break;
            }
            for j in 0..dim {
                p[j] -= 2.0 * bound as f64 * vs[i][j];
            }
            c[i] = -bound;
            i += 1;
        }
    }
}

fn cell(p: &[f64], size: f64) -> Vec<i64> {
    p.iter().map(|x| libm::floor(x / size) as i64).collect()
}

fn neighbours(c: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![c.to_vec()];
    for j in 0..c.len() {
        let mut next = Vec::with_capacity(out.len() * 3);
        for v in &out {
            for d in [-1i64, 0, 1] {
                let mut w = v.clone();
                w[j] += d;
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn better(a: &SmallCombination, b: &SmallCombination) -> bool {
    a.norm < b.norm || (a.norm == b.norm && a.coeffs < b.coeffs)
}

/// Smallest-norm nonzero combination with `|c_i| ≤ bound` and norm `< delta`,
/// by meeting in the middle; ties go to the lexicographically smallest
/// coefficient vector.
pub fn find_small_combination_f64(vs: &[Vec<f64>], bound: i64, delta: f64) -> Result<Option<SmallCombination>> {
    let n = vs.len();
    if n == 0 {
        return Ok(None);
    }
    let dim = vs[0].len();
    let h = n / 2;
    let (left, right) = vs.split_at(h);
    count(n - h, bound)?;
    count(h.max(1), bound)?;
    let mut table: BTreeMap<Vec<i64>, Vec<(Vec<i64>, Vec<f64>)>> = BTreeMap::new();
    enumerate(right, dim, bound, |c, p| {
        table.entry(cell(p, delta)).or_default().push((c.to_vec(), p.to_vec()));
    });
    let mut best: Option<SmallCombination> = None;
    let mut consider = |lc: &[i64], lp: &[f64]| {
        let neg: Vec<f64> = lp.iter().map(|x| -x).collect();
        for nb in neighbours(&cell(&neg, delta)) {
            let Some(bucket) = table.get(&nb) else { continue };
            for (rc, rp) in bucket {
                if lc.iter().chain(rc.iter()).all(|&x| x == 0) {
                    continue;
                }
                let s: Vec<f64> = lp.iter().zip(rp).map(|(a, b)| a + b).collect();
                let norm = sup(&s);
                if norm < delta {
                    let mut coeffs = lc.to_vec();
                    coeffs.extend_from_slice(rc);
                    let cand = SmallCombination { coeffs, norm };
                    if best.as_ref().is_none_or(|b| better(&cand, b)) {
                        best = Some(cand);
                    }
                }
            }
        }
    };
    if left.is_empty() {
        consider(&[], &vec![0.0; dim]);
    } else {
        enumerate(left, dim, bound, |c, p| consider(c, p));
    }
    Ok(best)
}

/// Exhaustive minimum of the sup-norm over nonzero combinations with `|c_i| ≤ bound`.
pub fn min_nonzero_norm_f64(vs: &[Vec<f64>], bound: i64) -> Result<Option<SmallCombination>> {
    let n = vs.len();
    if n == 0 {
        return Ok(None);
    }
    count(n, bound)?;
    let dim = vs[0].len();
    let mut best: Option<SmallCombination> = None;
    enumerate(vs, dim, bound, |c, p| {
        if c.iter().all(|&x| x == 0) {
            return;
        }
        let cand = SmallCombination { coeffs: c.to_vec(), norm: sup(p) };
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            best = Some(cand);
        }
    });
    Ok(best)
}

/// Is every point of an `eps/2`-grid on the box within `eps` (sup-norm) of
/// some combination with `|c_i| ≤ bound`?
pub fn density_scan_f64(vs: &[Vec<f64>], lo: &[f64], hi: &[f64], eps: f64, bound: i64) -> Result<DensityReport> {
    let dim = lo.len();
    if hi.len() != dim || vs.iter().any(|v| v.len() != dim) {
        return Err(Error::Dimension { expected: dim, found: hi.len() });
    }
    if !(eps > 0.0) || lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Err(Error::Precondition(format!("bad box or eps {eps}")));
    }
    let combinations = count(vs.len(), bound)?;
    let mut table: BTreeMap<Vec<i64>, Vec<Vec<f64>>> = BTreeMap::new();
    let inside = |p: &[f64]| (0..dim).all(|j| p[j] >= lo[j] - eps && p[j] <= hi[j] + eps);
    if vs.is_empty() {
        let z = vec![0.0; dim];
        if inside(&z) {
            table.entry(cell(&z, eps)).or_default().push(z);
        }
    } else {
        enumerate(vs, dim, bound, |_, p| {
            if inside(p) {
                table.entry(cell(p, eps)).or_default().push(p.to_vec());
            }
        });
    }
    let steps: Vec<usize> =
        (0..dim).map(|j| libm::floor((hi[j] - lo[j]) / (eps / 2.0) + 1e-9) as usize + 1).collect();
    let mut idx = vec![0usize; dim];
    let mut worst = 0.0f64;
    let mut grid_points = 0usize;
    loop {
        let g: Vec<f64> = (0..dim).map(|j| lo[j] + idx[j] as f64 * eps / 2.0).collect();
        let mut nearest = f64::INFINITY;
        for nb in neighbours(&cell(&g, eps)) {
            if let Some(bucket) = table.get(&nb) {
                for p in bucket {
                    let d = p.iter().zip(&g).fold(0.0f64, |m, (a, b)| m.max(libm::fabs(a - b)));
                    nearest = nearest.min(d);
                }
            }
        }
        if nearest > eps {
            nearest = f64::INFINITY;
        }
        worst = worst.max(nearest);
        grid_points += 1;
        let mut j = 0;
        loop {
            if j == dim {
                return Ok(DensityReport {
                    dense: worst <= eps,
                    worst_gap: worst,
                    grid_points,
                    combinations,
                    inexact: true,
                });
            }
            idx[j] += 1;
            if idx[j] < steps[j] {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_has_unit_minimum() {
        let vs = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        for b in [1, 3, 7] {
            assert_eq!(min_nonzero_norm_f64(&vs, b).unwrap().unwrap().norm, 1.0);
        }
        assert!(find_small_combination_f64(&vs, 5, 0.5).unwrap().is_none());
    }

    #[test]
    fn dense_line_has_small_combinations() {
        let vs = vec![vec![1.0], vec![core::f64::consts::SQRT_2]];
        let w = find_small_combination_f64(&vs, 20, 0.05).unwrap().unwrap();
        let v = w.coeffs[0] as f64 + w.coeffs[1] as f64 * core::f64::consts::SQRT_2;
        assert!(libm::fabs(v) < 0.05);
        assert!(libm::fabs(libm::fabs(v) - w.norm) < 1e-9);
    }

    #[test]
    fn grid_scan_of_integer_lattice() {
        let vs = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(density_scan_f64(&vs, &[0.0, 0.0], &[1.0, 1.0], 0.4, 2).unwrap().dense);
        assert!(!density_scan_f64(&vs, &[0.0, 0.0], &[1.0, 1.0], 0.04, 2).unwrap().dense);
    }

    #[test]
    fn caps_are_enforced() {
        let vs = vec![vec![1.0]; 12];
        assert!(matches!(min_nonzero_norm_f64(&vs, 20), Err(Error::CapExceeded(_))));
    }
}
