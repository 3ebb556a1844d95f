//! Integer lattices in echelon (Hermite) form, for exact membership tests.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The integer span of a set of integer vectors, kept as echelon rows with
/// positive pivots and reduced entries above each pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntLattice {
    pub fn new(gens: &[Vec<BigInt>], dim: usize) -> Self {
        let mut pool: Vec<Vec<BigInt>> =
            gens.iter().filter(|g| g.iter().any(|v| !v.is_zero())).cloned().collect();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..dim {
            loop {
                let nz: Vec<usize> = (0..pool.len()).filter(|&i| !pool[i][c].is_zero()).collect();
                if nz.is_empty() {
                    break;
                }
                let best = *nz.iter().min_by_key(|&&i| pool[i][c].abs()).unwrap();
                if nz.len() == 1 {
                    let mut r = pool.swap_remove(best);
                    if r[c].is_negative() {
                        r.iter_mut().for_each(|v| *v = -v.clone());
                    }
                    rows.push(r);
                    pivots.push(c);
                    break;
                }
                let pr = pool[best].clone();
                for &i in &nz {
                    if i != best {
                        let f = pool[i][c].div_floor(&pr[c]);
                        for j in c..dim {
                            let d = &f * &pr[j];
                            pool[i][j] -= d;
                        }
                    }
                }
                pool.retain(|g| g.iter().any(|v| !v.is_zero()));
            }
        }
        // reduce entries above pivots into [0, pivot)
        for k in 0..rows.len() {
            let c = pivots[k];
            for i in 0..k {
                let f = rows[i][c].div_floor(&rows[k][c]);
                if !f.is_zero() {
                    for j in c..dim {
                        let d = &f * &rows[k][j];
                        rows[i][j] -= d;
                    }
                }
            }
        }
        IntLattice { dim, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut w = v.to_vec();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let (q, rem) = w[c].div_rem(&r[c]);
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for j in c..self.dim {
                    let d = &q * &r[j];
                    w[j] -= d;
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }
}

/// Integer span of rational vectors, scaled to a common denominator.
#[derive(Clone, Debug)]
pub struct RationalLattice {
    denom: BigInt,
    lattice: IntLattice,
}

impl RationalLattice {
    pub fn new(gens: &[Vec<BigRational>], dim: usize) -> Self {
        let mut denom = BigInt::one();
        for g in gens {
            for v in g {
                denom = denom.lcm(v.denom());
            }
        }
        let ints: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|v| (v * BigRational::from_integer(denom.clone())).to_integer()).collect())
            .collect();
        RationalLattice { lattice: IntLattice::new(&ints, dim), denom }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let d = BigRational::from_integer(self.denom.clone());
        let mut w = Vec::with_capacity(v.len());
        for x in v {
            let s = x * &d;
            if !s.is_integer() {
                return false;
            }
            w.push(s.to_integer());
        }
        self.lattice.contains(&w)
    }
}
