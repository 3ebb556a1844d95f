//! Gaussian elimination over exact fields.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// The arithmetic needed by elimination.
pub trait Field: Clone + PartialEq + Debug {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    /// Division by a nonzero element.
    fn fdiv(&self, o: &Self) -> Self;
}

impl Field for BigRational {
    fn fzero() -> Self {
        Zero::zero()
    }
    fn fone() -> Self {
        One::one()
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fdiv(&self, o: &Self) -> Self {
        self / o
    }
}

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QSqrt2 { a, b: <BigRational as Zero>::zero() }
    }

    /// `a² - 2b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b
    }
}

impl Field for QSqrt2 {
    fn fzero() -> Self {
        QSqrt2::rational(<BigRational as Zero>::zero())
    }
    fn fone() -> Self {
        QSqrt2::rational(<BigRational as One>::one())
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn fadd(&self, o: &Self) -> Self {
        QSqrt2::new(&self.a + &o.a, &self.b + &o.b)
    }
    fn fsub(&self, o: &Self) -> Self {
        QSqrt2::new(&self.a - &o.a, &self.b - &o.b)
    }
    fn fmul(&self, o: &Self) -> Self {
        let two = BigRational::from_integer(2.into());
        QSqrt2::new(&self.a * &o.a + two * &self.b * &o.b, &self.a * &o.b + &self.b * &o.a)
    }
    fn fdiv(&self, o: &Self) -> Self {
        // multiply by the conjugate; the norm is nonzero since √2 is irrational
        let n = o.norm();
        let conj = QSqrt2::new(o.a.clone(), -o.b.clone());
        let p = self.fmul(&conj);
        QSqrt2::new(p.a / &n, p.b / &n)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].fis_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::fone().fdiv(&m[r][c]);
        for j in c..cols {
            m[r][j] = m[r][j].fmul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].fis_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = f.fmul(&m[r][j]);
                    m[i][j] = m[i][j].fsub(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a list of equal-length rows.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{z : A z = 0}`.
pub fn nullspace<F: Field>(a: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut z = vec![F::fzero(); cols];
            z[f] = F::fone();
            for (r, &pc) in pivots.iter().enumerate() {
                z[pc] = F::fzero().fsub(&m[r][f]);
            }
            z
        })
        .collect()
}

/// A particular solution of `A z = b`, or `None` when inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F], cols: usize) -> Option<Vec<F>> {
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut z = vec![F::fzero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        z[pc] = m[r][cols].clone();
    }
    Some(z)
}

/// `A z`.
pub fn mat_vec<F: Field>(a: &[Vec<F>], z: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| row.iter().zip(z).fold(F::fzero(), |s, (x, y)| s.fadd(&x.fmul(y))))
        .collect()
}
