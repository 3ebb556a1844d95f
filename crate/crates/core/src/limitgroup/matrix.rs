use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::verdict::{Certificate, Verdict};
use crate::error::{Error, Result};

/// Nonnegative integer matrix, stored by rows.
pub type Matrix = Vec<Vec<BigInt>>;

/// `G = lim A_n : Z^{k(n)} → Z^{k(n+1)}`, with `A_n` of shape `k(n+1) × k(n)`.
///
/// The matrices are `prefix` followed by `period` repeated (an empty period
/// means the system is known only up to the prefix). With `strict` set, the
/// positive cone is the set of order units together with 0. A `divisor`
/// `d > 1` tags the coordinate module as `Z[1/d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSystem {
    prefix: Vec<Matrix>,
    period: Vec<Matrix>,
    pub strict: bool,
    pub divisor: BigInt,
}

fn shape(m: &Matrix) -> (usize, usize) {
    (m.len(), m.first().map_or(0, |r| r.len()))
}

impl MatrixSystem {
    pub fn new(prefix: Vec<Matrix>, period: Vec<Matrix>) -> Result<Self> {
        let all: Vec<&Matrix> = prefix.iter().chain(period.iter()).collect();
        if all.is_empty() {
            return Err(Error::Precondition(String::from("no matrices")));
        }
        for (i, m) in all.iter().enumerate() {
            let (r, c) = shape(m);
            if r == 0 || c == 0 || m.iter().any(|row| row.len() != c) {
                return Err(Error::Precondition(format!("matrix {i} is ragged or empty")));
            }
            if m.iter().flatten().any(|v| v.is_negative()) {
                return Err(Error::Precondition(format!("matrix {i} has a negative entry")));
            }
        }
        let mut chain: Vec<&Matrix> = all.clone();
        if !period.is_empty() {
            chain.push(&period[0]);
        }
        for w in chain.windows(2) {
            let (r, _) = shape(w[0]);
            let (_, c) = shape(w[1]);
            if r != c {
                return Err(Error::Dimension { expected: r, found: c });
            }
        }
        Ok(MatrixSystem { prefix, period, strict: false, divisor: BigInt::one() })
    }

    /// The same matrix at every stage.
    pub fn stationary(a: Matrix) -> Result<Self> {
        Self::new(Vec::new(), alloc::vec![a])
    }

    /// `A_n`.
    pub fn matrix(&self, n: usize) -> Result<&Matrix> {
        if n < self.prefix.len() {
            return Ok(&self.prefix[n]);
        }
        if self.period.is_empty() {
            return Err(Error::StageUnavailable { stage: n, available: self.prefix.len() });
        }
        Ok(&self.period[(n - self.prefix.len()) % self.period.len()])
    }

    /// `k(n)`.
    pub fn size(&self, n: usize) -> Result<usize> {
        if n == 0 {
            return Ok(shape(self.matrix(0)?).1);
        }
        Ok(shape(self.matrix(n - 1)?).0)
    }

    fn last_stage(&self) -> Option<usize> {
        self.period.is_empty().then_some(self.prefix.len())
    }

    fn check_vector(&self, g: &[BigRational], n: usize) -> Result<()> {
        let k = self.size(n)?;
        if g.len() != k {
            return Err(Error::Dimension { expected: k, found: g.len() });
        }
        for v in g {
            let mut d = v.denom().clone();
            loop {
                let c = d.gcd(&self.divisor);
                if c.is_one() {
                    break;
                }
                d /= c;
            }
            if !d.is_one() {
                return Err(Error::Precondition(format!(
                    "entry {v} is not in the coordinate module Z[1/{}]",
                    self.divisor
                )));
            }
        }
        Ok(())
    }

    /// `A_{m−1}···A_n g`.
    pub fn pushforward(&self, g: &[BigRational], n: usize, m: usize) -> Result<Vec<BigRational>> {
        let mut h = g.to_vec();
        for s in n..m {
            let a = self.matrix(s)?;
            h = a
                .iter()
                .map(|row| row.iter().zip(&h).map(|(x, y)| BigRational::from_integer(x.clone()) * y).sum())
                .collect();
        }
        Ok(h)
    }

    /// No matrix from stage `m` on (including the whole period) has a zero column.
    fn columns_stay_nonzero(&self, m: usize) -> bool {
        let nz = |a: &Matrix| {
            let (_, c) = shape(a);
            (0..c).all(|j| a.iter().any(|row| !row[j].is_zero()))
        };
        !self.period.is_empty()
            && self.prefix.iter().skip(m).all(nz)
            && self.period.iter().all(nz)
    }

    fn no_zero_rows(&self, n: usize, m: usize) -> Result<()> {
        for s in n..m {
            if self.matrix(s)?.iter().any(|row| row.iter().all(|v| v.is_zero())) {
                return Err(Error::Precondition(format!("matrix {s} has a zero row")));
            }
        }
        Ok(())
    }

    fn stage_range(&self, n: usize, cap: usize) -> usize {
        let top = cap.max(n);
        self.last_stage().map_or(top, |l| top.min(l.max(n)))
    }

    /// Positivity of `[g, n]` in the limit (ordinary cone unless `strict`).
    pub fn matrix_positive(&self, g: &[BigRational], n: usize, cap: usize) -> Result<Verdict> {
        if self.strict {
            return self.simplified_positive(g, n, cap);
        }
        self.check_vector(g, n)?;
        let top = self.stage_range(n, cap);
        let mut h = g.to_vec();
        for m in n..=top {
            if m > n {
                h = self.pushforward(&h, m - 1, m)?;
            }
            if h.iter().all(|v| !v.is_negative()) {
                return Ok(Verdict::yes(Certificate::MatrixStage { stage: m, vector: h }));
            }
            // a nonzero vector with no positive entry stays so under
            // nonnegative matrices without zero columns
            if h.iter().all(|v| !v.is_positive()) && self.columns_stay_nonzero(m) {
                return Ok(Verdict::no(Certificate::MatrixStage { stage: m, vector: h }));
            }
        }
        Ok(Verdict::unknown(cap, None))
    }

    /// Is `[g, n]` an order unit: some pushforward strictly positive.
    pub fn matrix_order_unit(&self, g: &[BigRational], n: usize, cap: usize) -> Result<Verdict> {
        self.check_vector(g, n)?;
        let top = self.stage_range(n, cap);
        self.no_zero_rows(n, top)?;
        let mut h = g.to_vec();
        for m in n..=top {
            if m > n {
                h = self.pushforward(&h, m - 1, m)?;
            }
            if h.iter().all(|v| v.is_zero()) {
                return Ok(Verdict::no(Certificate::ZeroElement));
            }
            if h.iter().all(|v| v.is_positive()) {
                return Ok(Verdict::yes(Certificate::MatrixStage { stage: m, vector: h }));
            }
            if h.iter().all(|v| !v.is_positive()) && self.columns_stay_nonzero(m) {
                return Ok(Verdict::no(Certificate::MatrixStage { stage: m, vector: h }));
            }
        }
        Ok(Verdict::unknown(cap, None))
    }

    /// Positivity for the simplified ordering: zero or an order unit.
    pub fn simplified_positive(&self, g: &[BigRational], n: usize, cap: usize) -> Result<Verdict> {
        let v = self.matrix_order_unit(g, n, cap)?;
        if v.certificate == Certificate::ZeroElement {
            return Ok(Verdict::yes(Certificate::ZeroElement));
        }
        Ok(v)
    }

    /// The same limit over `Z[1/p]` with the strict ordering.
    pub fn divisible_rescale(&self, p: &BigInt) -> Result<Self> {
        if *p <= BigInt::one() {
            return Err(Error::Precondition(format!("rescaling needs p > 1, got {p}")));
        }
        let mut out = self.clone();
        out.divisor = self.divisor.lcm(p);
        out.strict = true;
        Ok(out)
    }
}
