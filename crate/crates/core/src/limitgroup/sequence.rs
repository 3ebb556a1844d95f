use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// How a [`PolySequence`] continues after its prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// The listed entries repeat forever.
    Periodic(Vec<LaurentPoly>),
    /// Nothing beyond the prefix is known; tail verdicts are prefix-relative.
    Finite,
    /// `p_i = constant + coefficient·x^(base^i)` for every index `i` past the prefix.
    Lacunary { constant: BigInt, coefficient: BigInt, base: u32 },
}

/// A tail-quantified answer. `exact` is false when only finite data was available.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailVerdict {
    pub value: bool,
    pub exact: bool,
}

/// The defining data `p_1, p_2, …` of `R(p_i)`. Indices start at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySequence {
    prefix: Vec<LaurentPoly>,
    tail: Tail,
    norm_prefix: Vec<LaurentPoly>,
    norm_period: Vec<LaurentPoly>,
}

fn validate(p: &LaurentPoly, index: usize) -> Result<()> {
    let bad = |reason: &str| Err(Error::InvalidSequence { index, reason: String::from(reason) });
    if p.is_zero() {
        return bad("zero polynomial");
    }
    if p.len() < 2 {
        return bad("fewer than two terms");
    }
    if !p.is_nonnegative() {
        return bad("negative coefficient");
    }
    Ok(())
}

fn normalized(p: &LaurentPoly) -> LaurentPoly {
    p.normalize_min_zero().map(|(q, _)| q).unwrap_or_default()
}

impl PolySequence {
    pub fn new(prefix: Vec<LaurentPoly>, tail: Tail) -> Result<Self> {
        for (i, p) in prefix.iter().enumerate() {
            validate(p, i + 1)?;
        }
        match &tail {
            Tail::Periodic(per) => {
                if per.is_empty() {
                    return Err(Error::Precondition(String::from("empty period")));
                }
                for (i, p) in per.iter().enumerate() {
                    validate(p, prefix.len() + i + 1)?;
                }
            }
            Tail::Finite => {
                if prefix.is_empty() {
                    return Err(Error::Precondition(String::from("empty sequence")));
                }
            }
            Tail::Lacunary { constant, coefficient, base } => {
                if !constant.is_positive() || !coefficient.is_positive() || *base < 2 {
                    return Err(Error::Precondition(String::from(
                        "lacunary tail needs positive coefficients and base >= 2",
                    )));
                }
            }
        }
        let norm_prefix = prefix.iter().map(normalized).collect();
        let norm_period = match &tail {
            Tail::Periodic(per) => per.iter().map(normalized).collect(),
            _ => Vec::new(),
        };
        Ok(PolySequence { prefix, tail, norm_prefix, norm_period })
    }

    /// `prefix` followed by `period` repeated forever.
    pub fn periodic(prefix: Vec<LaurentPoly>, period: Vec<LaurentPoly>) -> Result<Self> {
        Self::new(prefix, Tail::Periodic(period))
    }

    /// The constant sequence `p, p, p, …`.
    pub fn constant(p: LaurentPoly) -> Result<Self> {
        Self::periodic(Vec::new(), alloc::vec![p])
    }

    /// Only the listed entries are known.
    pub fn finite(entries: Vec<LaurentPoly>) -> Result<Self> {
        Self::new(entries, Tail::Finite)
    }

    /// `p_i = constant + coefficient·x^(base^i)` for all `i ≥ 1`.
    pub fn lacunary(constant: i64, coefficient: i64, base: u32) -> Result<Self> {
        Self::new(
            Vec::new(),
            Tail::Lacunary { constant: constant.into(), coefficient: coefficient.into(), base },
        )
    }

    /// Parses polynomial strings for a prefix and a period (empty period = finite).
    pub fn parse(prefix: &[&str], period: &[&str]) -> Result<Self> {
        let pre = prefix.iter().map(|s| s.parse()).collect::<Result<Vec<LaurentPoly>>>()?;
        let per = period.iter().map(|s| s.parse()).collect::<Result<Vec<LaurentPoly>>>()?;
        if per.is_empty() {
            Self::finite(pre)
        } else {
            Self::periodic(pre, per)
        }
    }

    pub fn prefix(&self) -> &[LaurentPoly] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.tail, Tail::Finite)
    }

    /// Number of entries when finite.
    pub fn available(&self) -> Option<usize> {
        match self.tail {
            Tail::Finite => Some(self.prefix.len()),
            _ => None,
        }
    }

    /// `p_i` for `i ≥ 1`.
    pub fn entry(&self, i: usize) -> Result<LaurentPoly> {
        self.entry_impl(i, false)
    }

    /// `p_i` shifted so that `min Log p_i = 0`.
    pub fn normalized_entry(&self, i: usize) -> Result<LaurentPoly> {
        self.entry_impl(i, true)
    }

    fn entry_impl(&self, i: usize, norm: bool) -> Result<LaurentPoly> {
        if i == 0 {
            return Err(Error::Precondition(String::from("sequence indices start at 1")));
        }
        let plen = self.prefix.len();
        if i <= plen {
            return Ok(if norm { &self.norm_prefix } else { &self.prefix }[i - 1].clone());
        }
        match &self.tail {
            Tail::Periodic(per) => {
                let j = (i - 1 - plen) % per.len();
                Ok(if norm { &self.norm_period } else { per }[j].clone())
            }
            Tail::Finite => Err(Error::StageUnavailable { stage: i, available: plen }),
            Tail::Lacunary { constant, coefficient, base } => {
                let e = u32::try_from(i)
                    .ok()
                    .and_then(|i| (*base as i64).checked_pow(i))
                    .ok_or_else(|| Error::CapExceeded(format!("exponent {base}^{i} overflows")))?;
                Ok(LaurentPoly::from_terms([(0, constant.clone()), (e, coefficient.clone())]))
            }
        }
    }

    /// Representative tail entries: the period, the last finite entry, or two
    /// lacunary samples (all lacunary entries share coefficients and shape).
    fn tail_samples(&self, norm: bool) -> Result<(Vec<LaurentPoly>, bool)> {
        let plen = self.prefix.len();
        match &self.tail {
            Tail::Periodic(per) => Ok((if norm { self.norm_period.clone() } else { per.clone() }, true)),
            Tail::Finite => Ok((self.prefix.clone(), false)),
            Tail::Lacunary { .. } => {
                Ok((alloc::vec![self.entry(plen + 1)?, self.entry(plen + 2)?], true))
            }
        }
    }

    /// Does `pred` hold for infinitely many (normalized) entries?
    pub fn infinitely_often(&self, pred: impl Fn(&LaurentPoly) -> bool) -> TailVerdict {
        match self.tail_samples(true) {
            Ok((s, exact)) => TailVerdict { value: s.iter().any(&pred), exact },
            Err(_) => TailVerdict { value: false, exact: false },
        }
    }

    /// Does `pred` hold for all but finitely many (normalized) entries?
    pub fn almost_all(&self, pred: impl Fn(&LaurentPoly) -> bool) -> TailVerdict {
        match &self.tail {
            Tail::Finite => TailVerdict {
                value: self.norm_prefix.last().is_some_and(&pred),
                exact: false,
            },
            _ => match self.tail_samples(true) {
                Ok((s, exact)) => TailVerdict { value: s.iter().all(&pred), exact },
                Err(_) => TailVerdict { value: false, exact: false },
            },
        }
    }

    /// Entries at indices `1..=n`.
    pub fn first(&self, n: usize) -> Result<Vec<LaurentPoly>> {
        (1..=n).map(|i| self.entry(i)).collect()
    }

    /// Normalized entries at indices `1..=n`.
    pub fn first_normalized(&self, n: usize) -> Result<Vec<LaurentPoly>> {
        (1..=n).map(|i| self.normalized_entry(i)).collect()
    }

    /// The period entries (empty unless the tail is periodic), normalized.
    pub fn normalized_period(&self) -> &[LaurentPoly] {
        &self.norm_period
    }

    /// Applies `f` to every stored entry.
    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Result<Self> {
        let prefix = self.prefix.iter().map(&f).collect();
        let tail = match &self.tail {
            Tail::Periodic(per) => Tail::Periodic(per.iter().map(&f).collect()),
            Tail::Finite => Tail::Finite,
            Tail::Lacunary { constant, coefficient, base } => {
                let p = f(&LaurentPoly::from_terms([(0, constant.clone()), (1, coefficient.clone())]));
                Tail::Lacunary { constant: p.coeff(0), coefficient: p.coeff(1), base: *base }
            }
        };
        Self::new(prefix, tail)
    }

    /// Every coefficient replaced by 1.
    pub fn flatten(&self) -> Result<Self> {
        self.map(|p| p.flatten())
    }

    /// Is the sequence constant from the start with the same entry?
    pub fn is_constant(&self) -> bool {
        match &self.tail {
            Tail::Periodic(per) => {
                let first = &per[0];
                per.iter().all(|p| p == first) && self.prefix.iter().all(|p| p == first)
            }
            _ => false,
        }
    }
}

/// One-line description, e.g. `prefix [4 + 2x] period [3 + 2x]`.
impl core::fmt::Display for PolySequence {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let list = |v: &[LaurentPoly]| {
            v.iter().map(|p| format!("{p}")).collect::<Vec<_>>().join(", ")
        };
        write!(f, "prefix [{}]", list(&self.prefix))?;
        match &self.tail {
            Tail::Periodic(per) => write!(f, " period [{}]", list(per)),
            Tail::Finite => write!(f, " (finite)"),
            Tail::Lacunary { constant, coefficient, base } => {
                let c = if coefficient.is_one() { String::new() } else { format!("{coefficient}") };
                write!(f, " then {constant} + {c}x^({base}^i)")
            }
        }
    }
}
