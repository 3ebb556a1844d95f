//! Certification of sequences: the density conditions, the content
//! dichotomy, the Anti-FD verdict and the stage subgroups `G_n`.

mod mixed;


pub use mixed::{
    counterexample_model, positive_cone_miss_check, qsqrt2_positive_on, ConeMissReport, MixedElement, MixedModel,
    ModelKind,
};

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::discretelab::SymbolBasis;
use crate::discretelab::SymbolicVector;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::limitgroup::{LimitGroup, PolySequence, RElement, Tail};

/// One tail-quantified condition with the indices that support it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub label: &'static str,
    pub holds: bool,
    /// False when only finite (prefix) data was available.
    pub exact: bool,
    pub holds_at: Vec<usize>,
    pub fails_at: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    AntiFd,
    ProFd,
    Inconclusive,
}

/// The four conditions for the Anti-FD verdict with their evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertReport {
    pub terminal: ConditionCheck,
    pub leading: ConditionCheck,
    pub content: ConditionCheck,
    pub isolani_free: ConditionCheck,
    pub equal_logs: ConditionCheck,
    /// Projective faithfulness of the repeated Log set, when there is one.
    pub faithful: Option<bool>,
    pub classification: Classification,
    /// Set for finite sequences: every verdict is relative to the prefix.
    pub prefix_relative: bool,
    pub notes: Vec<String>,
}

impl CertReport {
    /// The classification implied by the conditions. The failure of the
    /// sufficient conditions alone never yields a negative verdict.
    pub fn classify(
        terminal: &ConditionCheck,
        leading: &ConditionCheck,
        content: &ConditionCheck,
        isolani_free: &ConditionCheck,
        equal_logs: &ConditionCheck,
    ) -> Classification {
        if terminal.holds && leading.holds && content.holds && (isolani_free.holds || equal_logs.holds) {
            Classification::AntiFd
        } else if !content.holds {
            Classification::ProFd
        } else {
            Classification::Inconclusive
        }
    }

    pub fn conditions(&self) -> [&ConditionCheck; 5] {
        [&self.terminal, &self.leading, &self.content, &self.isolani_free, &self.equal_logs]
    }
}

/// Normalized entries that represent the tail, with their indices.
fn tail_window(seq: &PolySequence) -> Result<(Vec<(usize, LaurentPoly)>, bool)> {
    let plen = seq.prefix().len();
    let idx: Vec<usize> = match seq.tail() {
        Tail::Periodic(per) => (plen + 1..=plen + per.len()).collect(),
        Tail::Lacunary { .. } => alloc::vec![plen + 1, plen + 2],
        Tail::Finite => (1..=plen).collect(),
    };
    let exact = !seq.is_finite();
    Ok((idx.into_iter().map(|i| seq.normalized_entry(i).map(|p| (i, p))).collect::<Result<_>>()?, exact))
}

fn split(window: &[(usize, LaurentPoly)], pred: impl Fn(&LaurentPoly) -> bool) -> (Vec<usize>, Vec<usize>) {
    let mut yes = Vec::new();
    let mut no = Vec::new();
    for (i, p) in window {
        if pred(p) { yes.push(*i) } else { no.push(*i) }
    }
    (yes, no)
}

fn infinitely_often(seq: &PolySequence, label: &'static str, pred: impl Fn(&LaurentPoly) -> bool) -> Result<ConditionCheck> {
    let (window, exact) = tail_window(seq)?;
    let (holds_at, fails_at) = split(&window, pred);
    Ok(ConditionCheck { label, holds: !holds_at.is_empty(), exact, holds_at, fails_at })
}

fn almost_all(seq: &PolySequence, label: &'static str, pred: impl Fn(&LaurentPoly) -> bool) -> Result<ConditionCheck> {
    let (window, exact) = tail_window(seq)?;
    let (holds_at, fails_at) = split(&window, &pred);
    let holds = if exact { fails_at.is_empty() } else { window.last().is_some_and(|(_, p)| pred(p)) };
    Ok(ConditionCheck { label, holds, exact, holds_at, fails_at })
}

/// Condition (†): terminal and leading coefficients exceed 1 infinitely often.
pub fn check_dagger(seq: &PolySequence) -> Result<(ConditionCheck, ConditionCheck)> {
    let one = BigInt::one();
    let t = infinitely_often(seq, "terminal coefficient > 1 infinitely often", |p| p.terminal_coeff().is_some_and(|c| *c > one))?;
    let l = infinitely_often(seq, "leading coefficient > 1 infinitely often", |p| p.leading_coeff().is_some_and(|c| *c > one))?;
    Ok((t, l))
}

pub fn check_content_ae_one(seq: &PolySequence) -> Result<ConditionCheck> {
    almost_all(seq, "content 1 for almost all entries", |p| p.content().is_ok_and(|c| c.is_one()))
}

pub fn check_isolani_free(seq: &PolySequence) -> Result<ConditionCheck> {
    infinitely_often(seq, "no leading or terminal isolani infinitely often", |p| {
        p.isolani().is_ok_and(|i| !i.leading && !i.terminal)
    })
}

/// Infinitely many entries share one Log set. Periodic tails repeat every
/// entry; lacunary tails never repeat; finite sequences look for a repeat.
pub fn check_equal_logs(seq: &PolySequence) -> Result<ConditionCheck> {
    let label = "infinitely many equal Log sets";
    let (window, exact) = tail_window(seq)?;
    let all: Vec<usize> = window.iter().map(|(i, _)| *i).collect();
    Ok(match seq.tail() {
        Tail::Periodic(_) => ConditionCheck { label, holds: true, exact, holds_at: all, fails_at: Vec::new() },
        Tail::Lacunary { .. } => ConditionCheck { label, holds: false, exact, holds_at: Vec::new(), fails_at: all },
        Tail::Finite => {
            let logs: Vec<BTreeSet<i64>> = window.iter().map(|(_, p)| p.log_set()).collect();
            let holds_at: Vec<usize> = window
                .iter()
                .zip(&logs)
                .filter(|(_, l)| logs.iter().filter(|m| m == l).count() > 1)
                .map(|((i, _), _)| *i)
                .collect();
            let fails_at = all.into_iter().filter(|i| !holds_at.contains(i)).collect();
            ConditionCheck { label, holds: !holds_at.is_empty(), exact, holds_at, fails_at }
        }
    })
}

/// The differences of `Log p` generate `Z`.
pub fn check_projectively_faithful(p: &LaurentPoly) -> bool {
    let Some(m) = p.min_exp() else { return false };
    p.log_set().iter().fold(0i64, |g, k| g.gcd(&(k - m))) == 1
}

/// The four conditions and the resulting classification.
pub fn antifd_verdict(seq: &PolySequence) -> Result<CertReport> {
    let (terminal, leading) = check_dagger(seq)?;
    let content = check_content_ae_one(seq)?;
    let isolani_free = check_isolani_free(seq)?;
    let equal_logs = check_equal_logs(seq)?;
    let faithful = match equal_logs.holds_at.first() {
        Some(&i) => Some(check_projectively_faithful(&seq.normalized_entry(i)?)),
        None => None,
    };
    let classification = CertReport::classify(&terminal, &leading, &content, &isolani_free, &equal_logs);
    let mut notes = Vec::new();
    let (window, _) = tail_window(seq)?;
    if window.iter().all(|(_, p)| p.flatten() == *p) {
        notes.push(String::from("all tail coefficients are 1: a Pascal (GICAR-type) group, traces at the endpoints are discrete"));
    }
    if seq.is_finite() {
        notes.push(String::from("finite sequence: conditions are evaluated on the prefix only"));
    }
    if classification == Classification::ProFd {
        notes.push(String::from("contents exceed 1 infinitely often: the group factors through a rank-one group"));
    }
    Ok(CertReport {
        terminal,
        leading,
        content,
        isolani_free,
        equal_logs,
        faithful,
        classification,
        prefix_relative: seq.is_finite(),
        notes,
    })
}

/// The content dichotomy.
#[derive(Clone, Debug, PartialEq)]
pub enum Bifurcation {
    /// `p_i = d_i P_i` with `d_i > 1` infinitely often; the rank-one factor
    /// is the limit of multiplication by `d_i`.
    ProFd { contents: Vec<BigInt>, reduced: PolySequence },
    /// Contents are 1 from `from_index` on, so finite-rank subgroups are discrete.
    DiscreteFiniteRank { from_index: usize, exact: bool },
}

impl Bifurcation {
    /// Multipliers of the rank-one factor at indices `1..=n`.
    pub fn unit_multipliers(&self, seq: &PolySequence, n: usize) -> Result<Vec<BigInt>> {
        (1..=n).map(|i| seq.entry(i)?.content()).collect()
    }
}

pub fn bifurcate(seq: &PolySequence) -> Result<Bifurcation> {
    let content = check_content_ae_one(seq)?;
    let (window, exact) = tail_window(seq)?;
    let last = window.last().map(|(i, _)| *i).unwrap_or(0);
    let contents: Vec<BigInt> = (1..=last).map(|i| seq.entry(i)?.content()).collect::<Result<_>>()?;
    if content.holds {
        let from_index = contents.iter().rposition(|c| !c.is_one()).map_or(1, |k| k + 2);
        return Ok(Bifurcation::DiscreteFiniteRank { from_index, exact });
    }
    let reduced = seq.map(|p| p.div_scalar_exact(&p.content().unwrap_or_else(|_| BigInt::one())).unwrap_or_else(|| p.clone()))?;
    for i in 1..=last {
        if seq.entry(i)? != reduced.entry(i)?.scale(&contents[i - 1]) {
            return Err(Error::Verification(format!("factorization fails at index {i}")));
        }
    }
    Ok(Bifurcation::ProFd { contents, reduced })
}

/// `e ∈ G_n = Σ_{i ∈ Log Q_n} (x^i/Q_n) Z`.
pub fn in_gn(lg: &LimitGroup, e: &RElement, n: usize) -> Result<bool> {
    if e.f.is_zero() {
        return Ok(true);
    }
    let f = if e.stage <= n {
        lg.lift(e, n)?
    } else {
        match e.f.div_exact(&lg.connecting_product(n, e.stage)?) {
            Some(g) => g,
            None => return Ok(false),
        }
    };
    let q = lg.q_product(n)?;
    let inside = f.terms().all(|(k, _)| !q.coeff(k).is_zero());
    Ok(inside)
}

/// Smallest `n` with every generator in `G_n`.
pub fn find_gn(lg: &LimitGroup, gens: &[RElement]) -> Result<usize> {
    let mut n = 0;
    for g in gens {
        let c = lg.make_element(g.f.clone(), g.stage)?;
        n = n.max(c.stage);
    }
    for g in gens {
        if !in_gn(lg, g, n)? {
            return Err(Error::Verification(format!("generator not in G_{n}")));
        }
    }
    Ok(n)
}

/// Whether `m·e ∈ G_n ⟹ e ∈ G_n` holds on this instance. The implication is
/// guaranteed when the contents are 1.
pub fn purity_check(lg: &LimitGroup, e: &RElement, m: &BigInt, n: usize) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::Precondition(String::from("m must be nonzero")));
    }
    let me = lg.scale(e, m);
    Ok(!in_gn(lg, &me, n)? || in_gn(lg, e, n)?)
}

/// The basis `{x^i/Q_n}` of `G_n` with its exact independence check.
#[derive(Clone, Debug, PartialEq)]
pub struct GnBasis {
    pub stage: usize,
    pub exponents: Vec<i64>,
    pub elements: Vec<RElement>,
    pub independent: bool,
}

impl GnBasis {
    /// Integer coordinates of an element of `G_n` in this basis.
    pub fn coordinates(&self, lg: &LimitGroup, e: &RElement) -> Result<Vec<BigInt>> {
        let f = if e.stage <= self.stage {
            lg.lift(e, self.stage)?
        } else {
            e.f.div_exact(&lg.connecting_product(self.stage, e.stage)?).ok_or(Error::Membership { stage: self.stage })?
        };
        if f.terms().any(|(k, _)| !self.exponents.contains(&k)) {
            return Err(Error::Membership { stage: self.stage });
        }
        Ok(self.exponents.iter().map(|&k| f.coeff(k)).collect())
    }

    /// Coordinate vectors as plain rational vectors, for the discreteness test.
    pub fn coordinate_vectors(&self, lg: &LimitGroup, elems: &[RElement]) -> Result<Vec<SymbolicVector>> {
        let basis = SymbolBasis::plain();
        elems
            .iter()
            .map(|e| {
                let c: Vec<BigRational> = self.coordinates(lg, e)?.into_iter().map(BigRational::from_integer).collect();
                Ok(SymbolicVector::rational(basis.clone(), &c))
            })
            .collect()
    }
}

/// The monomials over `Q_n` have distinct supports, hence are independent.
pub fn gn_discreteness_witness(lg: &LimitGroup, n: usize) -> Result<GnBasis> {
    let q = lg.q_product(n)?;
    let exponents: Vec<i64> = q.log_set().into_iter().collect();
    let elements: Vec<RElement> =
        exponents.iter().map(|&k| lg.raw_element(LaurentPoly::monomial(1, k), n)).collect::<Result<_>>()?;
    let rows: Vec<Vec<BigRational>> = elements
        .iter()
        .map(|e| exponents.iter().map(|&k| BigRational::from_integer(e.f.coeff(k))).collect())
        .collect();
    let independent = crate::linalg::rank(&rows) == elements.len();
    Ok(GnBasis { stage: n, exponents, elements, independent })
}
