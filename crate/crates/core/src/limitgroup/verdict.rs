use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::laurent::LaurentPoly;

/// Three-valued answer of a capped search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

/// Evidence attached to a [`Verdict`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `f·p_{n+1}···p_stage = product` has nonnegative coefficients.
    Stage { stage: usize, product: LaurentPoly },
    /// `(multiplier·f − Q_n)·p_{n+1}···p_stage = product` is nonnegative.
    Multiplier { multiplier: BigInt, stage: usize, product: LaurentPoly },
    /// Value of the terminal-coefficient trace `τ₀`.
    TerminalTrace { value: BigRational },
    /// Value of the leading-coefficient trace `τ∞`.
    LeadingTrace { value: BigRational },
    /// Value of the point-evaluation trace at `t`.
    PointTrace { t: BigRational, value: BigRational },
    /// The element is zero in the limit.
    ZeroElement,
    /// Pushforward of a matrix-system vector to `stage`.
    MatrixStage { stage: usize, vector: Vec<BigRational> },
    /// Search stopped at the caps.
    Cap { stage_cap: usize, multiplier_cap: Option<BigInt> },
}

/// A capped semi-decision with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub value: Truth,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn yes(certificate: Certificate) -> Self {
        Verdict { value: Truth::True, certificate }
    }

    pub fn no(certificate: Certificate) -> Self {
        Verdict { value: Truth::False, certificate }
    }

    pub fn unknown(stage_cap: usize, multiplier_cap: Option<BigInt>) -> Self {
        Verdict { value: Truth::Unknown, certificate: Certificate::Cap { stage_cap, multiplier_cap } }
    }

    pub fn is_true(&self) -> bool {
        self.value == Truth::True
    }

    pub fn is_false(&self) -> bool {
        self.value == Truth::False
    }

    pub fn is_unknown(&self) -> bool {
        self.value == Truth::Unknown
    }
}
