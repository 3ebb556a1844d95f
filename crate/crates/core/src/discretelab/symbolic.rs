use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{fmt_rational, to_f64};

/// How the symbols `β₁ … β_s` are declared (`β₀ = 1` is implicit).
#[derive(Clone, Debug, PartialEq)]
pub enum SymbolMode {
    /// Every symbol has an exact rational value.
    Rational(Vec<BigRational>),
    /// The symbols are algebraically independent transcendentals; the
    /// floats are numeric shadows used only by inexact checks.
    Transcendental(Vec<f64>),
}

/// Named symbols with a fixed declaration mode.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolBasis {
    pub names: Vec<String>,
    pub mode: SymbolMode,
}

impl SymbolBasis {
    /// No symbols: all vectors are rational.
    pub fn plain() -> Arc<Self> {
        Arc::new(SymbolBasis { names: Vec::new(), mode: SymbolMode::Rational(Vec::new()) })
    }

    pub fn rational(names: &[&str], values: Vec<BigRational>) -> Result<Arc<Self>> {
        if names.len() != values.len() {
            return Err(Error::Dimension { expected: names.len(), found: values.len() });
        }
        Ok(Arc::new(SymbolBasis {
            names: names.iter().map(|s| String::from(*s)).collect(),
            mode: SymbolMode::Rational(values),
        }))
    }

    pub fn transcendental(names: &[&str], shadows: Vec<f64>) -> Result<Arc<Self>> {
        if names.len() != shadows.len() {
            return Err(Error::Dimension { expected: names.len(), found: shadows.len() });
        }
        Ok(Arc::new(SymbolBasis {
            names: names.iter().map(|s| String::from(*s)).collect(),
            mode: SymbolMode::Transcendental(shadows),
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_transcendental(&self) -> bool {
        matches!(self.mode, SymbolMode::Transcendental(_))
    }

    /// Numeric values of the symbols.
    pub fn shadows(&self) -> Vec<f64> {
        match &self.mode {
            SymbolMode::Rational(v) => v.iter().map(to_f64).collect(),
            SymbolMode::Transcendental(s) => s.clone(),
        }
    }

    /// The symbol `β_{i+1}` as an expression (its value in rational mode).
    pub fn symbol(&self, i: usize) -> SymExpr {
        match &self.mode {
            SymbolMode::Rational(v) => SymExpr::constant(v[i].clone()),
            SymbolMode::Transcendental(_) => {
                let mut e = vec![0u32; self.len()];
                e[i] = 1;
                SymExpr::from_terms(self.len(), [(e, BigRational::one())])
            }
        }
    }
}

/// A polynomial in the symbols with rational coefficients. Monomials in
/// independent transcendentals are linearly independent over the rationals,
/// so the coefficient map is an exact coordinate system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymExpr {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl SymExpr {
    pub fn zero(nvars: usize) -> Self {
        SymExpr { nvars, terms: BTreeMap::new() }
    }

    /// A rational constant; usable with any number of symbols.
    pub fn constant(q: BigRational) -> Self {
        Self::from_terms(0, [(Vec::new(), q)])
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut out = SymExpr::zero(nvars);
        for (mut e, c) in terms {
            e.resize(nvars, 0);
            *out.terms.entry(e).or_insert_with(BigRational::zero) += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn widened(&self, nvars: usize) -> Self {
        if self.nvars == nvars {
            return self.clone();
        }
        Self::from_terms(nvars, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when no symbol occurs.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&d| d == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.get(var).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.nvars.max(o.nvars);
        let (a, b) = (self.widened(n), o.widened(n));
        Self::from_terms(n, a.terms.into_iter().chain(b.terms))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c * k)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.nvars.max(o.nvars);
        let (a, b) = (self.widened(n), o.widened(n));
        let mut out = Vec::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.push((e, ca * cb));
            }
        }
        Self::from_terms(n, out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(BigRational::one()).widened(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().enumerate().fold(c.clone(), |acc, (i, &d)| {
                    acc * crate::num::pow(&point[i], d as i64)
                })
            })
            .sum()
    }

    /// Numeric value from shadows.
    pub fn eval_f64(&self, shadows: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().enumerate().fold(to_f64(c), |acc, (i, &d)| acc * libm::pow(shadows[i], d as f64))
            })
            .sum()
    }

    /// Human-readable form using the given symbol names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, d)| **d > 0)
                .map(|(j, d)| {
                    let name = names.get(j).cloned().unwrap_or_else(|| format!("b{}", j + 1));
                    if *d == 1 { name } else { format!("{name}^{d}") }
                })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&fmt_rational(&mag));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// A vector in `R^k` whose entries are exact symbolic expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicVector {
    pub basis: Arc<SymbolBasis>,
    pub entries: Vec<SymExpr>,
}

impl SymbolicVector {
    /// In rational mode the symbols are substituted immediately.
    pub fn new(basis: Arc<SymbolBasis>, entries: Vec<SymExpr>) -> Self {
        let s = basis.len();
        let entries = match &basis.mode {
            SymbolMode::Rational(vals) => entries
                .into_iter()
                .map(|e| SymExpr::constant(e.widened(s).eval(vals)))
                .collect(),
            SymbolMode::Transcendental(_) => entries.into_iter().map(|e| e.widened(s)).collect(),
        };
        SymbolicVector { basis, entries }
    }

    /// A vector of rational constants over the given basis.
    pub fn rational(basis: Arc<SymbolBasis>, v: &[BigRational]) -> Self {
        Self::new(basis, v.iter().map(|q| SymExpr::constant(q.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Numeric shadow; inexact by construction.
    pub fn shadow(&self) -> Vec<f64> {
        let s = self.basis.shadows();
        self.entries.iter().map(|e| e.eval_f64(&s)).collect()
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|e| e.render(&self.basis.names)).collect();
        format!("({})", parts.join(", "))
    }

    /// Integer combination `Σ c_i v_i`.
    pub fn combination(vs: &[SymbolicVector], coeffs: &[i64]) -> Result<SymbolicVector> {
        let (basis, dim) = common_shape(vs)?;
        let nv = basis.len();
        let mut out = vec![SymExpr::zero(nv); dim];
        for (v, &c) in vs.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            let k = BigRational::from_integer(c.into());
            for (o, e) in out.iter_mut().zip(&v.entries) {
                *o = o.add(&e.scale(&k));
            }
        }
        Ok(SymbolicVector { basis, entries: out })
    }
}

/// Shared basis and dimension of a nonempty generator list.
pub fn common_shape(vs: &[SymbolicVector]) -> Result<(Arc<SymbolBasis>, usize)> {
    let first = vs.first().ok_or_else(|| Error::Precondition(String::from("no generators")))?;
    for v in vs {
        if !(Arc::ptr_eq(&v.basis, &first.basis) || v.basis == first.basis) {
            return Err(Error::MixedBasis);
        }
        if v.dim() != first.dim() {
            return Err(Error::Dimension { expected: first.dim(), found: v.dim() });
        }
    }
    Ok((first.basis.clone(), first.dim()))
}
