//! Small helpers around `BigInt` / `BigRational`.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// An integer as a rational.
pub fn rint(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Parses `"3"`, `"-7/4"` or a finite decimal such as `"0.05"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || fp.is_empty() {
            return Err(bad());
        }
        let whole: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        let mag = BigRational::new(whole * &scale + frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// `"n/d"` or `"n"` for integers.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest `f64`; saturates to infinity for huge values.
pub fn to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        return v;
    }
    // Fall back to scaling when numerator and denominator are both huge.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 0 {
        q / rint(BigInt::one() << (shift as usize))
    } else {
        q * rint(BigInt::one() << ((-shift) as usize))
    };
    let base = scaled.to_f64().unwrap_or(0.0);
    base * libm::pow(2.0, shift as f64)
}

/// Exact value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// `floor(q)` as an integer.
pub fn floor(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// `ceil(q)` as an integer.
pub fn ceil(q: &BigRational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Nearest integer, ties rounded up.
pub fn round(q: &BigRational) -> BigInt {
    floor(&(q + rat(1, 2)))
}

/// Largest rational `c` with every input in `cZ` (zero when all inputs vanish).
pub fn rational_gcd<'a>(vals: impl IntoIterator<Item = &'a BigRational>) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in vals {
        if v.is_zero() {
            continue;
        }
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    BigRational::new(num, den)
}

/// Inverse of `a` modulo `m > 0`, in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// `q^e` for a signed exponent.
pub fn pow(q: &BigRational, e: i64) -> BigRational {
    let mut out = BigRational::one();
    let mut base = if e < 0 { q.recip() } else { q.clone() };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            out *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    out
}

/// Absolute value helper that reads better at call sites.
pub fn abs(q: &BigRational) -> BigRational {
    q.abs()
}

/// Exponent `e` such that `base^-e < eps`; `eps` must be positive.
pub fn precision_for(eps: &BigRational, base: &BigInt) -> u32 {
    let mut e = 0u32;
    let mut p = BigInt::one();
    while BigRational::new(BigInt::one(), p.clone()) >= *eps {
        p *= base;
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational(" -7 / 4 ").unwrap(), rat(-7, 4));
        assert_eq!(parse_rational("0.05").unwrap(), rat(1, 20));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(fmt_rational(&rat(6, 4)), "3/2");
        assert_eq!(fmt_rational(&rat(-4, 2)), "-2");
    }

    #[test]
    fn rounding() {
        assert_eq!(floor(&rat(-1, 2)), BigInt::from(-1));
        assert_eq!(ceil(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(round(&rat(5, 2)), BigInt::from(3));
    }

    #[test]
    fn gcd_of_rationals() {
        let v = [rat(1, 2), rat(1, 4), rat(3, 8)];
        assert_eq!(rational_gcd(v.iter()), rat(1, 8));
        assert!(rational_gcd([].iter()).is_zero());
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(mod_inverse(&BigInt::from(2), &BigInt::from(3)), Some(BigInt::from(2)));
        assert_eq!(mod_inverse(&BigInt::from(-4), &BigInt::from(9)), Some(BigInt::from(2)));
        assert_eq!(mod_inverse(&BigInt::from(2), &BigInt::from(4)), None);
    }

    #[test]
    fn huge_to_f64() {
        let big = BigInt::one() << 3000usize;
        let q = BigRational::new(big.clone() * 3, big);
        assert!((to_f64(&q) - 3.0).abs() < 1e-12);
    }
}
