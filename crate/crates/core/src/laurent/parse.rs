use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::One;

use super::LaurentPoly;
use crate::error::{Error, Result};

/// Parses sums of terms `c`, `c*x^k`, `cx^k`, `x`, `x^-k`; whitespace is ignored.
pub fn parse_laurent(s: &str) -> Result<LaurentPoly> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse(String::from("empty polynomial")));
    }
    let bytes = t.as_bytes();
    let mut terms = alloc::vec::Vec::new();
    let mut start = 0;
    for i in 1..=bytes.len() {
        let at_end = i == bytes.len();
        let split = !at_end && (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'(';
        if at_end || split {
            terms.push(parse_term(&t[start..i], s)?);
            start = i;
        }
    }
    Ok(LaurentPoly::from_terms(terms))
}

fn parse_term(term: &str, whole: &str) -> Result<(i64, BigInt)> {
    let bad = || Error::Parse(format!("bad term {term:?} in {whole:?}"));
    let (neg, body) = match term.as_bytes().first() {
        Some(b'+') => (false, &term[1..]),
        Some(b'-') => (true, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coef, exp) = match body.find('x') {
        None => (body.parse::<BigInt>().map_err(|_| bad())?, 0),
        Some(pos) => {
            let cpart = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
            let coef = if cpart.is_empty() {
                BigInt::one()
            } else {
                cpart.parse::<BigInt>().map_err(|_| bad())?
            };
            let rest = &body[pos + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                let e = rest.strip_prefix('^').ok_or_else(bad)?;
                let e = e.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(e);
                e.parse::<i64>().map_err(|_| bad())?
            };
            (coef, exp)
        }
    };
    if coef.sign() == num_bigint::Sign::Minus && !term.starts_with(['+', '-']) {
        // a bare "-" inside the coefficient digits is not part of the grammar
        return Err(bad());
    }
    Ok((exp, if neg { -coef } else { coef }))
}
