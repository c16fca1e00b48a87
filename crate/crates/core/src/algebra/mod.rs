//! Exact arithmetic: Laurent polynomials in `q`, polynomials in `(q, T)`,
//! rational functions in `(q, T)` and rational functions in `s` over `ℚ`.

mod bipoly;
mod laurent;
mod rational_qt;
mod rational_s;

pub use bipoly::{BiPoly, Monomial};
pub use laurent::LaurentPoly;
pub use rational_qt::{CyclotomicFactor, RationalQT};
pub use rational_s::RationalS;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::fmt::{self, Write};

/// Writes `c` times the power product `vars`, e.g. `-3*q^4*T^3`, as part of a sum.
/// `first` controls whether a leading `+` is omitted.
pub(crate) fn write_term<W: Write>(out: &mut W, coeff: &BigInt, vars: &[(&str, i64)], first: bool) -> fmt::Result {
    if first {
        if coeff.is_negative() {
            out.write_str("-")?;
        }
    } else if coeff.is_negative() {
        out.write_str(" - ")?;
    } else {
        out.write_str(" + ")?;
    }
    let abs = coeff.abs();
    let mut wrote = false;
    if !abs.is_one() || vars.iter().all(|&(_, e)| e == 0) {
        write!(out, "{abs}")?;
        wrote = true;
    }
    for &(name, e) in vars {
        if e == 0 {
            continue;
        }
        if wrote {
            out.write_str("*")?;
        }
        if e == 1 {
            out.write_str(name)?;
        } else {
            write!(out, "{name}^{e}")?;
        }
        wrote = true;
    }
    Ok(())
}

/// Parses a decimal coefficient string as used in the JSON renderings.
pub(crate) fn parse_coeff(s: &str) -> crate::Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| crate::Error::Parse(format!("bad integer coefficient {s:?}")))
}

/// Parses sums of terms like `-3*q^4*T^3`, `q^-2`, `11q^2T^5`. Returns, per term,
/// the coefficient and the exponent of each variable in `vars`.
pub(crate) fn parse_terms(text: &str, vars: &[char]) -> crate::Result<Vec<(BigInt, Vec<i64>)>> {
    let err = |msg: &str| crate::Error::Parse(format!("{msg} in polynomial {text:?}"));
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err("empty input"));
    }
    let mut pos = 0;
    let mut out = Vec::new();
    let read_int = |pos: &mut usize| -> Option<String> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then(|| chars[start..*pos].iter().collect())
    };
    while pos < chars.len() {
        let mut negative = false;
        if chars[pos] == '+' || chars[pos] == '-' {
            negative = chars[pos] == '-';
            pos += 1;
        } else if !out.is_empty() {
            return Err(err("expected + or -"));
        }
        let digits = read_int(&mut pos);
        let has_digits = digits.is_some();
        let mut coeff = match digits {
            Some(d) => d.parse::<BigInt>().map_err(|_| err("bad coefficient"))?,
            None => BigInt::one(),
        };
        let mut exps = vec![0i64; vars.len()];
        let mut saw_factor = false;
        loop {
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
            }
            let Some(v) = chars.get(pos).and_then(|c| vars.iter().position(|v| v == c)) else {
                break;
            };
            pos += 1;
            let mut e = 1i64;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let neg = pos < chars.len() && chars[pos] == '-';
                if neg {
                    pos += 1;
                }
                let d = read_int(&mut pos).ok_or_else(|| err("missing exponent"))?;
                e = d.parse::<i64>().map_err(|_| err("bad exponent"))?;
                if neg {
                    e = -e;
                }
            }
            exps[v] += e;
            saw_factor = true;
        }
        if !saw_factor && (!has_digits || chars[pos - 1] == '*') {
            return Err(err("empty term"));
        }
        if pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
            return Err(err(&format!("unexpected character {:?}", chars[pos])));
        }
        if negative {
            coeff = -coeff;
        }
        out.push((coeff, exps));
    }
    Ok(out)
}

/// Splits `A / B` where `A` and `B` are products of optionally parenthesized,
/// optionally powered polynomial factors, e.g. `(q - 1)*(q + T) / ((q - T)^2*(q^2 - T^3))`.
/// Returns the factor texts with their powers for the numerator and the denominator.
#[allow(clippy::type_complexity)]
pub(crate) fn parse_quotient(text: &str) -> crate::Result<(Vec<(String, u32)>, Vec<(String, u32)>)> {
    let err = |msg: &str| crate::Error::Parse(format!("{msg} in {text:?}"));
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                if split.is_some() {
                    return Err(err("more than one '/'"));
                }
                split = Some(i);
            }
            _ => {}
        }
        if depth < 0 {
            return Err(err("unbalanced parentheses"));
        }
    }
    if depth != 0 {
        return Err(err("unbalanced parentheses"));
    }
    match split {
        None => Ok((parse_product(text)?, Vec::new())),
        Some(i) => Ok((parse_product(&text[..i])?, parse_product(&text[i + 1..])?)),
    }
}

fn parse_product(text: &str) -> crate::Result<Vec<(String, u32)>> {
    let err = |msg: &str| crate::Error::Parse(format!("{msg} in {text:?}"));
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut out = Vec::new();
    loop {
        while pos < chars.len() && (chars[pos].is_whitespace() || chars[pos] == '*') {
            pos += 1;
        }
        if pos >= chars.len() {
            break;
        }
        if chars[pos] == '(' {
            let start = pos + 1;
            let mut depth = 1;
            pos += 1;
            while depth > 0 {
                match chars.get(pos) {
                    Some('(') => depth += 1,
                    Some(')') => depth -= 1,
                    Some(_) => {}
                    None => return Err(err("unbalanced parentheses")),
                }
                pos += 1;
            }
            let inner: String = chars[start..pos - 1].iter().collect();
            let mut power = 1u32;
            let mut look = pos;
            while look < chars.len() && chars[look].is_whitespace() {
                look += 1;
            }
            if look < chars.len() && chars[look] == '^' {
                look += 1;
                while look < chars.len() && chars[look].is_whitespace() {
                    look += 1;
                }
                let s = look;
                while look < chars.len() && chars[look].is_ascii_digit() {
                    look += 1;
                }
                let digits: String = chars[s..look].iter().collect();
                power = digits.parse().map_err(|_| err("bad power"))?;
                pos = look;
            }
            if inner.contains('(') {
                for (f, k) in parse_product(&inner)? {
                    out.push((f, k * power));
                }
            } else {
                out.push((inner, power));
            }
        } else {
            let start = pos;
            while pos < chars.len() && chars[pos] != '(' {
                pos += 1;
            }
            let bare: String = chars[start..pos].iter().collect();
            let bare = bare.trim().trim_end_matches('*').trim().to_string();
            if bare.is_empty() {
                return Err(err("empty factor"));
            }
            out.push((bare, 1));
        }
    }
    if out.is_empty() {
        return Err(err("empty expression"));
    }
    Ok(out)
}
