use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{parse_coeff, parse_terms, write_term};
use crate::error::{Error, Result};

/// A Laurent polynomial in `q` with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial<C: Into<BigInt>>(c: C, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q - 1`.
    pub fn q_minus_one() -> Self {
        Self::from_coeffs(&[-1, 1])
    }

    /// Polynomial from coefficients of `q^0, q^1, ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (e as i64, BigInt::from(c))))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// The q-analogue `[n]_q = 1 + q + ... + q^{n-1}`, with `[0]_q = 0`.
    pub fn q_integer(n: usize) -> Self {
        Self::from_terms((0..n as i64).map(|e| (e, BigInt::one())))
    }

    pub(crate) fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Value at an integer point `q = x`; negative exponents need `x = ±1`.
    pub fn eval_i64(&self, x: i64) -> Option<BigInt> {
        let mut total = BigInt::zero();
        for (&e, c) in &self.terms {
            let v = if e >= 0 {
                BigInt::from(x).pow(e as u32)
            } else if x == 1 || x == -1 {
                BigInt::from(x).pow((-e) as u32)
            } else {
                return None;
            };
            total += c * v;
        }
        Some(total)
    }

    /// `p(q^{-1})`.
    pub fn substitute_inverse(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `q^k * p`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `self / d`, failing unless the quotient is again a Laurent polynomial.
    pub fn exact_div(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(d_top), Some(d_low)) = (d.degree(), d.min_degree()) else {
            return Err(Error::InexactDivision);
        };
        let Some(a_low) = self.min_degree() else {
            return Ok(Self::zero());
        };
        let lead = &d.terms[&d_top];
        let floor = a_low - d_low;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(top) = rem.degree() {
            let e = top - d_top;
            if e < floor {
                return Err(Error::InexactDivision);
            }
            let (c, r) = rem.terms[&top].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (&de, dc) in &d.terms {
                rem.add_term(de + e, -(dc * &c));
            }
            quot.add_term(e, c);
        }
        Ok(quot)
    }

    /// Renders with a variable name other than `q`.
    pub fn display_in(&self, var: &str) -> String {
        let mut s = String::new();
        if self.is_zero() {
            return "0".into();
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut s, c, &[(var, e)], i == 0).expect("writing to a String");
        }
        s
    }

    /// `{"terms": [[qexp, 0, "coeff"], ...]}` in display order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| json!([e, 0, c.to_string()]))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut p = Self::zero();
        for (qe, te, c) in json_terms(v)? {
            if te != 0 {
                return Err(Error::Parse("T appears in a polynomial in q alone".into()));
            }
            p.add_term(qe, c);
        }
        Ok(p)
    }
}

/// Reads the `[[qexp, Texp, "coeff"], ...]` list shared by the JSON renderings.
pub(crate) fn json_terms(v: &Value) -> Result<Vec<(i64, i64, BigInt)>> {
    let bad = || Error::Parse("expected {\"terms\": [[qexp, Texp, \"coeff\"], ...]}".into());
    let list = v.get("terms").and_then(Value::as_array).ok_or_else(bad)?;
    list.iter()
        .map(|t| {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(bad)?;
            let qe = t[0].as_i64().ok_or_else(bad)?;
            let te = t[1].as_i64().ok_or_else(bad)?;
            let c = match &t[2] {
                Value::String(s) => parse_coeff(s)?,
                Value::Number(n) => parse_coeff(&n.to_string())?,
                _ => return Err(bad()),
            };
            Ok((qe, te, c))
        })
        .collect()
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the canonical text form, e.g. `q^4 - 7*q^3 + 10` or `2*q^-2`.
    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::from_terms(
            parse_terms(s, &['q'])?.into_iter().map(|(c, e)| (e[0], c)),
        ))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("q"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut out = LaurentPoly::zero();
        for p in iter {
            out += &p;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    #[test]
    fn multiply_and_divide() {
        assert_eq!(p(&[-1, 1]) * p(&[1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[2, -3, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[-2, 1]));
        assert_eq!(
            p(&[1, -3, 1]).exact_div(&p(&[-1, 1])).unwrap_err(),
            Error::InexactDivision
        );
        assert_eq!(
            p(&[1]).exact_div(&LaurentPoly::zero()).unwrap_err(),
            Error::InexactDivision
        );
    }

    #[test]
    fn laurent_division_with_negative_exponents() {
        let a = LaurentPoly::monomial(1, -2) * p(&[-1, 0, 1]);
        let d = LaurentPoly::monomial(1, -1) * p(&[1, 1]);
        assert_eq!(a.exact_div(&d).unwrap(), LaurentPoly::monomial(1, -1) * p(&[-1, 1]));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p(&[10, -23, 19, -7, 1]).to_string(), "q^4 - 7*q^3 + 19*q^2 - 23*q + 10");
        assert_eq!(LaurentPoly::monomial(-2, -2).to_string(), "-2*q^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p(&[-1, 1]).to_string(), "q - 1");
    }

    #[test]
    fn json_round_trip() {
        let x = p(&[10, -23, 19, -7, 1]).shift(-3);
        assert_eq!(LaurentPoly::from_json(&x.to_json()).unwrap(), x);
        assert_eq!(
            x.to_json().to_string(),
            r#"{"terms":[[1,0,"1"],[0,0,"-7"],[-1,0,"19"],[-2,0,"-23"],[-3,0,"10"]]}"#
        );
    }

    #[test]
    fn parse_text() {
        let x: LaurentPoly = "q^4 - 7*q^3 + 19*q^2 - 23*q + 10".parse().unwrap();
        assert_eq!(x, p(&[10, -23, 19, -7, 1]));
        assert_eq!(x.to_string().parse::<LaurentPoly>().unwrap(), x);
        assert_eq!("-2q^-2".parse::<LaurentPoly>().unwrap(), LaurentPoly::monomial(-2, -2));
        assert!("q +".parse::<LaurentPoly>().is_err());
        assert!("q x".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn q_integers() {
        assert!(LaurentPoly::q_integer(0).is_zero());
        assert!(LaurentPoly::q_integer(1).is_one());
        assert_eq!(LaurentPoly::q_integer(3), p(&[1, 1, 1]));
        assert_eq!(LaurentPoly::q_integer(4).eval_one(), BigInt::from(4));
    }

    #[test]
    fn evaluation_and_inversion() {
        let x = p(&[2, -3, 1]);
        assert_eq!(x.eval_i64(2), Some(BigInt::zero()));
        assert_eq!(x.substitute_inverse().substitute_inverse(), x);
        assert_eq!(x.substitute_inverse().degree(), Some(0));
        assert_eq!(x.substitute_inverse().min_degree(), Some(-2));
    }
}
