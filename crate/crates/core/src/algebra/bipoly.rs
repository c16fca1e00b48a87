use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::laurent::json_terms;
use super::{parse_terms, write_term, LaurentPoly};
use crate::error::{Error, Result};

/// The monomial `q^q * T^t`. The derived order compares the `T` exponent first,
/// so the largest key of a polynomial is its lexicographic leading monomial.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub t: u32,
    pub q: u32,
}

impl Monomial {
    pub fn new(q: u32, t: u32) -> Self {
        Monomial { t, q }
    }

    fn divides(self, other: Monomial) -> bool {
        self.t <= other.t && self.q <= other.q
    }
}

/// A polynomial in `q` and `T` with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * q^qe * T^te`.
    pub fn monomial<C: Into<BigInt>>(c: C, qe: u32, te: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(qe, te), c.into());
        p
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// From `(qexp, Texp, coeff)` triples; repeated monomials are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (qe, te, c) in terms {
            p.add_term(Monomial::new(qe, te), c);
        }
        p
    }

    /// A polynomial in `q` alone, with all exponents nonnegative.
    pub fn from_q_poly(p: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            if e < 0 {
                return Err(Error::Invariant(format!("negative exponent in {p}")));
            }
            out.add_term(Monomial::new(e as u32, 0), c.clone());
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    /// Terms in ascending lexicographic order (`T` exponent first).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &BigInt)> + '_ {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::default()).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, qe: u32, te: u32) -> BigInt {
        self.terms.get(&Monomial::new(qe, te)).cloned().unwrap_or_default()
    }

    /// Lexicographic leading term, `T` compared first.
    pub fn lead(&self) -> Option<(Monomial, &BigInt)> {
        self.terms.iter().next_back().map(|(&m, c)| (m, c))
    }

    pub fn max_q(&self) -> u32 {
        self.terms.keys().map(|m| m.q).max().unwrap_or(0)
    }

    pub fn max_t(&self) -> u32 {
        self.terms.keys().map(|m| m.t).max().unwrap_or(0)
    }

    /// Largest monomial dividing every term (`q^0 T^0` for zero).
    pub fn monomial_content(&self) -> Monomial {
        let q = self.terms.keys().map(|m| m.q).min().unwrap_or(0);
        let t = self.terms.keys().map(|m| m.t).min().unwrap_or(0);
        Monomial::new(q, t)
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&m, x)| (m, x * c)).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&m, x)| (m, x / c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (Monomial::new(k.q + m.q, k.t + m.t), c.clone()))
                .collect(),
        }
    }

    /// Divides by a monomial that divides every term.
    pub fn div_monomial(&self, m: Monomial) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| {
                    debug_assert!(m.divides(k));
                    (Monomial::new(k.q - m.q, k.t - m.t), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// `q^{deg_q} T^{deg_T} p(1/q, 1/T)` where the degrees are those of `self`.
    pub fn reverse(&self) -> Self {
        let (dq, dt) = (self.max_q(), self.max_t());
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (Monomial::new(dq - m.q, dt - m.t), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d` by leading-term division.
    pub fn exact_div(&self, d: &BiPoly) -> Result<BiPoly> {
        let (d_lead, d_coeff) = d.lead().ok_or(Error::InexactDivision)?;
        if d.terms.len() == 1 {
            // monomial divisor
            let mut out = Self::zero();
            for (&m, c) in &self.terms {
                let (quot, r) = c.div_rem(d_coeff);
                if !d_lead.divides(m) || !r.is_zero() {
                    return Err(Error::InexactDivision);
                }
                out.terms.insert(Monomial::new(m.q - d_lead.q, m.t - d_lead.t), quot);
            }
            return Ok(out);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.lead() {
            if !d_lead.divides(m) {
                return Err(Error::InexactDivision);
            }
            let (qc, r) = c.div_rem(d_coeff);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let shift = Monomial::new(m.q - d_lead.q, m.t - d_lead.t);
            for (&dm, dc) in &d.terms {
                rem.add_term(Monomial::new(dm.q + shift.q, dm.t + shift.t), -(dc * &qc));
            }
            quot.add_term(shift, qc);
        }
        Ok(quot)
    }

    /// `p(q, 0)`.
    pub fn at_t_zero(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .take_while(|(m, _)| m.t == 0)
                .map(|(m, c)| (m.q as i64, c.clone())),
        )
    }

    /// `p(1, T)` as a polynomial in `T` (returned with `q` standing for `T`).
    pub fn at_q_one(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (m.t as i64, c.clone())))
    }

    /// Coefficients of `T^0, T^1, ..., T^{deg_T}` as polynomials in `q`.
    pub fn t_coefficients(&self) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); self.max_t() as usize + 1];
        if self.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out[m.t as usize].add_term(m.q as i64, c.clone());
        }
        out
    }

    /// Terms in display order: descending total degree, ties by descending `q` exponent.
    pub fn display_order(&self) -> Vec<(Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| (b.0.q + b.0.t).cmp(&(a.0.q + a.0.t)).then(b.0.q.cmp(&a.0.q)));
        v
    }

    /// Whether the display form has more than one term (and so needs parentheses as a factor).
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }

    /// Leading coefficient in display order is negative.
    pub fn display_leads_negative(&self) -> bool {
        self.display_order().first().is_some_and(|(_, c)| c.is_negative())
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .display_order()
            .into_iter()
            .map(|(m, c)| json!([m.q, m.t, c.to_string()]))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut p = Self::zero();
        for (qe, te, c) in json_terms(v)? {
            if qe < 0 || te < 0 {
                return Err(Error::Parse("negative exponent in a polynomial".into()));
            }
            p.add_term(Monomial::new(qe as u32, te as u32), c);
        }
        Ok(p)
    }
}

impl std::str::FromStr for BiPoly {
    type Err = Error;

    /// Parses text such as `3*q^4*T^3 - q^3*T^4 + 10`; the `*` may be omitted.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Self::zero();
        for (c, e) in parse_terms(s, &['q', 'T'])? {
            if e[0] < 0 || e[1] < 0 {
                return Err(Error::Parse(format!("negative exponent in {s:?}")));
            }
            p.add_term(Monomial::new(e[0] as u32, e[1] as u32), c);
        }
        Ok(p)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            write_term(&mut s, c, &[("q", m.q as i64), ("T", m.t as i64)], i == 0)?;
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (&m, c) in &rhs.terms {
            self.add_term(m, c.clone());
        }
    }
}

impl SubAssign<&BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &BiPoly) {
        for (&m, c) in &rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &rhs.terms {
                out.add_term(Monomial::new(m1.q + m2.q, m1.t + m2.t), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}
