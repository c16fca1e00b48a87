use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::write_term;
use crate::error::{Error, Result};

type Poly = Vec<BigRational>;

/// A rational function in `s` over `ℚ`, reduced by the univariate gcd with a monic
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalS {
    num: Poly,
    den: Poly,
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_scale(a: &Poly, c: &BigRational) -> Poly {
    trim(a.iter().map(|x| x * c).collect())
}

fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor").clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - 1 - db;
        let c = rem.last().expect("nonempty") / &lead;
        for (i, bc) in b.iter().enumerate() {
            rem[k + i] -= &c * bc;
        }
        quot[k] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn monic(p: &Poly) -> Poly {
    match p.last() {
        Some(l) => poly_scale(p, &l.recip()),
        None => Vec::new(),
    }
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = monic(&r);
    }
    monic(&x)
}

fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

impl RationalS {
    pub fn zero() -> Self {
        RationalS {
            num: Vec::new(),
            den: vec![BigRational::one()],
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RationalS {
            num: trim(vec![c]),
            den: vec![BigRational::one()],
        }
    }

    /// `1 / (a s + b)`.
    pub fn linear_inverse(a: i64, b: i64) -> Self {
        Self::new(vec![int(1)], vec![int(b), int(a)]).expect("nonzero linear form")
    }

    /// From ascending coefficient lists.
    pub fn new(num: Vec<BigRational>, den: Vec<BigRational>) -> Result<Self> {
        let den = trim(den);
        if den.is_empty() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Self::reduce(trim(num), den))
    }

    pub fn from_i64(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(
            num.iter().map(|&c| int(c)).collect(),
            den.iter().map(|&c| int(c)).collect(),
        )
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_empty() {
            return Self::zero();
        }
        let g = poly_gcd(&num, &den);
        let (mut n, _) = poly_divrem(&num, &g);
        let (mut d, _) = poly_divrem(&den, &g);
        let lead = d.last().expect("nonzero").recip();
        n = poly_scale(&n, &lead);
        d = poly_scale(&d, &lead);
        RationalS { num: n, den: d }
    }

    /// Sum of `c * Π 1/(a s + b)` over the items, over one common denominator.
    pub fn sum_linear_products(items: &[(BigRational, Vec<(i64, i64)>)]) -> Result<Self> {
        // primitive linear factor (a, b) -> max multiplicity
        let mut lcd: BTreeMap<(i64, i64), u32> = BTreeMap::new();
        let mut prepared = Vec::with_capacity(items.len());
        for (c, lins) in items {
            if c.is_zero() {
                continue;
            }
            let mut scale = c.clone();
            let mut mult: BTreeMap<(i64, i64), u32> = BTreeMap::new();
            for &(a, b) in lins {
                if a == 0 && b == 0 {
                    return Err(Error::Parse("zero linear factor".into()));
                }
                let g = a.gcd(&b) * if a < 0 || (a == 0 && b < 0) { -1 } else { 1 };
                scale /= int(g);
                *mult.entry((a / g, b / g)).or_insert(0) += 1;
            }
            for (&f, &m) in &mult {
                let e = lcd.entry(f).or_insert(0);
                *e = (*e).max(m);
            }
            prepared.push((scale, mult));
        }
        let lin = |(a, b): (i64, i64)| vec![int(b), int(a)];
        let mut num: Poly = Vec::new();
        for (scale, mult) in prepared {
            let mut term = vec![scale];
            for (&f, &m) in &lcd {
                for _ in mult.get(&f).copied().unwrap_or(0)..m {
                    term = poly_mul(&term, &lin(f));
                }
            }
            num = poly_add(&num, &term);
        }
        let mut den = vec![int(1)];
        for (&f, &m) in &lcd {
            for _ in 0..m {
                den = poly_mul(&den, &lin(f));
            }
        }
        Self::new(num, den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Ascending numerator coefficients (denominator monic).
    pub fn numerator(&self) -> &[BigRational] {
        &self.num
    }

    pub fn denominator(&self) -> &[BigRational] {
        &self.den
    }

    pub fn value_at_0(&self) -> Result<BigRational> {
        let d0 = self.den[0].clone();
        if d0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        Ok(self.num.first().cloned().unwrap_or_else(BigRational::zero) / d0)
    }

    /// `(N'(0) D(0) - N(0) D'(0)) / D(0)^2`.
    pub fn derivative_at_0(&self) -> Result<BigRational> {
        let coeff = |p: &Poly, i: usize| p.get(i).cloned().unwrap_or_else(BigRational::zero);
        let d0 = coeff(&self.den, 0);
        if d0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        let (n0, n1, d1) = (coeff(&self.num, 0), coeff(&self.num, 1), coeff(&self.den, 1));
        Ok((n1 * &d0 - n0 * d1) / (&d0 * &d0))
    }

    /// Numerator and denominator scaled together to integer coefficients with no
    /// common factor, denominator leading coefficient positive.
    pub fn integer_form(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut l = BigInt::one();
        for c in self.num.iter().chain(&self.den) {
            l = l.lcm(c.denom());
        }
        let lr = BigRational::from_integer(l);
        let to_int = |p: &Poly| -> Vec<BigInt> { p.iter().map(|c| (c * &lr).to_integer()).collect() };
        let (mut n, mut d) = (to_int(&self.num), to_int(&self.den));
        let mut g = BigInt::zero();
        for c in n.iter().chain(&d) {
            g = g.gcd(c);
        }
        if !g.is_zero() && !g.is_one() {
            n.iter_mut().for_each(|c| *c /= &g);
            d.iter_mut().for_each(|c| *c /= &g);
        }
        (n, d)
    }

    pub fn to_json(&self) -> Value {
        let (n, d) = self.integer_form();
        let enc = |p: &[BigInt]| -> Vec<Value> {
            p.iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| json!([e, c.to_string()]))
                .collect()
        };
        json!({ "num": enc(&n), "den": enc(&d) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("expected {\"num\": [[sexp, \"coeff\"], ...], \"den\": ...}".into());
        let dec = |key: &str| -> Result<Poly> {
            let list = v.get(key).and_then(Value::as_array).ok_or_else(bad)?;
            let mut p: Poly = Vec::new();
            for t in list {
                let t = t.as_array().filter(|t| t.len() == 2).ok_or_else(bad)?;
                let e = t[0].as_u64().ok_or_else(bad)? as usize;
                let c = super::parse_coeff(t[1].as_str().ok_or_else(bad)?)?;
                if p.len() <= e {
                    p.resize(e + 1, BigRational::zero());
                }
                p[e] += BigRational::from_integer(c);
            }
            Ok(p)
        };
        Self::new(dec("num")?, dec("den")?)
    }
}

fn int_poly_text(p: &[BigInt]) -> String {
    let mut s = String::new();
    let mut first = true;
    for (e, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        write_term(&mut s, c, &[("s", e as i64)], first).expect("writing to a String");
        first = false;
    }
    if first {
        s.push('0');
    }
    s
}

fn divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.abs().to_i64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut k = 1i64;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            if k != n / k {
                out.push(n / k);
            }
        }
        k += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// `(a, b)` standing for `a s + b`, with its multiplicity.
type LinearFactor = ((i64, i64), u32);

/// Splits an integer polynomial into `content * Π (a s + b)^m` when it factors
/// completely into integer linear forms.
fn linear_factorization(p: &[BigInt]) -> Option<(BigInt, Vec<LinearFactor>)> {
    let mut rest: Vec<BigInt> = p.to_vec();
    let mut factors: BTreeMap<(i64, i64), u32> = BTreeMap::new();
    while rest.len() > 1 {
        if rest[0].is_zero() {
            *factors.entry((1, 0)).or_insert(0) += 1;
            rest.remove(0);
            continue;
        }
        let leads = divisors(rest.last()?)?;
        let consts = divisors(&rest[0])?;
        let mut found = None;
        'search: for &a in &leads {
            for &b in &consts {
                for b in [b, -b] {
                    if a.gcd(&b) != 1 {
                        continue;
                    }
                    // root s = -b/a: evaluate a^deg * p(-b/a) exactly
                    let deg = rest.len() - 1;
                    let mut acc = BigInt::zero();
                    for (i, c) in rest.iter().enumerate() {
                        acc += c * BigInt::from(-b).pow(i as u32) * BigInt::from(a).pow((deg - i) as u32);
                    }
                    if acc.is_zero() {
                        found = Some((a, b));
                        break 'search;
                    }
                }
            }
        }
        let (a, b) = found?;
        // synthetic division by (a s + b), exact over the integers by Gauss's lemma
        let deg = rest.len() - 1;
        let mut quot = vec![BigInt::zero(); deg];
        let mut carry = BigInt::zero();
        for i in (0..deg).rev() {
            let c = &rest[i + 1] - &carry;
            let (qc, r) = c.div_rem(&BigInt::from(a));
            if !r.is_zero() {
                return None;
            }
            carry = &qc * BigInt::from(b);
            quot[i] = qc;
        }
        *factors.entry((a, b)).or_insert(0) += 1;
        rest = quot;
    }
    let content = rest.first()?.clone();
    Some((content, factors.into_iter().collect()))
}

impl fmt::Display for RationalS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integer_form();
        let num = int_poly_text(&n);
        if d.len() == 1 && d[0].is_one() {
            return f.write_str(&num);
        }
        let compound = n.iter().filter(|c| !c.is_zero()).count() > 1;
        if compound {
            write!(f, "({num})")?;
        } else {
            f.write_str(&num)?;
        }
        let den = match linear_factorization(&d) {
            Some((content, factors)) => {
                let mut parts: Vec<String> = Vec::new();
                if !content.is_one() {
                    parts.push(content.to_string());
                }
                for ((a, b), m) in factors {
                    let lin = int_poly_text(&[BigInt::from(b), BigInt::from(a)]);
                    let lin = if b == 0 { lin } else { format!("({lin})") };
                    parts.push(if m == 1 { lin } else { format!("{lin}^{m}") });
                }
                parts.join("*")
            }
            None => format!("({})", int_poly_text(&d)),
        };
        write!(f, " / {den}")
    }
}

impl fmt::Debug for RationalS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &RationalS {
    type Output = RationalS;
    fn add(self, rhs: &RationalS) -> RationalS {
        if self.den == rhs.den {
            return RationalS::reduce(poly_add(&self.num, &rhs.num), self.den.clone());
        }
        RationalS::reduce(
            poly_add(&poly_mul(&self.num, &rhs.den), &poly_mul(&rhs.num, &self.den)),
            poly_mul(&self.den, &rhs.den),
        )
    }
}

impl Neg for &RationalS {
    type Output = RationalS;
    fn neg(self) -> RationalS {
        RationalS {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalS {
    type Output = RationalS;
    fn sub(self, rhs: &RationalS) -> RationalS {
        self + &(-rhs)
    }
}

impl Mul for &RationalS {
    type Output = RationalS;
    fn mul(self, rhs: &RationalS) -> RationalS {
        RationalS::reduce(poly_mul(&self.num, &rhs.num), poly_mul(&self.den, &rhs.den))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalS {
            type Output = RationalS;
            fn $m(self, rhs: RationalS) -> RationalS {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn parse_s_poly(text: &str) -> Result<Poly> {
    let mut p: Poly = Vec::new();
    for (c, e) in super::parse_terms(text, &['s'])? {
        if e[0] < 0 {
            return Err(Error::Parse(format!("negative exponent in {text:?}")));
        }
        let mut mono = vec![BigRational::zero(); e[0] as usize + 1];
        mono[e[0] as usize] = BigRational::from_integer(c);
        p = poly_add(&p, &mono);
    }
    Ok(p)
}

impl std::str::FromStr for RationalS {
    type Err = Error;

    /// Parses `num / den` with integer coefficients, e.g. `(2*s + 3) / (s + 1)^2*(3*s + 2)`.
    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = super::parse_quotient(s)?;
        let product = |factors: Vec<(String, u32)>| -> Result<Poly> {
            let mut p = vec![int(1)];
            for (f, k) in factors {
                let g = parse_s_poly(&f)?;
                for _ in 0..k {
                    p = poly_mul(&p, &g);
                }
            }
            Ok(p)
        };
        Self::new(product(num)?, product(den)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        int(n)
    }

    #[test]
    fn taylor_examples() {
        let x = RationalS::linear_inverse(1, 1);
        assert_eq!(x.value_at_0().unwrap(), r(1));
        assert_eq!(x.derivative_at_0().unwrap(), r(-1));
        let y = RationalS::from_i64(&[3, 2], &[3, 1]).unwrap();
        assert_eq!(y.value_at_0().unwrap(), r(1));
        let z = RationalS::from_i64(&[1], &[0, 1]).unwrap();
        assert_eq!(z.value_at_0().unwrap_err(), Error::PoleAtZero);
        assert_eq!(z.derivative_at_0().unwrap_err(), Error::PoleAtZero);
    }

    #[test]
    fn reduction_by_gcd() {
        // (s^2 - 1)/(s^2 + 2s + 1) = (s - 1)/(s + 1)
        let x = RationalS::from_i64(&[-1, 0, 1], &[1, 2, 1]).unwrap();
        assert_eq!(x, RationalS::from_i64(&[-1, 1], &[1, 1]).unwrap());
        assert_eq!(x.denominator().last().unwrap(), &r(1));
    }

    #[test]
    fn arithmetic() {
        let a = RationalS::linear_inverse(1, 1);
        let b = RationalS::linear_inverse(2, 1);
        let s = &a + &b;
        assert_eq!(s, RationalS::from_i64(&[2, 3], &[1, 3, 2]).unwrap());
        assert_eq!(&s - &b, a);
        assert_eq!(&a * &RationalS::from_i64(&[1, 1], &[1]).unwrap(), RationalS::one());
    }

    #[test]
    fn linear_products_match_termwise_sum() {
        let items = vec![(r(2), vec![(2, 2), (3, 1)]), (r(-1), vec![(1, 1)]), (r(5), vec![])];
        let fast = RationalS::sum_linear_products(&items).unwrap();
        let mut slow = RationalS::zero();
        for (c, lins) in &items {
            let mut t = RationalS::constant(c.clone());
            for &(a, b) in lins {
                t = &t * &RationalS::linear_inverse(a, b);
            }
            slow = &slow + &t;
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn display_factors_denominator() {
        let x = RationalS::sum_linear_products(&[(r(1), vec![(1, 1), (1, 1), (3, 2)])]).unwrap();
        assert_eq!(x.to_string(), "1 / (s + 1)^2*(3*s + 2)");
        let y = RationalS::from_i64(&[1, -2], &[4]).unwrap();
        assert_eq!(y.to_string(), "(-2*s + 1) / 4");
        assert_eq!(RationalS::from_i64(&[3], &[1]).unwrap().to_string(), "3");
        let z = RationalS::from_i64(&[1], &[1, 0, 1]).unwrap();
        assert_eq!(z.to_string(), "1 / (s^2 + 1)");
    }

    #[test]
    fn json_round_trip() {
        let x = RationalS::from_i64(&[72, 162, -29], &[12, 7, 1]).unwrap();
        assert_eq!(RationalS::from_json(&x.to_json()).unwrap(), x);
    }
}
