use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::{BiPoly, LaurentPoly, Monomial};
use crate::error::{Error, Result};

/// The homogenized cyclotomic polynomial `Y^{φ(d)} Φ_d(X/Y)` at `X = q^b`, `Y = T^a`
/// with `gcd(a, b) = 1` (or `b = 0`, `a = 1`). Every binomial `q^b - T^a` is a
/// product of such factors, and `d = 1` gives `q^b - T^a` itself.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicFactor {
    pub a: u32,
    pub b: u32,
    pub d: u32,
}

impl CyclotomicFactor {
    /// The factors of `q^b - T^a`, for `a >= 1`.
    pub fn of_binomial(a: u32, b: u32) -> Vec<CyclotomicFactor> {
        assert!(a >= 1, "binomial q^b - T^a needs a >= 1");
        let g = a.gcd(&b);
        (1..=g)
            .filter(|d| g.is_multiple_of(*d))
            .map(|d| CyclotomicFactor { a: a / g, b: b / g, d })
            .collect()
    }

    /// `φ(d)`, the degree of the factor in `(X, Y)`.
    pub fn phi(self) -> u32 {
        (1..=self.d).filter(|k| k.gcd(&self.d) == 1).count() as u32
    }

    pub fn poly(self) -> BiPoly {
        FACTOR_CACHE.with(|cache| {
            cache
                .borrow_mut()
                .entry(self)
                .or_insert_with(|| {
                    let c = cyclotomic(self.d);
                    let phi = c.degree().unwrap_or(0) as u32;
                    BiPoly::from_terms(
                        c.terms()
                            .map(|(k, v)| (self.b * k as u32, self.a * (phi - k as u32), v.clone())),
                    )
                })
                .clone()
        })
    }
}

thread_local! {
    static FACTOR_CACHE: RefCell<HashMap<CyclotomicFactor, BiPoly>> = RefCell::new(HashMap::new());
}

/// `Φ_d(x)` as a polynomial in `x` (rendered with `q`).
fn cyclotomic(d: u32) -> LaurentPoly {
    let mut p = LaurentPoly::monomial(1, d as i64) - LaurentPoly::one();
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        p = p
            .exact_div(&cyclotomic(e))
            .expect("x^d - 1 is divisible by every Φ_e with e | d");
    }
    p
}

/// An element of `ℚ(q, T)` kept with a factored denominator:
///
/// `num * q^i * T^j / (rest * Π f^m)`
///
/// where the `f` are [`CyclotomicFactor`]s. Zeta functions only ever produce
/// denominators of this shape, so sums can use a least common denominator by
/// comparing multiplicities instead of a multivariate gcd. Equality is decided
/// by cross-multiplication, never by the stored form.
#[derive(Clone)]
pub struct RationalQT {
    num: BiPoly,
    shift: (i64, i64),
    rest: BiPoly,
    factors: BTreeMap<CyclotomicFactor, u32>,
}

impl RationalQT {
    pub fn zero() -> Self {
        RationalQT {
            num: BiPoly::zero(),
            shift: (0, 0),
            rest: BiPoly::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_bipoly(BiPoly::one())
    }

    pub fn from_bipoly(p: BiPoly) -> Self {
        let mut r = Self::zero();
        r.num = p;
        r.normalized()
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let low = p.min_degree().unwrap_or(0);
        let lifted = BiPoly::from_q_poly(&p.shift(-low)).expect("shifted to nonnegative exponents");
        let mut r = Self::from_bipoly(lifted);
        if !r.num.is_zero() {
            r.shift.0 += low;
        }
        r
    }

    /// `q^qe * T^te` with arbitrary integer exponents.
    pub fn monomial(qe: i64, te: i64) -> Self {
        let mut r = Self::one();
        r.shift = (qe, te);
        r
    }

    /// `num / den` for arbitrary polynomials.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(RationalQT {
            num,
            shift: (0, 0),
            rest: den,
            factors: BTreeMap::new(),
        }
        .normalized())
    }

    /// `1 / (q^b - T^a)`.
    pub fn binomial_inverse(a: u32, b: u32) -> Self {
        let mut r = Self::one();
        for f in CyclotomicFactor::of_binomial(a, b) {
            *r.factors.entry(f).or_insert(0) += 1;
        }
        r
    }

    /// `(q - 1) q^{-b} T^a / (1 - q^{-b} T^a) = (q - 1) T^a / (q^b - T^a)`.
    pub fn generator(a: u32, b: u32) -> Self {
        let mut r = Self::binomial_inverse(a, b);
        r.num = BiPoly::q() - BiPoly::one();
        r.shift = (0, a as i64);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn factors(&self) -> &BTreeMap<CyclotomicFactor, u32> {
        &self.factors
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let mc = self.num.monomial_content();
        if mc != Monomial::default() {
            self.num = self.num.div_monomial(mc);
            self.shift.0 += mc.q as i64;
            self.shift.1 += mc.t as i64;
        }
        let rc = self.rest.monomial_content();
        if rc != Monomial::default() {
            self.rest = self.rest.div_monomial(rc);
            self.shift.0 -= rc.q as i64;
            self.shift.1 -= rc.t as i64;
        }
        let g = self.num.content().gcd(&self.rest.content());
        if !g.is_one() {
            self.num = self.num.div_scalar(&g);
            self.rest = self.rest.div_scalar(&g);
        }
        if !self.rest.is_one() {
            if let Ok(q) = self.num.exact_div(&self.rest) {
                self.num = q;
                self.rest = BiPoly::one();
            } else {
                let keys: Vec<CyclotomicFactor> = self.factors.keys().copied().collect();
                for f in keys {
                    let fp = f.poly();
                    while let Ok(q) = self.rest.exact_div(&fp) {
                        self.rest = q;
                        *self.factors.get_mut(&f).expect("listed") += 1;
                    }
                }
            }
        }
        let keys: Vec<CyclotomicFactor> = self.factors.keys().copied().collect();
        for f in keys {
            let fp = f.poly();
            let m = self.factors.get_mut(&f).expect("listed");
            while *m > 0 {
                match self.num.exact_div(&fp) {
                    Ok(q) => {
                        self.num = q;
                        *m -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        self.factors.retain(|_, m| *m > 0);
        if self.rest.lead().is_some_and(|(_, c)| c.is_negative()) {
            self.num = -&self.num;
            self.rest = -&self.rest;
        }
        self
    }

    fn factor_power(f: CyclotomicFactor, m: u32, cache: &mut HashMap<(CyclotomicFactor, u32), BiPoly>) -> BiPoly {
        cache.entry((f, m)).or_insert_with(|| f.poly().pow(m)).clone()
    }

    /// Sum of many terms over one least common denominator, normalized once.
    pub fn sum_all<'a, I: IntoIterator<Item = &'a RationalQT>>(items: I) -> RationalQT {
        let items: Vec<&RationalQT> = items.into_iter().filter(|x| !x.is_zero()).collect();
        if items.is_empty() {
            return Self::zero();
        }
        let mut lcd: BTreeMap<CyclotomicFactor, u32> = BTreeMap::new();
        let mut shift = (i64::MAX, i64::MAX);
        let mut rests: Vec<&BiPoly> = Vec::new();
        for x in &items {
            for (&f, &m) in &x.factors {
                let e = lcd.entry(f).or_insert(0);
                *e = (*e).max(m);
            }
            shift.0 = shift.0.min(x.shift.0);
            shift.1 = shift.1.min(x.shift.1);
            if !x.rest.is_one() && !rests.contains(&&x.rest) {
                rests.push(&x.rest);
            }
        }
        let mut cache = HashMap::new();
        let mut num = BiPoly::zero();
        for x in &items {
            let mut term = x.num.mul_monomial(Monomial::new(
                (x.shift.0 - shift.0) as u32,
                (x.shift.1 - shift.1) as u32,
            ));
            for (&f, &m) in &lcd {
                let have = x.factors.get(&f).copied().unwrap_or(0);
                if m > have {
                    term = &term * &Self::factor_power(f, m - have, &mut cache);
                }
            }
            for r in &rests {
                if **r != x.rest {
                    term = &term * *r;
                }
            }
            num += &term;
        }
        let rest = rests.iter().fold(BiPoly::one(), |acc, r| &acc * *r);
        RationalQT {
            num,
            shift,
            rest,
            factors: lcd,
        }
        .normalized()
    }

    pub fn scale_laurent(&self, p: &LaurentPoly) -> Self {
        self * &Self::from_laurent(p)
    }

    /// `1 / self`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        let mut num = self.rest.clone();
        for (&f, &m) in &self.factors {
            num = &num * &f.poly().pow(m);
        }
        Ok(RationalQT {
            num,
            shift: (-self.shift.0, -self.shift.1),
            rest: self.num.clone(),
            factors: BTreeMap::new(),
        }
        .normalized())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `f(q^{-1}, T^{-1})`.
    pub fn substitute_inverse(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut qe = -self.shift.0 - self.num.max_q() as i64 + self.rest.max_q() as i64;
        let mut te = -self.shift.1 - self.num.max_t() as i64 + self.rest.max_t() as i64;
        let mut negate = false;
        for (&f, &m) in &self.factors {
            let deg = (f.phi() * m) as i64;
            qe += deg * f.b as i64;
            te += deg * f.a as i64;
            if f.d == 1 && m % 2 == 1 {
                negate = !negate;
            }
        }
        let num = self.num.reverse();
        RationalQT {
            num: if negate { -num } else { num },
            shift: (qe, te),
            rest: self.rest.reverse(),
            factors: self.factors.clone(),
        }
        .normalized()
    }

    /// Value at `T = 0` as a Laurent polynomial in `q`.
    pub fn at_t_zero(&self) -> Result<LaurentPoly> {
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if self.shift.1 < 0 {
            return Err(Error::NotExpandable);
        }
        if self.shift.1 > 0 {
            return Ok(LaurentPoly::zero());
        }
        let mut den_shift = 0i64;
        for (&f, &m) in &self.factors {
            den_shift += (f.phi() * m * f.b) as i64;
        }
        let den = self.rest.at_t_zero();
        if den.is_zero() {
            return Err(Error::NotExpandable);
        }
        self.num.at_t_zero().shift(self.shift.0 - den_shift).exact_div(&den)
    }

    /// Coefficients of `T^0, ..., T^n` of the `T`-adic expansion, each in `ℤ[q^{±1}]`.
    pub fn series_coefficients(&self, n: usize) -> Result<Vec<LaurentPoly>> {
        if self.is_zero() {
            return Ok(vec![LaurentPoly::zero(); n + 1]);
        }
        if self.shift.1 < 0 {
            return Err(Error::NotExpandable);
        }
        let den = self.denominator_without_monomial();
        let d = den.t_coefficients();
        if d[0].is_zero() {
            return Err(Error::NotExpandable);
        }
        let nums = self.num.t_coefficients();
        let t0 = self.shift.1 as usize;
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = if k >= t0 && k - t0 < nums.len() {
                nums[k - t0].shift(self.shift.0)
            } else {
                LaurentPoly::zero()
            };
            for (m, dm) in d.iter().enumerate().skip(1).take(k) {
                if !dm.is_zero() {
                    acc -= &(dm * &out[k - m]);
                }
            }
            out.push(acc.exact_div(&d[0])?);
        }
        Ok(out)
    }

    fn denominator_without_monomial(&self) -> BiPoly {
        let mut den = self.rest.clone();
        for (&f, &m) in &self.factors {
            den = &den * &f.poly().pow(m);
        }
        den
    }

    /// Expanded numerator and denominator, with the denominator's
    /// lexicographic (`T` first) leading coefficient positive.
    pub fn to_num_den(&self) -> (BiPoly, BiPoly) {
        if self.is_zero() {
            return (BiPoly::zero(), BiPoly::one());
        }
        let up = Monomial::new(self.shift.0.max(0) as u32, self.shift.1.max(0) as u32);
        let down = Monomial::new((-self.shift.0).max(0) as u32, (-self.shift.1).max(0) as u32);
        let num = self.num.mul_monomial(up);
        let den = self.denominator_without_monomial().mul_monomial(down);
        if den.lead().is_some_and(|(_, c)| c.is_negative()) {
            (-num, -den)
        } else {
            (num, den)
        }
    }

    pub fn to_json(&self) -> Value {
        let (n, d) = self.to_num_den();
        json!({ "num": n.to_json(), "den": d.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let num = v.get("num").ok_or_else(|| Error::Parse("missing \"num\"".into()))?;
        let den = v.get("den").ok_or_else(|| Error::Parse("missing \"den\"".into()))?;
        Self::new(BiPoly::from_json(num)?, BiPoly::from_json(den)?)
    }

    /// Whether the denominator is a nonzero constant times a monomial.
    pub fn is_laurent(&self) -> bool {
        self.factors.is_empty() && self.rest.is_one()
    }
}

fn factor_text(f: CyclotomicFactor) -> String {
    if f.d == 1 {
        // keep the binomial in its natural q^b - T^a form
        let mut s = String::new();
        let qpart = match f.b {
            0 => "1".to_string(),
            1 => "q".to_string(),
            b => format!("q^{b}"),
        };
        s.push_str(&qpart);
        s.push_str(" - ");
        s.push_str(&if f.a == 1 {
            "T".to_string()
        } else {
            format!("T^{}", f.a)
        });
        s
    } else {
        f.poly().to_string()
    }
}

impl fmt::Display for RationalQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let up = Monomial::new(self.shift.0.max(0) as u32, self.shift.1.max(0) as u32);
        let num = self.num.mul_monomial(up);
        let mut den_parts: Vec<String> = Vec::new();
        let (dq, dt) = ((-self.shift.0).max(0), (-self.shift.1).max(0));
        if dq > 0 {
            den_parts.push(if dq == 1 { "q".into() } else { format!("q^{dq}") });
        }
        if dt > 0 {
            den_parts.push(if dt == 1 { "T".into() } else { format!("T^{dt}") });
        }
        if !self.rest.is_one() {
            if self.rest.is_compound() {
                den_parts.push(format!("({})", self.rest));
            } else {
                den_parts.push(self.rest.to_string());
            }
        }
        for (&fac, &m) in &self.factors {
            let t = factor_text(fac);
            den_parts.push(if m == 1 { format!("({t})") } else { format!("({t})^{m}") });
        }
        if den_parts.is_empty() {
            return write!(f, "{num}");
        }
        if num.is_compound() {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        write!(f, " / {}", den_parts.join("*"))
    }
}

impl fmt::Debug for RationalQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialEq for RationalQT {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl From<&LaurentPoly> for RationalQT {
    fn from(p: &LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl From<BiPoly> for RationalQT {
    fn from(p: BiPoly) -> Self {
        Self::from_bipoly(p)
    }
}

impl Add for &RationalQT {
    type Output = RationalQT;
    fn add(self, rhs: &RationalQT) -> RationalQT {
        RationalQT::sum_all([self, rhs])
    }
}

impl Sub for &RationalQT {
    type Output = RationalQT;
    fn sub(self, rhs: &RationalQT) -> RationalQT {
        let neg = -rhs;
        RationalQT::sum_all([self, &neg])
    }
}

impl Neg for &RationalQT {
    type Output = RationalQT;
    fn neg(self) -> RationalQT {
        let mut r = self.clone();
        r.num = -&r.num;
        r
    }
}

impl Mul for &RationalQT {
    type Output = RationalQT;
    fn mul(self, rhs: &RationalQT) -> RationalQT {
        if self.is_zero() || rhs.is_zero() {
            return RationalQT::zero();
        }
        let mut factors = self.factors.clone();
        for (&f, &m) in &rhs.factors {
            *factors.entry(f).or_insert(0) += m;
        }
        RationalQT {
            num: &self.num * &rhs.num,
            shift: (self.shift.0 + rhs.shift.0, self.shift.1 + rhs.shift.1),
            rest: &self.rest * &rhs.rest,
            factors,
        }
        .normalized()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalQT {
            type Output = RationalQT;
            fn $m(self, rhs: RationalQT) -> RationalQT {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalQT> for RationalQT {
            type Output = RationalQT;
            fn $m(self, rhs: &RationalQT) -> RationalQT {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalQT {
    type Output = RationalQT;
    fn neg(self) -> RationalQT {
        -&self
    }
}

impl std::iter::Sum for RationalQT {
    fn sum<I: Iterator<Item = RationalQT>>(iter: I) -> Self {
        let v: Vec<RationalQT> = iter.collect();
        RationalQT::sum_all(&v)
    }
}

impl std::str::FromStr for RationalQT {
    type Err = Error;

    /// Parses `num / den` where each side is a product of polynomial factors,
    /// e.g. `(q - 1) / (q - T)^2*(q^2 - T^3)`.
    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = super::parse_quotient(s)?;
        let product = |factors: Vec<(String, u32)>| -> Result<BiPoly> {
            let mut p = BiPoly::one();
            for (f, k) in factors {
                p = &p * &f.parse::<BiPoly>()?.pow(k);
            }
            Ok(p)
        };
        Self::new(product(num)?, product(den)?)
    }
}
