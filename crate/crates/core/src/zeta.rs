//! Motivic zeta functions kept as sums over nested sets, and their specializations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::algebra::{LaurentPoly, RationalQT, RationalS};
use crate::building::{BuildingSet, NestedSet};
use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZetaKind {
    /// `Z_M`: weights in `ℤ^E_{≥0}`.
    Full,
    /// `Z⁰_M`: weights in `ℤ^E_{>0}`.
    Local,
    /// `Z̄_M`: weights modulo `ℤ·1`.
    Reduced,
}

impl ZetaKind {
    pub const ALL: [ZetaKind; 3] = [ZetaKind::Full, ZetaKind::Local, ZetaKind::Reduced];

    pub fn name(self) -> &'static str {
        match self {
            ZetaKind::Full => "full",
            ZetaKind::Local => "local",
            ZetaKind::Reduced => "reduced",
        }
    }
}

impl fmt::Display for ZetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ZetaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ZetaKind::Full),
            "local" => Ok(ZetaKind::Local),
            "reduced" => Ok(ZetaKind::Reduced),
            other => Err(Error::Parse(format!("unknown zeta kind {other:?}"))),
        }
    }
}

/// One summand `coeff · Π_{(a,b)} (q-1) T^a / (q^b - T^a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaTerm {
    pub nested: NestedSet,
    pub coeff: LaurentPoly,
    /// `(#F, rk F)` for each `F` in the nested set.
    pub generators: Vec<(u32, u32)>,
}

/// `q^shift · Σ terms`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredZeta {
    pub kind: ZetaKind,
    pub shift: i64,
    pub terms: Vec<ZetaTerm>,
}

impl StructuredZeta {
    pub fn zero(kind: ZetaKind) -> StructuredZeta {
        StructuredZeta {
            kind,
            shift: 0,
            terms: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_zero())
    }

    /// The rational function in `q, T`, with terms sharing a generator multiset merged first.
    pub fn collapse(&self) -> RationalQT {
        let mut groups: BTreeMap<Vec<(u32, u32)>, LaurentPoly> = BTreeMap::new();
        for t in &self.terms {
            let mut key = t.generators.clone();
            key.sort_unstable();
            *groups.entry(key).or_insert_with(LaurentPoly::zero) += &t.coeff;
        }
        let mut cache: HashMap<(u32, u32), RationalQT> = HashMap::new();
        let parts: Vec<RationalQT> = groups
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(gens, c)| {
                gens.iter().fold(RationalQT::from_laurent(&c), |acc, &(a, b)| {
                    let g = cache.entry((a, b)).or_insert_with(|| RationalQT::generator(a, b));
                    &acc * &*g
                })
            })
            .collect();
        &RationalQT::sum_all(&parts) * &RationalQT::monomial(self.shift, 0)
    }

    /// `μ_top`: `q ↦ 1` in the coefficients and each generator `↦ 1/(a s + b)`.
    pub fn mu_top(&self) -> Result<RationalS> {
        let items: Vec<(BigRational, Vec<(i64, i64)>)> = self
            .terms
            .iter()
            .map(|t| {
                (
                    BigRational::from_integer(t.coeff.eval_one()),
                    t.generators.iter().map(|&(a, b)| (a as i64, b as i64)).collect(),
                )
            })
            .collect();
        RationalS::sum_linear_products(&items)
    }

    /// `lim_{T→∞}`, sending each generator to `-(q - 1)`.
    pub fn limit_t_infinity(&self) -> LaurentPoly {
        let minus = -LaurentPoly::q_minus_one();
        let total: LaurentPoly = self
            .terms
            .iter()
            .map(|t| &t.coeff * &minus.pow(t.generators.len() as u32))
            .sum();
        total.shift(self.shift)
    }

    /// The value at `T = 0`: only generator-free terms survive.
    pub fn at_t_zero(&self) -> LaurentPoly {
        let total: LaurentPoly = self
            .terms
            .iter()
            .filter(|t| t.generators.is_empty())
            .map(|t| t.coeff.clone())
            .sum();
        total.shift(self.shift)
    }

    /// Multiplies by `q^k`.
    pub fn shifted(&self, k: i64) -> StructuredZeta {
        StructuredZeta {
            shift: self.shift + k,
            ..self.clone()
        }
    }
}

/// Memoized `χ` of intervals `[lo, hi]` of one lattice.
pub(crate) struct IntervalChi<'a> {
    lattice: &'a FlatLattice,
    memo: HashMap<(usize, usize), LaurentPoly>,
}

impl<'a> IntervalChi<'a> {
    pub(crate) fn new(lattice: &'a FlatLattice) -> Self {
        IntervalChi {
            lattice,
            memo: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, lo: usize, hi: usize) -> &LaurentPoly {
        let l = self.lattice;
        self.memo
            .entry((lo, hi))
            .or_insert_with(|| l.interval_char_poly(lo, hi))
    }
}

/// `χ_{M_S}`, the product over `F ∈ S ∪ fact(E)` of `χ(M|F / z(F))`.
pub(crate) fn initial_char_poly(g: &BuildingSet, s: &NestedSet, chi: &mut IntervalChi) -> LaurentPoly {
    let full = g.complete(s);
    let mut out = LaurentPoly::one();
    for &f in full.members() {
        let z = g.z(full.members(), f);
        out = &out * chi.get(z, f);
    }
    out
}

/// `χ_{M_S} / (q-1)^{#S}`, failing loudly if the division is not exact.
pub fn initial_quotient(g: &BuildingSet, s: &NestedSet) -> Result<LaurentPoly> {
    let mut chi = IntervalChi::new(g.lattice());
    divide_out(initial_char_poly(g, s, &mut chi), s.len())
}

fn divide_out(p: LaurentPoly, k: usize) -> Result<LaurentPoly> {
    if p.is_zero() {
        return Ok(p);
    }
    p.exact_div(&LaurentPoly::q_minus_one().pow(k as u32))
}

/// The initial matroid `M_S = ⊕_{F ∈ S ∪ fact(E)} M|F / z(F)` together with
/// `χ_{M_S} / (q-1)^{#S}`, for a loopless matroid.
pub fn nested_initial_data(g: &BuildingSet, s: &NestedSet) -> Result<(Matroid, LaurentPoly)> {
    let l = g.lattice();
    let m = l.matroid();
    if !m.is_loopless() {
        return Err(Error::HasLoop);
    }
    if !g.is_nested(s.members()) {
        return Err(Error::NotNested(format!("{:?}", s.members())));
    }
    let full = g.complete(s);
    let mut minors = Vec::new();
    let mut chi = LaurentPoly::one();
    for &f in full.members() {
        let z = g.z(full.members(), f);
        let minor = m.minor(l.flat(f), l.flat(z))?;
        chi = &chi * &FlatLattice::build(&minor.matroid).char_poly();
        minors.push(minor);
    }
    let parts: Vec<(&Matroid, &[usize])> = minors.iter().map(|mi| (&mi.matroid, mi.labels.as_slice())).collect();
    let ms = Matroid::from_labeled_parts(m.n(), &parts)?;
    Ok((ms, divide_out(chi, s.len())?))
}

/// The structured zeta function of the given kind over the nested sets of `g`.
pub fn motivic_zeta(g: &BuildingSet, kind: ZetaKind) -> Result<StructuredZeta> {
    let l = g.lattice();
    let m = l.matroid();
    if !m.is_loopless() {
        return Ok(StructuredZeta::zero(kind));
    }
    let r = m.rank() as i64;
    let mut chi = IntervalChi::new(l);
    let mut terms = Vec::new();
    for s in g.nested_sets() {
        let star = g.is_star(&s);
        let extra = match kind {
            ZetaKind::Full => 0,
            ZetaKind::Local if star => 0,
            ZetaKind::Reduced if !star => 1,
            _ => continue,
        };
        let coeff = divide_out(initial_char_poly(g, &s, &mut chi), s.len() + extra)?;
        let generators = s
            .members()
            .iter()
            .map(|&f| (l.size(f) as u32, l.rank(f) as u32))
            .collect();
        terms.push(ZetaTerm {
            nested: s,
            coeff,
            generators,
        });
    }
    let shift = match kind {
        ZetaKind::Reduced => -(r - 1),
        _ => -r,
    };
    Ok(StructuredZeta { kind, shift, terms })
}

/// Zeta function of `m` with the maximal building set.
pub fn zeta(m: &Matroid, kind: ZetaKind) -> Result<StructuredZeta> {
    let l = std::sync::Arc::new(FlatLattice::build(m));
    motivic_zeta(&BuildingSet::maximal(l), kind)
}

/// `Z^top_M(s) = μ_top(Z_M)`.
pub fn topological_zeta(m: &Matroid) -> Result<RationalS> {
    zeta(m, ZetaKind::Full)?.mu_top()
}
