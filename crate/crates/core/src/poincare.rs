//! Euler-Poincaré, Poincaré and `H` polynomials over a nested-set complex, the
//! Hilbert series of the Feichtner-Yuzvinsky ring, and van der Veer's topological zeta.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{LaurentPoly, RationalS};
use crate::building::{BuildingSet, NestedSet};
use crate::error::{Error, Result};
use crate::zeta::{motivic_zeta, ZetaKind};

/// `[n]_q = 1 + q + ... + q^{n-1}`, with `[0]_q = 0`.
pub fn q_integer(n: usize) -> LaurentPoly {
    LaurentPoly::q_integer(n)
}

/// `p(q^2)`.
pub fn in_q_squared(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().map(|(e, c)| (2 * e, c.clone())))
}

/// All polynomials attached to the nested sets of one building set of a loopless matroid.
#[derive(Clone, Debug)]
pub struct PoincareData {
    pub nested: Vec<NestedSet>,
    /// `χ_{M_S} / (q-1)^{#S}` per nested set.
    pub quotients: Vec<LaurentPoly>,
    /// `P^S_{M,𝒢}` per nested set.
    pub p: Vec<LaurentPoly>,
    /// `H^S_{M,𝒢}` per nested set.
    pub h: Vec<LaurentPoly>,
    index: HashMap<NestedSet, usize>,
    top_factors: Vec<usize>,
}

impl PoincareData {
    pub fn compute(g: &BuildingSet) -> Result<PoincareData> {
        if !g.matroid().is_loopless() {
            return Err(Error::HasLoop);
        }
        let z = motivic_zeta(g, ZetaKind::Full)?;
        let nested: Vec<NestedSet> = z.terms.iter().map(|t| t.nested.clone()).collect();
        let quotients: Vec<LaurentPoly> = z.terms.into_iter().map(|t| t.coeff).collect();
        let index: HashMap<NestedSet, usize> = nested.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

        let mut p = vec![LaurentPoly::zero(); nested.len()];
        for (t, c) in nested.iter().zip(&quotients) {
            for mask in 0u32..(1u32 << t.len()) {
                let sub: Vec<usize> = (0..t.len()).filter(|&i| mask >> i & 1 == 1).map(|i| t.0[i]).collect();
                p[index[&NestedSet(sub)]] += c;
            }
        }

        let top_factors = g.top_factors().to_vec();
        let l = g.lattice();
        let mut star_h: HashMap<usize, LaurentPoly> = HashMap::new();
        let mut h = Vec::with_capacity(nested.len());
        for s in &nested {
            let full = s.union(&top_factors);
            let fi = index[&full];
            star_h.entry(fi).or_insert_with(|| {
                let mut total = LaurentPoly::zero();
                for t in &nested {
                    let joined = t.union(full.members());
                    if !index.contains_key(&joined) {
                        continue;
                    }
                    let mut prod = LaurentPoly::one();
                    for &f in t.members() {
                        let gap = l.rank(f) - l.rank(g.z(joined.members(), f));
                        prod = &prod * &(&q_integer(gap) - &LaurentPoly::one());
                    }
                    total += &prod;
                }
                total
            });
            let missing = (full.len() - s.len()) as i64;
            h.push(star_h[&fi].shift(missing));
        }

        Ok(PoincareData {
            nested,
            quotients,
            p,
            h,
            index,
            top_factors,
        })
    }

    pub fn index_of(&self, s: &NestedSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn p_at(&self, s: &NestedSet) -> Option<&LaurentPoly> {
        self.index_of(s).map(|i| &self.p[i])
    }

    pub fn h_at(&self, s: &NestedSet) -> Option<&LaurentPoly> {
        self.index_of(s).map(|i| &self.h[i])
    }

    /// Whether `S ∈ 𝒩*`.
    pub fn is_star(&self, s: &NestedSet) -> bool {
        self.top_factors.iter().all(|&f| s.contains(f))
    }

    /// `P̄^S = P^{S ∪ fact(E)}` for `S ∈ 𝒩°`.
    pub fn p_bar_at(&self, s: &NestedSet) -> Option<&LaurentPoly> {
        if self.is_star(s) {
            return None;
        }
        self.p_at(&s.union(&self.top_factors))
    }

    /// `P_{M,𝒢} = P^{fact(E)}`, which is also the Poincaré polynomial `P̄_M`.
    pub fn p_total(&self) -> &LaurentPoly {
        self.p_at(&NestedSet(self.top_factors.clone()))
            .expect("fact(E) is nested")
    }

    /// `H_{M,𝒢} = H^{fact(E)}`.
    pub fn h_total(&self) -> &LaurentPoly {
        self.h_at(&NestedSet(self.top_factors.clone()))
            .expect("fact(E) is nested")
    }

    /// Hilbert series `Σ rk D^i(M,𝒢) q^i = H_{M,𝒢}(q^2)`.
    pub fn hilbert_series(&self) -> LaurentPoly {
        in_q_squared(self.h_total())
    }

    /// The nested sets of `𝒩°` with their `P̄^S`.
    pub fn p_bar(&self) -> Vec<(&NestedSet, &LaurentPoly)> {
        self.nested
            .iter()
            .filter(|s| !self.is_star(s))
            .map(|s| (s, self.p_bar_at(s).expect("completion is nested")))
            .collect()
    }
}

/// `Σ_{S ∈ 𝒩} Π_{F ∈ S} ([rk F - rk z_S(F)]_q - 1)`.
pub fn h_sum(g: &BuildingSet) -> LaurentPoly {
    let l = g.lattice();
    g.nested_sets()
        .iter()
        .map(|s| {
            s.members().iter().fold(LaurentPoly::one(), |acc, &f| {
                let gap = l.rank(f) - l.rank(g.z(s.members(), f));
                &acc * &(&q_integer(gap) - &LaurentPoly::one())
            })
        })
        .sum()
}

/// van der Veer's topological zeta function
/// `Σ_S Σ_{T ⊇ S} (-1)^{#T - #S} H^T(1) Π_{F ∈ S} 1/(#F s + rk F)`.
pub fn vdv_zeta(g: &BuildingSet, data: &PoincareData) -> Result<RationalS> {
    let l = g.lattice();
    let mut coeff: Vec<BigInt> = vec![BigInt::from(0); data.nested.len()];
    for (t, h) in data.nested.iter().zip(&data.h) {
        let value = h.eval_one();
        for mask in 0u32..(1u32 << t.len()) {
            let sub: Vec<usize> = (0..t.len()).filter(|&i| mask >> i & 1 == 1).map(|i| t.0[i]).collect();
            let sign = if (t.len() - sub.len()).is_multiple_of(2) { 1 } else { -1 };
            let i = data.index[&NestedSet(sub)];
            coeff[i] += &value * sign;
        }
    }
    let items: Vec<(BigRational, Vec<(i64, i64)>)> = data
        .nested
        .iter()
        .zip(coeff)
        .map(|(s, c)| {
            (
                BigRational::from_integer(c),
                s.members()
                    .iter()
                    .map(|&f| (l.size(f) as i64, l.rank(f) as i64))
                    .collect(),
            )
        })
        .collect();
    RationalS::sum_linear_products(&items)
}
