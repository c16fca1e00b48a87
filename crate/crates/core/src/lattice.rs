//! The lattice of flats, its Möbius function and characteristic polynomials.

use std::collections::HashMap;

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::GroundSubset;

/// All flats of a matroid, sorted by rank and then by membership mask, with the
/// order relation, joins and Möbius values tabulated eagerly.
///
/// Flats are addressed by their index in [`flats`](Self::flats); index 0 is the
/// bottom `cl(∅)` and the last index is the top `E`.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    matroid: Matroid,
    flats: Vec<GroundSubset>,
    ranks: Vec<usize>,
    rank_start: Vec<usize>,
    index: HashMap<GroundSubset, usize>,
    leq: Vec<bool>,
    join: Vec<u32>,
    mobius: Vec<i64>,
}

impl FlatLattice {
    pub fn build(m: &Matroid) -> FlatLattice {
        let r = m.rank();
        let mut levels: Vec<Vec<GroundSubset>> = vec![vec![m.closure(GroundSubset::EMPTY)]];
        for k in 0..r {
            let mut next: Vec<GroundSubset> = Vec::new();
            for &f in &levels[k] {
                for e in m.ground_set().difference(f).iter() {
                    let g = m.closure(f.with(e));
                    if !next.contains(&g) {
                        next.push(g);
                    }
                }
            }
            next.sort();
            levels.push(next);
        }
        let mut flats = Vec::new();
        let mut ranks = Vec::new();
        let mut rank_start = Vec::new();
        for (k, level) in levels.into_iter().enumerate() {
            rank_start.push(flats.len());
            for f in level {
                flats.push(f);
                ranks.push(k);
            }
        }
        rank_start.push(flats.len());
        let n = flats.len();
        let index: HashMap<GroundSubset, usize> = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut leq = vec![false; n * n];
        let mut join = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = flats[i].is_subset(flats[j]);
            }
        }
        for i in 0..n {
            for j in i..n {
                let k = if leq[i * n + j] {
                    j
                } else if leq[j * n + i] {
                    i
                } else {
                    index[&m.closure(flats[i].union(flats[j]))]
                };
                join[i * n + j] = k as u32;
                join[j * n + i] = k as u32;
            }
        }
        let mut mobius = vec![0i64; n * n];
        for i in 0..n {
            mobius[i * n + i] = 1;
            for j in i + 1..n {
                if !leq[i * n + j] {
                    continue;
                }
                // flats below j come earlier in the rank-sorted order
                let s: i64 = (i..j)
                    .filter(|&k| leq[i * n + k] && leq[k * n + j])
                    .map(|k| mobius[i * n + k])
                    .sum();
                mobius[i * n + j] = -s;
            }
        }
        FlatLattice {
            matroid: m.clone(),
            flats,
            ranks,
            rank_start,
            index,
            leq,
            join,
            mobius,
        }
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[GroundSubset] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> GroundSubset {
        self.flats[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// `#F` for the flat with index `i`.
    pub fn size(&self, i: usize) -> usize {
        self.flats[i].len()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn index_of(&self, f: GroundSubset) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn flat_index(&self, f: GroundSubset) -> Result<usize> {
        self.index_of(f).ok_or_else(|| Error::NotAFlat(f.to_string()))
    }

    /// Indices of the flats of rank `k`.
    pub fn of_rank(&self, k: usize) -> std::ops::Range<usize> {
        if k + 1 >= self.rank_start.len() {
            return 0..0;
        }
        self.rank_start[k]..self.rank_start[k + 1]
    }

    pub fn atoms(&self) -> std::ops::Range<usize> {
        self.of_rank(1)
    }

    /// Flats other than the bottom and the top.
    pub fn interior(&self) -> std::ops::Range<usize> {
        if self.len() < 2 {
            return 0..0;
        }
        1..self.top()
    }

    /// Count of flats of each rank `0..=rk M`.
    pub fn rank_counts(&self) -> Vec<usize> {
        self.rank_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    /// Intersection of two flats, which is again a flat.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index[&self.flats[i].intersection(self.flats[j])]
    }

    /// `μ(F_i, F_j)`, or `None` when `F_i ⊄ F_j`.
    pub fn mobius_idx(&self, i: usize, j: usize) -> Option<i64> {
        self.leq(i, j).then(|| self.mobius[i * self.len() + j])
    }

    /// `μ(F1, F2)` for flats given as subsets.
    pub fn mobius(&self, f1: GroundSubset, f2: GroundSubset) -> Result<i64> {
        let (i, j) = (self.flat_index(f1)?, self.flat_index(f2)?);
        self.mobius_idx(i, j)
            .ok_or_else(|| Error::NotComparable(f1.to_string(), f2.to_string()))
    }

    /// Flats `G` with `F_lo ⊆ G ⊆ F_hi`.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        (lo..=hi).filter(|&k| self.leq(lo, k) && self.leq(k, hi)).collect()
    }

    /// `χ` of the minor `M|F_hi / F_lo`, read off the interval `[F_lo, F_hi]`:
    /// `Σ_G μ(F_lo, G) q^{rk F_hi - rk G}`.
    pub fn interval_char_poly(&self, lo: usize, hi: usize) -> LaurentPoly {
        let top = self.ranks[hi] as i64;
        LaurentPoly::from_terms(
            self.interval(lo, hi)
                .into_iter()
                .map(|g| (top - self.ranks[g] as i64, self.mobius[lo * self.len() + g].into())),
        )
    }

    /// `χ̄ = χ / (q - 1)` of the minor `M|F_hi / F_lo`, for `F_lo ⊊ F_hi`.
    pub fn interval_reduced_char_poly(&self, lo: usize, hi: usize) -> Result<LaurentPoly> {
        self.interval_char_poly(lo, hi).exact_div(&LaurentPoly::q_minus_one())
    }

    /// `χ_M(q)`, zero when `M` has a loop.
    pub fn char_poly(&self) -> LaurentPoly {
        if !self.flats[0].is_empty() {
            return LaurentPoly::zero();
        }
        self.interval_char_poly(self.bottom(), self.top())
    }

    /// `χ̄_M(q) = χ_M(q) / (q - 1)`.
    pub fn reduced_char_poly(&self) -> Result<LaurentPoly> {
        self.char_poly().exact_div(&LaurentPoly::q_minus_one())
    }
}

/// `χ_M(q)` via the lattice of flats.
pub fn char_poly(m: &Matroid) -> LaurentPoly {
    FlatLattice::build(m).char_poly()
}

/// `χ̄_M(q)` via the lattice of flats.
pub fn reduced_char_poly(m: &Matroid) -> Result<LaurentPoly> {
    FlatLattice::build(m).reduced_char_poly()
}
