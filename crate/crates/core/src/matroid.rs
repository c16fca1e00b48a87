//! Matroids given by their bases, with rank and closure oracles, minors,
//! direct sums, connectivity and initial matroids for integer weights.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::subset::{GroundSubset, MAX_ELEMENTS};

/// Ground sets up to this size get a precomputed rank table.
const RANK_TABLE_LIMIT: usize = 16;

/// A matroid on `{0, .., n-1}` stored as its list of bases.
///
/// The bases are kept sorted and deduplicated, so two matroids on the same
/// ground set compare equal exactly when their basis collections agree.
#[derive(Clone)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<GroundSubset>,
    rank_table: Option<Vec<u8>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("rank", &self.rank)
            .field("bases", &self.bases)
            .finish()
    }
}

/// An integer weight per ground-set element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|w|`, the sum of all entries.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.iter().copied().min()
    }

    pub fn weight_of(&self, s: GroundSubset) -> i64 {
        s.iter().map(|e| self.0[e]).sum()
    }

    /// `w + lambda * 1`.
    pub fn shifted(&self, lambda: i64) -> Self {
        WeightVector(self.0.iter().map(|w| w + lambda).collect())
    }

    /// The indicator vector of `s` on `n` elements.
    pub fn indicator(n: usize, s: GroundSubset) -> Self {
        WeightVector((0..n).map(|e| s.contains(e) as i64).collect())
    }
}

/// A minor together with the original label of each of its elements.
#[derive(Clone, Debug)]
pub struct Minor {
    pub matroid: Matroid,
    /// `labels[i]` is the element of the parent matroid that became `i`.
    pub labels: Vec<usize>,
}

impl Matroid {
    /// Builds a matroid from an explicit basis list and checks the matroid axioms,
    /// including the basis-exchange property.
    pub fn from_bases<I>(n: usize, bases: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = GroundSubset>,
    {
        let m = Self::from_bases_unchecked(n, bases)?;
        m.check_exchange()?;
        Ok(m)
    }

    /// Like [`from_bases`](Self::from_bases) but skips the exchange-axiom scan.
    /// Used for constructions that produce matroids by theory (minors, sums,
    /// initial matroids).
    pub(crate) fn from_bases_unchecked<I>(n: usize, bases: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = GroundSubset>,
    {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements { n, max: MAX_ELEMENTS });
        }
        let set: BTreeSet<GroundSubset> = bases.into_iter().collect();
        let bases: Vec<GroundSubset> = set.into_iter().collect();
        let first = bases.first().ok_or(Error::NoBases)?;
        let rank = first.len();
        let full = GroundSubset::full(n);
        for b in &bases {
            if !b.is_subset(full) {
                return Err(Error::ElementOutOfRange {
                    element: b.span() - 1,
                    n,
                });
            }
            if b.len() != rank {
                return Err(Error::BasisSizeMismatch {
                    first: rank,
                    other: b.len(),
                });
            }
        }
        let rank_table = (n <= RANK_TABLE_LIMIT).then(|| build_rank_table(n, &bases));
        Ok(Matroid {
            n,
            rank,
            bases,
            rank_table,
        })
    }

    fn check_exchange(&self) -> Result<()> {
        let lookup: HashSet<GroundSubset> = self.bases.iter().copied().collect();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in b1.difference(b2).iter() {
                    let ok = b2
                        .difference(b1)
                        .iter()
                        .any(|y| lookup.contains(&b1.without(x).with(y)));
                    if !ok {
                        return Err(Error::BasisExchange {
                            from: b1.to_string(),
                            to: b2.to_string(),
                            element: x,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::Parse(format!("uniform matroid needs r <= n, got r={r}, n={n}")));
        }
        if n > RANK_TABLE_LIMIT + 4 {
            return Err(Error::TooLarge {
                what: format!("uniform matroid on {n} elements"),
                limit: RANK_TABLE_LIMIT + 4,
            });
        }
        let full = GroundSubset::full(n);
        Self::from_bases_unchecked(n, full.subsets().filter(|s| s.len() == r))
    }

    /// Matroid whose bases are the `r`-subsets `S` with `#(S ∩ F) <= k` for each
    /// listed `(F, k)`. Convenient for point configurations described by their
    /// special lines and planes.
    pub fn from_rank_bounds(n: usize, r: usize, bounds: &[(GroundSubset, usize)]) -> Result<Matroid> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let full = GroundSubset::full(n);
        let bases = full
            .subsets()
            .filter(|s| s.len() == r)
            .filter(|s| bounds.iter().all(|&(f, k)| s.intersection(f).len() <= k));
        Self::from_bases(n, bases)
    }

    /// Graphic matroid of an edge list; the bases are the spanning forests.
    /// Self-loops `(u, u)` become matroid loops.
    pub fn graphic(edges: &[(usize, usize)]) -> Result<Matroid> {
        let n = edges.len();
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if n > RANK_TABLE_LIMIT {
            return Err(Error::TooLarge {
                what: format!("graph with {n} edges"),
                limit: RANK_TABLE_LIMIT,
            });
        }
        let vertices = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1;
        let forest_size = |s: GroundSubset| -> usize {
            let mut uf = UnionFind::new(vertices);
            s.iter().filter(|&e| uf.union(edges[e].0, edges[e].1)).count()
        };
        let rank = forest_size(GroundSubset::full(n));
        let bases = GroundSubset::full(n)
            .subsets()
            .filter(|s| s.len() == rank && forest_size(*s) == rank);
        Self::from_bases_unchecked(n, bases)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `rk M`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[GroundSubset] {
        &self.bases
    }

    pub fn ground_set(&self) -> GroundSubset {
        GroundSubset::full(self.n)
    }

    /// `rk(S) = max_B #(B ∩ S)`.
    pub fn rank_of(&self, s: GroundSubset) -> usize {
        match &self.rank_table {
            Some(t) => t[s.intersection(self.ground_set()).bits() as usize] as usize,
            None => self.bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0),
        }
    }

    pub fn is_independent(&self, s: GroundSubset) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn is_basis(&self, s: GroundSubset) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    /// `cl(S) = { e : rk(S ∪ e) = rk(S) }`.
    pub fn closure(&self, s: GroundSubset) -> GroundSubset {
        let r = self.rank_of(s);
        let mut out = s;
        for e in 0..self.n {
            if !s.contains(e) && self.rank_of(s.with(e)) == r {
                out = out.with(e);
            }
        }
        out
    }

    pub fn is_flat(&self, s: GroundSubset) -> bool {
        self.closure(s) == s
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank_of(GroundSubset::singleton(e)) == 0
    }

    pub fn loops(&self) -> GroundSubset {
        (0..self.n).filter(|&e| self.is_loop(e)).collect()
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    /// `M|R / C` for `C ⊆ R ⊆ E`. The minor's elements are `R \ C` in ascending
    /// order; `labels` records where each came from.
    pub fn minor(&self, restrict_to: GroundSubset, contract_by: GroundSubset) -> Result<Minor> {
        let full = self.ground_set();
        if !restrict_to.is_subset(full) {
            return Err(Error::ElementOutOfRange {
                element: restrict_to.difference(full).iter().next().unwrap_or(0),
                n: self.n,
            });
        }
        if !contract_by.is_subset(restrict_to) {
            return Err(Error::Parse(format!(
                "contraction set {contract_by} is not inside restriction {restrict_to}"
            )));
        }
        let labels = restrict_to.difference(contract_by).to_vec();
        if labels.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        let r_restrict = self.rank_of(restrict_to);
        let r_contract = self.rank_of(contract_by);
        let bases = self
            .bases
            .iter()
            .map(|b| b.intersection(restrict_to))
            .filter(|b| b.len() == r_restrict && b.intersection(contract_by).len() == r_contract)
            .map(|b| b.difference(contract_by).compress(&labels));
        let matroid = Self::from_bases_unchecked(labels.len(), bases)?;
        Ok(Minor { matroid, labels })
    }

    pub fn restriction(&self, to: GroundSubset) -> Result<Minor> {
        self.minor(to, GroundSubset::EMPTY)
    }

    pub fn contraction(&self, by: GroundSubset) -> Result<Minor> {
        self.minor(self.ground_set(), by)
    }

    /// `M1 ⊕ M2`, with the elements of `other` shifted up by `self.n()`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let shift = self.n;
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements { n, max: MAX_ELEMENTS });
        }
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for b1 in &self.bases {
            for b2 in &other.bases {
                bases.push(GroundSubset::from_bits(b1.bits() | b2.bits() << shift));
            }
        }
        Self::from_bases_unchecked(n, bases)
    }

    /// Direct sum of several matroids placed on prescribed, disjoint label sets
    /// whose union is `{0, .., n-1}`.
    pub fn from_labeled_parts(n: usize, parts: &[(&Matroid, &[usize])]) -> Result<Matroid> {
        let mut seen = GroundSubset::EMPTY;
        for (m, labels) in parts {
            if m.n != labels.len() {
                return Err(Error::Invariant("label list does not match part size".into()));
            }
            let placed = GroundSubset::from_elements(labels.iter().copied());
            if placed.len() != labels.len() || !placed.intersection(seen).is_empty() {
                return Err(Error::Invariant("direct-sum parts overlap".into()));
            }
            seen = seen.union(placed);
        }
        if seen != GroundSubset::full(n) {
            return Err(Error::Invariant(format!(
                "direct-sum parts cover {seen}, not the full ground set of size {n}"
            )));
        }
        let mut bases = vec![GroundSubset::EMPTY];
        for (m, labels) in parts {
            let mut next = Vec::with_capacity(bases.len() * m.bases.len());
            for acc in &bases {
                for b in &m.bases {
                    next.push(acc.union(b.expand(labels)));
                }
            }
            bases = next;
        }
        Self::from_bases_unchecked(n, bases)
    }

    /// Minimal dependent sets, found by scanning all subsets of size at most `rk M + 1`.
    pub fn circuits(&self) -> Vec<GroundSubset> {
        let limit = self.rank + 1;
        self.ground_set()
            .subsets()
            .filter(|s| !s.is_empty() && s.len() <= limit)
            .filter(|&s| !self.is_independent(s) && s.iter().all(|e| self.is_independent(s.without(e))))
            .collect()
    }

    /// Connected: positive rank and every pair of elements lies on a common circuit
    /// (a single element of positive rank is connected).
    pub fn is_connected(&self) -> bool {
        if self.rank == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        for c in self.circuits() {
            let mut it = c.iter();
            if let Some(first) = it.next() {
                for e in it {
                    uf.union(first, e);
                }
            }
        }
        let root = uf.find(0);
        (1..self.n).all(|e| uf.find(e) == root)
    }

    fn check_weight(&self, w: &WeightVector) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::WeightLength {
                got: w.len(),
                expected: self.n,
            });
        }
        Ok(())
    }

    /// A basis of maximum `w`-weight together with `wt_M(w)`, by the greedy algorithm.
    pub fn max_weight_basis(&self, w: &WeightVector) -> Result<(GroundSubset, i64)> {
        self.check_weight(w)?;
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| w.0[b].cmp(&w.0[a]).then(a.cmp(&b)));
        let mut basis = GroundSubset::EMPTY;
        for e in order {
            if basis.len() == self.rank {
                break;
            }
            let candidate = basis.with(e);
            if self.is_independent(candidate) {
                basis = candidate;
            }
        }
        Ok((basis, w.weight_of(basis)))
    }

    /// `wt_M(w)`.
    pub fn max_weight(&self, w: &WeightVector) -> Result<i64> {
        Ok(self.max_weight_basis(w)?.1)
    }

    /// The initial matroid `M_w`: the bases of `M` attaining `wt_M(w)`.
    pub fn initial_matroid(&self, w: &WeightVector) -> Result<Matroid> {
        self.check_weight(w)?;
        let best = self.bases.iter().map(|&b| w.weight_of(b)).max().unwrap_or(0);
        let bases = self.bases.iter().copied().filter(|&b| w.weight_of(b) == best);
        Self::from_bases_unchecked(self.n, bases)
    }
}

fn build_rank_table(n: usize, bases: &[GroundSubset]) -> Vec<u8> {
    let size = 1usize << n;
    let mut independent = vec![false; size];
    for b in bases {
        independent[b.bits() as usize] = true;
    }
    // a set is independent iff it extends to a basis; sweep downward
    for s in (0..size).rev() {
        if independent[s] {
            continue;
        }
        let mut rest = !s & (size - 1);
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if independent[s | bit] {
                independent[s] = true;
                break;
            }
            rest &= rest - 1;
        }
    }
    let mut rank = vec![0u8; size];
    for s in 1..size {
        rank[s] = if independent[s] {
            s.count_ones() as u8
        } else {
            let mut best = 0;
            let mut rest = s;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                best = best.max(rank[s ^ bit]);
                rest &= rest - 1;
            }
            best
        };
    }
    rank
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when `a` and `b` were in different classes.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
