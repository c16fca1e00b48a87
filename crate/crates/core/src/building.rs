//! Building sets in a lattice of flats, nested sets and induced building sets on minors.

use std::collections::HashSet;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::subset::GroundSubset;

/// A nested set, stored as ascending flat indices into the lattice of its building set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NestedSet(pub Vec<usize>);

impl NestedSet {
    pub fn empty() -> NestedSet {
        NestedSet(Vec::new())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, f: usize) -> bool {
        self.0.binary_search(&f).is_ok()
    }

    pub fn is_subset(&self, other: &NestedSet) -> bool {
        self.0.iter().all(|&f| other.contains(f))
    }

    pub fn union(&self, other: &[usize]) -> NestedSet {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        v.sort_unstable();
        v.dedup();
        NestedSet(v)
    }
}

/// A validated building set `𝒢 ⊆ 𝓛_{>cl(∅)}` together with its factor table.
#[derive(Clone, Debug)]
pub struct BuildingSet {
    lattice: Arc<FlatLattice>,
    members: Vec<usize>,
    is_member: Vec<bool>,
    factors: Vec<Vec<usize>>,
}

impl BuildingSet {
    /// Validates `members` (flat indices) and builds the factor table.
    pub fn new(lattice: Arc<FlatLattice>, members: impl IntoIterator<Item = usize>) -> Result<BuildingSet> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let n = lattice.len();
        let bottom = lattice.bottom();
        let mut is_member = vec![false; n];
        for &g in &members {
            if g >= n {
                return Err(Error::NotBuildingSet(format!("flat index {g} out of range")));
            }
            if g == bottom {
                return Err(Error::NotBuildingSet("contains the minimal flat".into()));
            }
            is_member[g] = true;
        }
        let mut factors = vec![Vec::new(); n];
        for x in 0..n {
            if x == bottom {
                continue;
            }
            let below: Vec<usize> = members.iter().copied().filter(|&g| lattice.leq(g, x)).collect();
            let maximal: Vec<usize> = below
                .iter()
                .copied()
                .filter(|&g| !below.iter().any(|&h| lattice.lt(g, h)))
                .collect();
            if !is_member[x] {
                check_product(&lattice, x, &maximal)?;
            }
            factors[x] = maximal;
        }
        Ok(BuildingSet {
            lattice,
            members,
            is_member,
            factors,
        })
    }

    /// Validates a candidate given as subsets of the ground set.
    pub fn from_flats(lattice: Arc<FlatLattice>, flats: &[GroundSubset]) -> Result<BuildingSet> {
        let idx = flats
            .iter()
            .map(|&f| lattice.flat_index(f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice, idx)
    }

    /// `𝒢_max = 𝓛_{>cl(∅)}`.
    pub fn maximal(lattice: Arc<FlatLattice>) -> BuildingSet {
        let members = 1..lattice.len();
        Self::new(lattice, members).expect("the maximal building set always validates")
    }

    /// `𝒢_min`: flats `F` with `M|F` connected of positive rank.
    pub fn minimal(lattice: Arc<FlatLattice>) -> Result<BuildingSet> {
        if !lattice.matroid().is_loopless() {
            return Err(Error::HasLoop);
        }
        let members = minimal_members(&lattice)?;
        Self::new(lattice, members)
    }

    pub fn lattice(&self) -> &Arc<FlatLattice> {
        &self.lattice
    }

    pub fn matroid(&self) -> &Matroid {
        self.lattice.matroid()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: usize) -> bool {
        self.is_member[f]
    }

    pub fn member_flats(&self) -> Vec<GroundSubset> {
        self.members.iter().map(|&g| self.lattice.flat(g)).collect()
    }

    /// `fact_𝒢(X) = max 𝒢_{≤X}`.
    pub fn factors(&self, x: usize) -> &[usize] {
        &self.factors[x]
    }

    /// `fact_𝒢(E)`.
    pub fn top_factors(&self) -> &[usize] {
        &self.factors[self.lattice.top()]
    }

    pub fn is_maximal(&self) -> bool {
        self.members.len() + 1 == self.lattice.len()
    }

    /// Whether `s` (ascending member indices) is nested: every antichain of two or
    /// more of its members has its join outside `𝒢`.
    pub fn is_nested(&self, s: &[usize]) -> bool {
        if !s.iter().all(|&f| f < self.is_member.len() && self.is_member[f]) {
            return false;
        }
        (1..s.len()).all(|i| self.extends_nested(&s[..i], s[i]))
    }

    /// Checks only the antichains of `s ∪ {g}` that contain `g`.
    fn extends_nested(&self, s: &[usize], g: usize) -> bool {
        let l = &self.lattice;
        let free: Vec<usize> = s.iter().copied().filter(|&h| !l.comparable(g, h)).collect();
        if free.len() > 20 {
            return false;
        }
        for mask in 1u32..(1u32 << free.len()) {
            let chosen: Vec<usize> = (0..free.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| free[i])
                .collect();
            let antichain = chosen
                .iter()
                .enumerate()
                .all(|(i, &a)| chosen[i + 1..].iter().all(|&b| !l.comparable(a, b)));
            if !antichain {
                continue;
            }
            let join = chosen.iter().fold(g, |acc, &h| l.join(acc, h));
            if self.is_member[join] {
                return false;
            }
        }
        true
    }

    /// All nested sets, including `∅`, ordered by size and then lexicographically.
    pub fn nested_sets(&self) -> Vec<NestedSet> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend(&mut current, 0, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    fn extend(&self, current: &mut Vec<usize>, start: usize, out: &mut Vec<NestedSet>) {
        out.push(NestedSet(current.clone()));
        for k in start..self.members.len() {
            let g = self.members[k];
            if self.extends_nested(current, g) {
                current.push(g);
                self.extend(current, k + 1, out);
                current.pop();
            }
        }
    }

    /// Whether `fact_𝒢(E) ⊆ S`, i.e. `S ∈ 𝒩*`.
    pub fn is_star(&self, s: &NestedSet) -> bool {
        self.top_factors().iter().all(|&f| s.contains(f))
    }

    /// Nested sets split into `(𝒩*, 𝒩°)`.
    pub fn partition(&self) -> (Vec<NestedSet>, Vec<NestedSet>) {
        self.nested_sets().into_iter().partition(|s| self.is_star(s))
    }

    /// `z_S(F) = ⋁ S_{<F}`, the bottom flat when nothing in `S` lies below `F`.
    pub fn z(&self, s: &[usize], f: usize) -> usize {
        let l = &self.lattice;
        s.iter()
            .copied()
            .filter(|&g| l.lt(g, f))
            .fold(l.bottom(), |acc, g| l.join(acc, g))
    }

    /// `S ∪ fact_𝒢(E)`.
    pub fn complete(&self, s: &NestedSet) -> NestedSet {
        s.union(self.top_factors())
    }

    /// `𝒢|X = 𝒢_{≤X}` on the restriction `M|X`, with the restriction's element labels.
    pub fn restriction(&self, x: usize) -> Result<(BuildingSet, Vec<usize>)> {
        let l = &self.lattice;
        let xs = l.flat(x);
        let minor = l.matroid().restriction(xs)?;
        let lat = Arc::new(FlatLattice::build(&minor.matroid));
        let members = self
            .members
            .iter()
            .filter(|&&g| l.leq(g, x))
            .map(|&g| lat.flat_index(l.flat(g).compress(&minor.labels)))
            .collect::<Result<Vec<_>>>()?;
        Ok((BuildingSet::new(lat, members)?, minor.labels))
    }

    /// `𝒢/X = {G ∨ X : G ∈ 𝒢, G ⊄ X}` on the contraction `M/X`, with its element labels.
    pub fn contraction(&self, x: usize) -> Result<(BuildingSet, Vec<usize>)> {
        let l = &self.lattice;
        let xs = l.flat(x);
        let minor = l.matroid().contraction(xs)?;
        let lat = Arc::new(FlatLattice::build(&minor.matroid));
        let members = self
            .members
            .iter()
            .filter(|&&g| !l.leq(g, x))
            .map(|&g| {
                let j = l.flat(l.join(g, x));
                lat.flat_index(j.difference(xs).compress(&minor.labels))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((BuildingSet::new(lat, members)?, minor.labels))
    }
}

/// Whether `members` form a building set in `lattice`.
pub fn is_building_set(lattice: &Arc<FlatLattice>, members: &[usize]) -> bool {
    BuildingSet::new(lattice.clone(), members.iter().copied()).is_ok()
}

/// `(𝒢_max, 𝒢_min)` for a loopless matroid.
pub fn standard_building_sets(lattice: Arc<FlatLattice>) -> Result<(BuildingSet, BuildingSet)> {
    let min = BuildingSet::minimal(lattice.clone())?;
    Ok((BuildingSet::maximal(lattice), min))
}

/// Validated building sets strictly between `𝒢_min` and `𝒢_max`, of the form
/// `𝒢_min ∪ X` for `X ⊆ 𝒢_max ∖ 𝒢_min`. Every such `X` is tried when there are at
/// most 64 of them. Otherwise 96 random candidates drawn from `seed` are tried:
/// two thirds add one to three random flats, the rest add a uniformly random subset.
/// Returns at most `limit` distinct building sets, in the order found.
pub fn intermediate_building_sets(lattice: &Arc<FlatLattice>, limit: usize, seed: u64) -> Result<Vec<BuildingSet>> {
    let min = minimal_members(lattice)?;
    let extras: Vec<usize> = (1..lattice.len()).filter(|i| !min.contains(i)).collect();
    if extras.len() < 2 {
        return Ok(Vec::new());
    }
    let masks: Vec<Vec<bool>> = if extras.len() <= 6 {
        (1u32..(1 << extras.len()) - 1)
            .map(|mask| (0..extras.len()).map(|i| mask >> i & 1 == 1).collect())
            .collect()
    } else {
        let mut rng = StdRng::seed_from_u64(seed);
        (0..96)
            .map(|i| {
                if i % 3 < 2 {
                    let mut mask = vec![false; extras.len()];
                    for _ in 0..rng.gen_range(1..=3) {
                        mask[rng.gen_range(0..extras.len())] = true;
                    }
                    mask
                } else {
                    (0..extras.len()).map(|_| rng.gen_bool(0.5)).collect()
                }
            })
            .collect()
    };
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut out = Vec::new();
    for mask in masks {
        if out.len() >= limit {
            break;
        }
        if mask.iter().all(|&b| b) || mask.iter().all(|&b| !b) || !seen.insert(mask.clone()) {
            continue;
        }
        let chosen = (0..extras.len()).filter(|&i| mask[i]).map(|i| extras[i]);
        if let Ok(g) = BuildingSet::new(lattice.clone(), min.iter().copied().chain(chosen)) {
            out.push(g);
        }
    }
    Ok(out)
}

fn minimal_members(lattice: &FlatLattice) -> Result<Vec<usize>> {
    let m = lattice.matroid();
    let mut out = Vec::new();
    for i in 1..lattice.len() {
        if m.restriction(lattice.flat(i))?.matroid.is_connected() {
            out.push(i);
        }
    }
    Ok(out)
}

/// The join map `∏ [⊥, G_i] → [⊥, X]` must be an order isomorphism.
fn check_product(l: &FlatLattice, x: usize, factors: &[usize]) -> Result<()> {
    let fail = |why: &str| Err(Error::NotBuildingSet(format!("interval below {} {why}", l.flat(x))));
    if factors.is_empty() {
        return fail("has no building-set members");
    }
    let bottom = l.bottom();
    let parts: Vec<Vec<usize>> = factors.iter().map(|&g| l.interval(bottom, g)).collect();
    let target = l.interval(bottom, x);
    let size: usize = parts.iter().map(Vec::len).product();
    if size != target.len() {
        return fail("is not the product of its factor intervals");
    }
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for p in &parts {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                p.iter().map(move |&y| {
                    let mut t = t.clone();
                    t.push(y);
                    t
                })
            })
            .collect();
    }
    let images: Vec<usize> = tuples
        .iter()
        .map(|t| t.iter().fold(bottom, |acc, &y| l.join(acc, y)))
        .collect();
    let distinct: HashSet<usize> = images.iter().copied().collect();
    if distinct.len() != images.len() || !images.iter().all(|&y| l.leq(y, x)) {
        return fail("is not in bijection with the factor product");
    }
    for (a, ta) in tuples.iter().enumerate() {
        for (b, tb) in tuples.iter().enumerate() {
            let componentwise = ta.iter().zip(tb).all(|(&u, &v)| l.leq(u, v));
            if componentwise != l.leq(images[a], images[b]) {
                return fail("is not order-isomorphic to the factor product");
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(m: &Matroid) -> Arc<FlatLattice> {
        Arc::new(FlatLattice::build(m))
    }

    fn k4() -> Matroid {
        Matroid::graphic(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn standard_sets_small() {
        let l = lat(&Matroid::uniform(2, 3).unwrap());
        let (max, min) = standard_building_sets(l.clone()).unwrap();
        assert_eq!(max.len(), 4);
        assert_eq!(min.members(), max.members());

        let l = lat(&Matroid::uniform(2, 2).unwrap());
        let (max, min) = standard_building_sets(l.clone()).unwrap();
        assert_eq!(
            min.member_flats(),
            vec![GroundSubset::singleton(0), GroundSubset::singleton(1)]
        );
        assert_eq!(max.len(), 3);
        assert_eq!(min.top_factors().len(), 2);
    }

    #[test]
    fn atoms_only_rejected() {
        let l = lat(&Matroid::uniform(2, 3).unwrap());
        let atoms: Vec<usize> = l.atoms().collect();
        assert!(!is_building_set(&l, &atoms));
        assert!(BuildingSet::new(l.clone(), Vec::new()).is_err());
    }

    #[test]
    fn k4_minimal_validates() {
        let l = lat(&k4());
        let min = BuildingSet::minimal(l.clone()).unwrap();
        // 6 edges, 4 triangles, and E
        assert_eq!(min.len(), 11);
    }

    #[test]
    fn nested_counts() {
        let l = lat(&Matroid::uniform(2, 3).unwrap());
        let max = BuildingSet::maximal(l);
        assert_eq!(max.nested_sets().len(), 8);
        let (star, circ) = max.partition();
        assert_eq!(star.len(), 4);
        assert_eq!(circ.len(), 4);

        let l = lat(&Matroid::uniform(2, 2).unwrap());
        let min = BuildingSet::minimal(l).unwrap();
        let all = min.nested_sets();
        assert_eq!(all.len(), 4);
        let (star, _) = min.partition();
        assert_eq!(star.len(), 1);
    }

    #[test]
    fn nested_sets_are_hereditary() {
        let l = lat(&k4());
        for g in [BuildingSet::maximal(l.clone()), BuildingSet::minimal(l).unwrap()] {
            let all: HashSet<NestedSet> = g.nested_sets().into_iter().collect();
            for s in &all {
                assert!(g.is_nested(&s.0));
                for i in 0..s.len() {
                    let mut t = s.0.clone();
                    t.remove(i);
                    assert!(all.contains(&NestedSet(t)));
                }
            }
        }
    }

    #[test]
    fn intermediates_are_strict_and_valid() {
        let l = lat(&k4());
        let found = intermediate_building_sets(&l, 5, 7).unwrap();
        assert!(found.len() >= 3);
        let min = BuildingSet::minimal(l.clone()).unwrap();
        for g in &found {
            assert!(g.len() > min.len() && !g.is_maximal());
            assert!(min.members().iter().all(|&f| g.contains(f)));
        }
        let line = lat(&Matroid::uniform(2, 3).unwrap());
        assert!(intermediate_building_sets(&line, 5, 7).unwrap().is_empty());
    }

    #[test]
    fn induced_sets_validate() {
        let l = lat(&Matroid::uniform(2, 3).unwrap());
        let min = BuildingSet::minimal(l.clone()).unwrap();
        let x = l.flat_index(GroundSubset::singleton(0)).unwrap();
        let (r, _) = min.restriction(x).unwrap();
        assert_eq!(r.len(), 1);
        let (c, labels) = min.contraction(x).unwrap();
        assert_eq!(labels, vec![1, 2]);
        assert!(c.is_maximal());

        let l = lat(&k4());
        let max = BuildingSet::maximal(l.clone());
        for x in l.interior() {
            assert!(max.restriction(x).unwrap().0.is_maximal());
            assert!(max.contraction(x).unwrap().0.is_maximal());
        }
    }
}
