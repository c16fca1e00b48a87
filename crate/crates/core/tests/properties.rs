use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use matroid_zeta::building::{intermediate_building_sets, is_building_set};
use matroid_zeta::oracle::char_poly_whitney;
use matroid_zeta::poincare::PoincareData;
use matroid_zeta::zeta::{motivic_zeta, zeta};
use matroid_zeta::{
    BiPoly, BuildingSet, FlatLattice, GroundSubset, LaurentPoly, Matroid, RationalQT, RationalS, ZetaKind,
};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..5, -6i64..7), 0..5)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..5)
        .prop_map(|terms| BiPoly::from_terms(terms.into_iter().map(|(q, t, c)| (q, t, BigInt::from(c)))))
}

fn rational_qt() -> impl Strategy<Value = RationalQT> {
    (
        bipoly(),
        prop::collection::vec((1u32..4, 0u32..4), 0..3),
        -2i64..3,
        -2i64..3,
    )
        .prop_map(|(num, dens, qe, te)| {
            dens.into_iter().fold(
                &RationalQT::from_bipoly(num) * &RationalQT::monomial(qe, te),
                |acc, (a, b)| &acc * &RationalQT::binomial_inverse(a, b),
            )
        })
}

fn rational_s() -> impl Strategy<Value = RationalS> {
    (
        prop::collection::vec(-5i64..6, 0..4),
        prop::collection::vec((1i64..4, 1i64..5), 0..3),
    )
        .prop_map(|(num, lins)| {
            let base = RationalS::from_i64(&num, &[1]).unwrap();
            lins.into_iter()
                .fold(base, |acc, (a, b)| &acc * &RationalS::linear_inverse(a, b))
        })
}

/// Graphic matroids on up to five vertices; self-loops and parallel edges included.
fn small_matroid() -> impl Strategy<Value = Matroid> {
    prop::collection::vec((0usize..5, 0usize..5), 1..7).prop_map(|edges| Matroid::graphic(&edges).unwrap())
}

fn loopless_matroid() -> impl Strategy<Value = Matroid> {
    prop::collection::vec((0usize..5, 0usize..5), 1..7).prop_map(|edges| {
        let edges: Vec<_> = edges
            .into_iter()
            .map(|(u, v)| if u == v { (u, (v + 1) % 5) } else { (u, v) })
            .collect();
        Matroid::graphic(&edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.substitute_inverse().substitute_inverse(), a.clone());
        prop_assert_eq!((&a * &b).substitute_inverse(), &a.substitute_inverse() * &b.substitute_inverse());
    }

    #[test]
    fn laurent_parse_round_trip(a in laurent()) {
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a.clone());
        prop_assert_eq!(LaurentPoly::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn laurent_exact_division(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn bipoly_round_trip(a in bipoly(), b in bipoly()) {
        prop_assert_eq!(a.to_string().parse::<BiPoly>().unwrap(), a.clone());
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn rational_qt_field_axioms(a in rational_qt(), b in rational_qt(), c in rational_qt()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.substitute_inverse().substitute_inverse(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), RationalQT::one());
        }
    }

    #[test]
    fn rational_qt_text_and_json(a in rational_qt()) {
        prop_assert_eq!(a.to_string().parse::<RationalQT>().unwrap(), a.clone());
        prop_assert_eq!(RationalQT::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn rational_s_field_axioms(a in rational_s(), b in rational_s(), c in rational_s()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.to_string().parse::<RationalS>().unwrap(), a.clone());
        prop_assert_eq!(RationalS::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn rank_axioms(m in small_matroid()) {
        let e = m.ground_set();
        for a in e.subsets() {
            prop_assert!(m.rank_of(a) <= a.len());
            for x in e.difference(a).iter() {
                let grown = m.rank_of(a.with(x));
                prop_assert!(grown == m.rank_of(a) || grown == m.rank_of(a) + 1);
            }
        }
        let subsets: Vec<GroundSubset> = e.subsets().collect();
        for &a in &subsets {
            for &b in &subsets {
                prop_assert!(m.rank_of(a.union(b)) + m.rank_of(a.intersection(b)) <= m.rank_of(a) + m.rank_of(b));
            }
        }
    }

    #[test]
    fn lattice_matches_whitney(m in small_matroid()) {
        let l = FlatLattice::build(&m);
        prop_assert_eq!(l.char_poly(), char_poly_whitney(&m).unwrap());
        for i in 0..l.len() {
            for j in 0..l.len() {
                if l.lt(i, j) {
                    let total: i64 = l.interval(i, j).into_iter().map(|k| l.mobius_idx(i, k).unwrap()).sum();
                    prop_assert_eq!(total, 0);
                }
            }
            prop_assert_eq!(l.flat(i), m.closure(l.flat(i)));
        }
    }

    #[test]
    fn duality_of_reduced_zeta(m in small_matroid()) {
        let r = m.rank() as i64;
        let z = zeta(&m, ZetaKind::Reduced).unwrap().collapse();
        prop_assert_eq!(z.substitute_inverse(), &RationalQT::monomial(r - 1, 0) * &z);
    }

    #[test]
    fn zeta_independent_of_building_set(m in loopless_matroid(), seed in 0u64..100) {
        let l = Arc::new(FlatLattice::build(&m));
        let max = BuildingSet::maximal(l.clone());
        let min = BuildingSet::minimal(l.clone()).unwrap();
        let mut sets = vec![min];
        sets.extend(intermediate_building_sets(&l, 2, seed).unwrap());
        for kind in ZetaKind::ALL {
            let expected = motivic_zeta(&max, kind).unwrap().collapse();
            for g in &sets {
                prop_assert!(is_building_set(&l, g.members()));
                prop_assert_eq!(motivic_zeta(g, kind).unwrap().collapse(), expected.clone());
            }
        }
    }

    #[test]
    fn nested_sets_are_hereditary(m in loopless_matroid()) {
        let g = BuildingSet::minimal(Arc::new(FlatLattice::build(&m))).unwrap();
        let nested = g.nested_sets();
        for s in &nested {
            for skip in 0..s.len() {
                let mut smaller = s.members().to_vec();
                smaller.remove(skip);
                prop_assert!(g.is_nested(&smaller));
            }
        }
    }

    #[test]
    fn p_equals_h(m in loopless_matroid()) {
        let l = Arc::new(FlatLattice::build(&m));
        for g in [BuildingSet::maximal(l.clone()), BuildingSet::minimal(l).unwrap()] {
            let d = PoincareData::compute(&g).unwrap();
            prop_assert_eq!(&d.p, &d.h);
        }
    }

    #[test]
    fn series_agrees_with_structured_sum(m in small_matroid()) {
        let z = zeta(&m, ZetaKind::Full).unwrap();
        let series = z.collapse().series_coefficients(4).unwrap();
        let direct = z.terms.iter().fold(vec![LaurentPoly::zero(); 5], |mut acc, t| {
            let term = t.generators.iter().fold(RationalQT::from_laurent(&t.coeff), |x, &(a, b)| {
                &x * &RationalQT::generator(a, b)
            });
            let shifted = &term * &RationalQT::monomial(z.shift, 0);
            for (slot, c) in acc.iter_mut().zip(shifted.series_coefficients(4).unwrap()) {
                *slot += &c;
            }
            acc
        });
        prop_assert_eq!(series, direct);
    }
}
