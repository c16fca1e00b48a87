//! Brute-force references: the Whitney subset sum for `χ_M` and truncated
//! lattice-point sums for the zeta functions.

use num_bigint::BigInt;

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, WeightVector};
use crate::zeta::ZetaKind;

pub const WHITNEY_MAX_N: usize = 12;
pub const ORACLE_MAX_N: usize = 7;
pub const ORACLE_MAX_T: usize = 10;

/// `χ_M(q) = Σ_{S ⊆ E} (-1)^{#S} q^{rk M - rk S}`.
pub fn char_poly_whitney(m: &Matroid) -> Result<LaurentPoly> {
    if m.n() > WHITNEY_MAX_N {
        return Err(Error::TooLarge {
            what: format!("Whitney sum over {} elements", m.n()),
            limit: WHITNEY_MAX_N,
        });
    }
    Ok(whitney(m))
}

fn whitney(m: &Matroid) -> LaurentPoly {
    let r = m.rank() as i64;
    let mut coeffs = vec![0i64; m.rank() + 1];
    for s in m.ground_set().subsets() {
        let sign = if s.len() % 2 == 0 { 1 } else { -1 };
        coeffs[(r - m.rank_of(s) as i64) as usize] += sign;
    }
    LaurentPoly::from_terms(coeffs.into_iter().enumerate().map(|(e, c)| (e as i64, BigInt::from(c))))
}

/// Coefficients of `T^0 .. T^max_t` of the zeta function of the given kind, summed
/// over weight vectors directly. Limited to `n ≤ 7` and `max_t ≤ 10`.
pub fn truncated_zeta_sum(m: &Matroid, kind: ZetaKind, max_t: usize) -> Result<Vec<LaurentPoly>> {
    if m.n() > ORACLE_MAX_N {
        return Err(Error::TooLarge {
            what: format!("oracle over {} elements", m.n()),
            limit: ORACLE_MAX_N,
        });
    }
    if max_t > ORACLE_MAX_T {
        return Err(Error::TooLarge {
            what: format!("oracle up to T^{max_t}"),
            limit: ORACLE_MAX_T,
        });
    }
    truncated_zeta_sum_unchecked(m, kind, max_t)
}

/// [`truncated_zeta_sum`] without the size limits.
pub fn truncated_zeta_sum_unchecked(m: &Matroid, kind: ZetaKind, max_t: usize) -> Result<Vec<LaurentPoly>> {
    let r = m.rank() as i64;
    let qm1 = LaurentPoly::q_minus_one();
    let mut out = vec![LaurentPoly::zero(); max_t + 1];
    for (k, slot) in out.iter_mut().enumerate() {
        for w in weights_of_size(m.n(), k) {
            let min = w.iter().copied().min().unwrap_or(0);
            let keep = match kind {
                ZetaKind::Full => true,
                ZetaKind::Local => min > 0,
                ZetaKind::Reduced => min == 0,
            };
            if !keep {
                continue;
            }
            let w = WeightVector(w);
            let mw = m.initial_matroid(&w)?;
            let wt = m.max_weight(&w)?;
            let chi = whitney(&mw);
            let term = match kind {
                ZetaKind::Reduced => chi.exact_div(&qm1)?.shift(-(r - 1) - wt),
                _ => chi.shift(-r - wt),
            };
            *slot += &term;
        }
    }
    Ok(out)
}

/// All `w ∈ ℤ^n_{≥0}` with `|w| = k`, in lexicographic order.
pub fn weights_of_size(n: usize, k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fill(n, k as i64, &mut current, &mut out);
    out
}

fn fill(n: usize, left: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if current.len() + 1 == n {
        current.push(left);
        out.push(current.clone());
        current.pop();
        return;
    }
    if n == 0 {
        return;
    }
    for x in 0..=left {
        current.push(x);
        fill(n, left - x, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::GroundSubset;

    #[test]
    fn whitney_examples() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert_eq!(char_poly_whitney(&u12).unwrap(), LaurentPoly::from_coeffs(&[-1, 1]));
        let with_loop = Matroid::from_bases(3, [GroundSubset::from_elements([0, 1])]).unwrap();
        assert!(char_poly_whitney(&with_loop).unwrap().is_zero());
        let big = Matroid::uniform(1, 13).unwrap();
        assert!(matches!(char_poly_whitney(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn weight_enumeration() {
        assert_eq!(weights_of_size(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(weights_of_size(3, 4).len(), 15);
        assert_eq!(weights_of_size(1, 3), vec![vec![3]]);
    }

    #[test]
    fn constant_term_and_local_vanishing() {
        let m = Matroid::uniform(2, 3).unwrap();
        let full = truncated_zeta_sum(&m, ZetaKind::Full, 3).unwrap();
        assert_eq!(full[0], char_poly_whitney(&m).unwrap().shift(-2));
        let local = truncated_zeta_sum(&m, ZetaKind::Local, 4).unwrap();
        assert!(local[..3].iter().all(LaurentPoly::is_zero));
        assert!(!local[3].is_zero());
    }

    #[test]
    fn guards() {
        let m = Matroid::uniform(2, 8).unwrap();
        assert!(truncated_zeta_sum(&m, ZetaKind::Full, 2).is_err());
        let m = Matroid::uniform(2, 3).unwrap();
        assert!(truncated_zeta_sum(&m, ZetaKind::Full, 11).is_err());
    }
}
