//! Built-in matroids and the desk-scale test corpus.

use crate::algebra::{LaurentPoly, RationalQT};
use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::subset::GroundSubset;
use crate::zeta::{zeta, ZetaKind};

pub const NAMES: [&str; 7] = ["fano", "nonfano", "k4", "M1", "M2", "N1", "N2"];

/// Known characteristic polynomial shared by `M1` and `M2`.
pub const M12_CHAR_POLY: &str = "q^4 - 7*q^3 + 19*q^2 - 23*q + 10";

/// Known topological zeta function of `M1`.
pub const M1_TOPOLOGICAL: &str = "(-120*s^6 + 20*s^5 + 120*s^4 - 129*s^3 - 29*s^2 + 162*s + 72) \
     / ((s + 1)^3*(3*s + 2)*(4*s + 3)*(5*s + 3)*(7*s + 4))";

/// Known topological zeta function of `M2`.
pub const M2_TOPOLOGICAL: &str = "(-120*s^6 + 22*s^5 + 120*s^4 - 129*s^3 - 29*s^2 + 162*s + 72) \
     / ((s + 1)^3*(3*s + 2)*(4*s + 3)*(5*s + 3)*(7*s + 4))";

/// Known motivic zeta function shared by `N1` and `N2`.
pub const N12_ZETA: &str = "(q - 1)*(3*q^4*T^3 - q^3*T^4 - 11*q^2*T^5 + q^6 + 5*q^5*T + 3*q^4*T^2 \
     - 6*q^3*T^3 + 18*q^2*T^4 + 6*q*T^5 - 6*q^5 - 18*q^4*T + 6*q^3*T^2 - 3*q^2*T^3 - 5*q*T^4 \
     - T^5 + 11*q^4 + q^3*T - 3*q^2*T^2) / ((q - T)^2*(q^2 - T^3)*(q^3 - T^7))";

fn set(elements: &[usize]) -> GroundSubset {
    GroundSubset::from_elements(elements.iter().copied())
}

fn lines(n: usize, r: usize, dependent: &[(&[usize], usize)]) -> Matroid {
    let bounds: Vec<(GroundSubset, usize)> = dependent.iter().map(|&(f, k)| (set(f), k)).collect();
    Matroid::from_rank_bounds(n, r, &bounds).expect("built-in matroid data is valid")
}

const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 3],
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 0],
    [5, 6, 1],
    [6, 0, 2],
];

pub fn fano() -> Matroid {
    let l: Vec<(&[usize], usize)> = FANO_LINES.iter().map(|l| (&l[..], 2)).collect();
    lines(7, 3, &l)
}

/// The Fano plane with the line `{6, 0, 2}` relaxed.
pub fn non_fano() -> Matroid {
    let l: Vec<(&[usize], usize)> = FANO_LINES[..6].iter().map(|l| (&l[..], 2)).collect();
    lines(7, 3, &l)
}

pub fn k4() -> Matroid {
    Matroid::graphic(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("K4 is a valid graph")
}

/// Rank 4 on 7 points: two 3-point lines and three special planes.
pub fn m1() -> Matroid {
    lines(
        7,
        4,
        &[
            (&[2, 4, 6], 2),
            (&[0, 5, 6], 2),
            (&[0, 1, 2, 3], 3),
            (&[1, 3, 4, 5], 3),
            (&[0, 2, 4, 5, 6], 3),
        ],
    )
}

/// Rank 4 on 7 points: two disjoint 3-point lines spanning a 5-point plane.
pub fn m2() -> Matroid {
    lines(7, 4, &[(&[0, 1, 2], 2), (&[4, 5, 6], 2), (&[0, 1, 2, 3, 4], 3)])
}

/// Rank 3 on 7 points with four 3-point lines, two of them disjoint.
pub fn n1() -> Matroid {
    lines(
        7,
        3,
        &[(&[0, 4, 5], 2), (&[0, 1, 2], 2), (&[2, 3, 5], 2), (&[1, 6, 3], 2)],
    )
}

/// Rank 3 on 7 points with four 3-point lines, any two of them meeting.
pub fn n2() -> Matroid {
    lines(
        7,
        3,
        &[(&[0, 4, 5], 2), (&[0, 1, 2], 2), (&[2, 3, 5], 2), (&[0, 6, 3], 2)],
    )
}

/// Looks up a built-in matroid by name (case-insensitive).
pub fn by_name(name: &str) -> Result<Matroid> {
    match name.to_ascii_lowercase().as_str() {
        "fano" => Ok(fano()),
        "nonfano" | "non-fano" => Ok(non_fano()),
        "k4" => Ok(k4()),
        "m1" => Ok(m1()),
        "m2" => Ok(m2()),
        "n1" => Ok(n1()),
        "n2" => Ok(n2()),
        _ => Err(Error::Parse(format!(
            "unknown matroid {name:?}; expected one of {}",
            NAMES.join(", ")
        ))),
    }
}

/// Checks a built-in matroid against a known invariant: `χ` for `M1`/`M2`,
/// the motivic zeta function for `N1`/`N2`. Other names pass trivially.
pub fn self_check(name: &str) -> Result<()> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "m1" | "m2" => {
            let chi = FlatLattice::build(&by_name(name)?).char_poly();
            let expected: LaurentPoly = M12_CHAR_POLY.parse()?;
            if chi != expected {
                return Err(Error::Invariant(format!(
                    "built-in {name} fails its self-check: characteristic polynomial {chi}, expected {expected}"
                )));
            }
        }
        "n1" | "n2" => {
            let z = zeta(&by_name(name)?, ZetaKind::Full)?.collapse();
            let expected: RationalQT = N12_ZETA.parse()?;
            if z != expected {
                return Err(Error::Invariant(format!(
                    "built-in {name} fails its self-check: zeta function {z}, expected {expected}"
                )));
            }
        }
        _ => {}
    }
    Ok(())
}

/// The test corpus: `U_{r,n}` for `0 ≤ r < n ≤ 6`, `U_{n,n}` for `n ≤ 4`, `K4`,
/// Fano, non-Fano, `M1`, `M2`, `N1`, `N2`.
pub fn corpus() -> Vec<(String, Matroid)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for r in 0..n {
            out.push((format!("U{r},{n}"), Matroid::uniform(r, n).expect("small uniform")));
        }
    }
    for n in 1..=4 {
        out.push((format!("U{n},{n}"), Matroid::uniform(n, n).expect("small uniform")));
    }
    out.push(("K4".into(), k4()));
    out.push(("fano".into(), fano()));
    out.push(("nonfano".into(), non_fano()));
    out.push(("M1".into(), m1()));
    out.push(("M2".into(), m2()));
    out.push(("N1".into(), n1()));
    out.push(("N2".into(), n2()));
    out
}
