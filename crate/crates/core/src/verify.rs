//! Executable identities grouped into suites, producing a pass/fail report.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{LaurentPoly, RationalQT, RationalS};
use crate::building::{intermediate_building_sets, BuildingSet};
use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::oracle;
use crate::poincare::{in_q_squared, q_integer, vdv_zeta, PoincareData};
use crate::zeta::{motivic_zeta, zeta, ZetaKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Functional,
    Recurrence,
    Taylor,
    Oracle,
    BuildingSet,
    Poincare,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Functional,
        Suite::Recurrence,
        Suite::Taylor,
        Suite::Oracle,
        Suite::BuildingSet,
        Suite::Poincare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Functional => "functional",
            Suite::Recurrence => "recurrence",
            Suite::Taylor => "taylor",
            Suite::Oracle => "oracle",
            Suite::BuildingSet => "buildingset",
            Suite::Poincare => "poincare",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// One identity check. `left` and `right` are filled only on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub left: Option<String>,
    pub right: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push<T: PartialEq + fmt::Display>(&mut self, name: impl Into<String>, left: &T, right: &T) {
        let passed = left == right;
        self.checks.push(Check {
            name: name.into(),
            passed,
            left: (!passed).then(|| left.to_string()),
            right: (!passed).then(|| right.to_string()),
        });
    }

    fn push_bool(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            left: None,
            right: None,
        });
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| {
                let mut v = json!({"name": c.name, "status": if c.passed { "pass" } else { "fail" }});
                if let Some(l) = &c.left {
                    v["left"] = json!(l);
                }
                if let Some(r) = &c.right {
                    v["right"] = json!(r);
                }
                v
            }).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.passed { "pass" } else { "FAIL" }, c.name)?;
            if let (Some(l), Some(r)) = (&c.left, &c.right) {
                writeln!(f, "    left:  {l}")?;
                writeln!(f, "    right: {r}")?;
            }
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Number of series coefficients compared against the oracle.
    pub tmax: usize,
    /// Lift the oracle size limits.
    pub force: bool,
    /// Maximum number of sampled intermediate building sets.
    pub intermediates: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tmax: 8,
            force: false,
            intermediates: 3,
            seed: 1,
        }
    }
}

/// The building sets a verification run exercises: `𝒢_max`, and for loopless
/// matroids `𝒢_min` and sampled intermediates, each with a label.
pub fn tested_building_sets(lattice: &Arc<FlatLattice>, opts: &VerifyOptions) -> Result<Vec<(String, BuildingSet)>> {
    let mut out = vec![("max".to_string(), BuildingSet::maximal(lattice.clone()))];
    if lattice.matroid().is_loopless() {
        let min = BuildingSet::minimal(lattice.clone())?;
        if !min.is_maximal() {
            out.push(("min".to_string(), min));
        }
        for (i, g) in intermediate_building_sets(lattice, opts.intermediates, opts.seed)?
            .into_iter()
            .enumerate()
        {
            out.push((format!("sampled{}", i + 1), g));
        }
    }
    Ok(out)
}

pub fn run(m: &Matroid, suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let mut report = Report::default();
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let lattice = Arc::new(FlatLattice::build(m));
    for s in suites {
        match s {
            Suite::Functional => functional(&lattice, &mut report)?,
            Suite::Recurrence => recurrence(&lattice, &mut report)?,
            Suite::Taylor => taylor(m, &mut report)?,
            Suite::Oracle => oracle_suite(&lattice, opts, &mut report)?,
            Suite::BuildingSet => building_sets(&lattice, opts, &mut report)?,
            Suite::Poincare => poincare(&lattice, &mut report)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    Ok(report)
}

fn functional(lattice: &Arc<FlatLattice>, report: &mut Report) -> Result<()> {
    let m = lattice.matroid();
    let (r, n) = (m.rank() as i64, m.n() as u32);
    let g = BuildingSet::maximal(lattice.clone());
    let full = motivic_zeta(&g, ZetaKind::Full)?;
    let local = motivic_zeta(&g, ZetaKind::Local)?.collapse();
    let reduced_s = motivic_zeta(&g, ZetaKind::Reduced)?;
    let reduced = reduced_s.collapse();

    let q_inv_qm1 = &RationalQT::monomial(-1, 0) * &RationalQT::from_laurent(&LaurentPoly::q_minus_one());
    let geometric = &RationalQT::monomial(r, 0) * &RationalQT::binomial_inverse(n, r as u32);
    report.push(
        "relationship: full from reduced",
        &full.collapse(),
        &(&(&q_inv_qm1 * &geometric) * &reduced),
    );
    let local_factor = &RationalQT::monomial(-1, 0) * &RationalQT::generator(n, r as u32);
    report.push("relationship: local from reduced", &local, &(&local_factor * &reduced));

    report.push(
        "functional equation",
        &reduced.substitute_inverse(),
        &(&RationalQT::monomial(r - 1, 0) * &reduced),
    );

    let chi_bar = lattice.reduced_char_poly()?;
    report.push(
        "alternating sum",
        &reduced_s.shifted(r - 1).limit_t_infinity(),
        &chi_bar.substitute_inverse().shift(r - 1),
    );

    let chi = lattice.char_poly();
    report.push("value at T = 0", &full.at_t_zero().shift(r), &chi);
    report.push("collapsed value at T = 0", &full.collapse().at_t_zero()?.shift(r), &chi);
    Ok(())
}

/// `[rk F2 - rk F1]_q = Σ_{F1 ⊆ F ⊊ F2} χ̄(M|F2/F)` on every pair, and the two
/// sums over proper flats for loopless matroids.
fn mobius_identities(l: &FlatLattice, report: &mut Report) -> Result<()> {
    let mut ok = true;
    let mut first_failure = None;
    for f1 in 0..l.len() {
        for f2 in 0..l.len() {
            if !l.leq(f1, f2) {
                continue;
            }
            let left = q_integer(l.rank(f2) - l.rank(f1));
            let mut right = LaurentPoly::zero();
            for f in l.interval(f1, f2) {
                if f != f2 {
                    right += &l.interval_reduced_char_poly(f, f2)?;
                }
            }
            if left != right && first_failure.is_none() {
                ok = false;
                first_failure = Some((left, right));
            }
        }
    }
    match first_failure {
        Some((a, b)) => report.push("q-integer from reduced characteristic polynomials", &a, &b),
        None => report.push_bool("q-integer from reduced characteristic polynomials", ok),
    }
    let m = l.matroid();
    if m.is_loopless() {
        let top = l.top();
        let mut sum = LaurentPoly::zero();
        let mut weighted = LaurentPoly::zero();
        for f in l.interior() {
            let c = l.interval_reduced_char_poly(f, top)?;
            weighted += &c.scale(&BigInt::from(l.size(f)));
            sum += &c;
        }
        report.push(
            "reduced characteristic polynomial from contractions",
            &l.reduced_char_poly()?,
            &(&q_integer(m.rank()) - &sum),
        );
        let rank_minus_one = q_integer(m.rank().saturating_sub(1));
        report.push(
            "size-weighted contraction sum",
            &weighted,
            &rank_minus_one.scale(&BigInt::from(m.n())),
        );
    }
    Ok(())
}

fn recurrence(lattice: &Arc<FlatLattice>, report: &mut Report) -> Result<()> {
    mobius_identities(lattice, report)?;
    let m = lattice.matroid();
    if !m.is_loopless() {
        let z = zeta(m, ZetaKind::Local)?;
        report.push_bool("zeta of a matroid with a loop vanishes", z.collapse().is_zero());
        return Ok(());
    }
    let (r, n) = (m.rank() as i64, m.n() as u32);
    let top = lattice.top();
    let mut bracket = RationalQT::from_laurent(&lattice.reduced_char_poly()?);
    let mut top_items: Vec<RationalS> = vec![RationalS::constant(BigRational::from_integer(
        lattice.reduced_char_poly()?.eval_one(),
    ))];
    let mut p_bar = lattice.reduced_char_poly()?;
    let mut h_bar = lattice.reduced_char_poly()?;
    for f in lattice.interior() {
        let contraction = lattice.interval_reduced_char_poly(f, top)?;
        let restriction = m.restriction(lattice.flat(f))?.matroid;
        let local = zeta(&restriction, ZetaKind::Local)?;
        let term = &(&RationalQT::from_laurent(&contraction) * &RationalQT::monomial(lattice.rank(f) as i64, 0))
            * &local.collapse();
        bracket = &bracket + &term;
        let c1 = BigRational::from_integer(contraction.eval_one());
        top_items.push(&RationalS::constant(c1) * &zeta(&restriction, ZetaKind::Full)?.mu_top()?);
        let data = PoincareData::compute(&BuildingSet::maximal(Arc::new(FlatLattice::build(&restriction))))?;
        p_bar += &(&contraction * data.p_total());
        h_bar += &(&contraction * data.h_total());
    }
    let local = zeta(m, ZetaKind::Local)?;
    report.push(
        "local zeta recurrence",
        &(&RationalQT::monomial(r, 0) * &local.collapse()),
        &(&RationalQT::generator(n, r as u32) * &bracket),
    );
    let sum = top_items.iter().fold(RationalS::zero(), |acc, x| &acc + x);
    report.push(
        "topological zeta recurrence",
        &zeta(m, ZetaKind::Full)?.mu_top()?,
        &(&RationalS::linear_inverse(n as i64, r) * &sum),
    );
    let data = PoincareData::compute(&BuildingSet::maximal(lattice.clone()))?;
    report.push("Poincaré polynomial recurrence", data.p_total(), &p_bar);
    report.push("H polynomial recurrence", data.h_total(), &h_bar);
    Ok(())
}

fn taylor(m: &Matroid, report: &mut Report) -> Result<()> {
    let top_full = zeta(m, ZetaKind::Full)?.mu_top()?;
    let top_local = zeta(m, ZetaKind::Local)?.mu_top()?;
    report.push("topological zeta from local zeta", &top_full, &top_local);
    if m.is_loopless() {
        report.push(
            "topological zeta at 0",
            &top_full.value_at_0()?,
            &BigRational::from_integer(1.into()),
        );
        report.push(
            "topological zeta derivative at 0",
            &top_full.derivative_at_0()?,
            &BigRational::from_integer(BigInt::from(-(m.n() as i64))),
        );
    }
    Ok(())
}

fn oracle_suite(lattice: &Arc<FlatLattice>, opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let m = lattice.matroid();
    let whitney = if opts.force || m.n() <= oracle::WHITNEY_MAX_N {
        oracle::char_poly_whitney(m).or_else(|_| Ok::<_, Error>(lattice.char_poly()))?
    } else {
        return Err(Error::TooLarge {
            what: format!("Whitney sum over {} elements", m.n()),
            limit: oracle::WHITNEY_MAX_N,
        });
    };
    report.push("characteristic polynomial, Whitney sum", &lattice.char_poly(), &whitney);
    let g = BuildingSet::maximal(lattice.clone());
    for kind in ZetaKind::ALL {
        let sums = if opts.force {
            oracle::truncated_zeta_sum_unchecked(m, kind, opts.tmax)?
        } else {
            oracle::truncated_zeta_sum(m, kind, opts.tmax)?
        };
        let series = motivic_zeta(&g, kind)?.collapse().series_coefficients(opts.tmax)?;
        report.push(
            format!("{kind} zeta series against lattice-point sums through T^{}", opts.tmax),
            &Coefficients(series),
            &Coefficients(sums),
        );
    }
    Ok(())
}

fn building_sets(lattice: &Arc<FlatLattice>, opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let m = lattice.matroid();
    let sets = tested_building_sets(lattice, opts)?;
    let max = &sets[0].1;
    let r = m.rank() as i64;
    let chi_bar = lattice.reduced_char_poly()?;
    let reference: Vec<RationalQT> = ZetaKind::ALL
        .iter()
        .map(|&k| motivic_zeta(max, k).map(|z| z.collapse()))
        .collect::<Result<_>>()?;
    let top_reference = motivic_zeta(max, ZetaKind::Full)?.mu_top()?;
    for (label, g) in &sets {
        for (kind, expected) in ZetaKind::ALL.iter().zip(&reference) {
            let z = motivic_zeta(g, *kind)?;
            if label != "max" {
                report.push(
                    format!("{kind} zeta with building set {label} equals max"),
                    &z.collapse(),
                    expected,
                );
            }
            if *kind == ZetaKind::Reduced {
                report.push(
                    format!("alternating sum with building set {label}"),
                    &z.shifted(r - 1).limit_t_infinity(),
                    &chi_bar.substitute_inverse().shift(r - 1),
                );
            }
        }
        if m.is_loopless() {
            let data = PoincareData::compute(g)?;
            let top = motivic_zeta(g, ZetaKind::Full)?.mu_top()?;
            report.push(
                format!("van der Veer formula with building set {label}"),
                &vdv_zeta(g, &data)?,
                &top,
            );
            if label != "max" {
                report.push(
                    format!("topological zeta with building set {label} equals max"),
                    &top,
                    &top_reference,
                );
            }
        }
    }
    Ok(())
}

fn poincare(lattice: &Arc<FlatLattice>, report: &mut Report) -> Result<()> {
    let m = lattice.matroid();
    if !m.is_loopless() {
        return Ok(());
    }
    let r = m.rank() as i64;
    let max = BuildingSet::maximal(lattice.clone());
    let min = BuildingSet::minimal(lattice.clone())?;
    for (label, g) in [("max", &max), ("min", &min)] {
        let data = PoincareData::compute(g)?;
        let all_equal = data.p == data.h;
        match data.p.iter().zip(&data.h).find(|(p, h)| p != h) {
            Some((p, h)) => report.push(format!("P = H at every nested set ({label})"), p, h),
            None => report.push_bool(format!("P = H at every nested set ({label})"), all_equal),
        }
        report.push(
            format!("Hilbert series is P(q^2) ({label})"),
            &data.hilbert_series(),
            &in_q_squared(data.p_total()),
        );
        let degrees_ok = data
            .nested
            .iter()
            .zip(&data.p)
            .all(|(s, p)| p.degree() == Some(r - s.len() as i64));
        report.push_bool(format!("deg P^S = rk M - #S ({label})"), degrees_ok);
        let top = g.top_factors();
        let bar_degrees_ok = data
            .p_bar()
            .iter()
            .all(|(s, p)| p.degree() == Some(r - s.union(top).len() as i64));
        report.push_bool(
            format!("deg of reduced P^S = rk M - #(S ∪ fact E) ({label})"),
            bar_degrees_ok,
        );
    }
    let data = PoincareData::compute(&max)?;
    let palindromic = data.p_bar().iter().all(|(s, p)| {
        let d = r - 1 - s.len() as i64;
        p.substitute_inverse() == p.shift(-d)
    });
    report.push_bool("palindromic reduced Poincaré polynomials (max)", palindromic);
    Ok(())
}

/// A list of series coefficients rendered as `[c0, c1, ...]`.
#[derive(PartialEq)]
struct Coefficients(Vec<LaurentPoly>);

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
