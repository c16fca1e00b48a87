//! Python bindings: `import mzeta`.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use matroid_zeta::io::{building_set_from_json, MatroidSpec};
use matroid_zeta::poincare::PoincareData;
use matroid_zeta::verify::{self, Suite, VerifyOptions};
use matroid_zeta::zeta::motivic_zeta;
use matroid_zeta::{self as core, oracle, Error, FlatLattice, GroundSubset, ZetaKind};

fn err(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json_string(v: serde_json::Value) -> String {
    v.to_string()
}

fn parse_json(text: &str) -> PyResult<serde_json::Value> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Laurent polynomial in q with integer coefficients.
#[pyclass(frozen, eq, skip_from_py_object, module = "mzeta")]
#[derive(Clone, PartialEq)]
struct LaurentPoly(core::LaurentPoly);

#[pymethods]
impl LaurentPoly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(LaurentPoly).map_err(err)
    }

    /// `(exponent, coefficient)` pairs in ascending order.
    fn terms(&self) -> Vec<(i64, String)> {
        self.0.terms().map(|(e, c)| (e, c.to_string())).collect()
    }

    fn degree(&self) -> Option<i64> {
        self.0.degree()
    }

    fn substitute_inverse(&self) -> Self {
        LaurentPoly(self.0.substitute_inverse())
    }

    fn to_json(&self) -> String {
        to_json_string(self.0.to_json())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        core::LaurentPoly::from_json(&parse_json(text)?)
            .map(LaurentPoly)
            .map_err(err)
    }

    fn __add__(&self, other: &Self) -> Self {
        LaurentPoly(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        LaurentPoly(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        LaurentPoly(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly('{}')", self.0)
    }
}

/// Rational function in q and T whose denominator is a product of binomials.
#[pyclass(frozen, eq, skip_from_py_object, module = "mzeta")]
#[derive(Clone, PartialEq)]
struct RationalQT(core::RationalQT);

#[pymethods]
impl RationalQT {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(RationalQT).map_err(err)
    }

    fn substitute_inverse(&self) -> Self {
        RationalQT(self.0.substitute_inverse())
    }

    /// Coefficients of `T^0 .. T^n` of the expansion around `T = 0`.
    fn series(&self, n: usize) -> PyResult<Vec<LaurentPoly>> {
        Ok(self
            .0
            .series_coefficients(n)
            .map_err(err)?
            .into_iter()
            .map(LaurentPoly)
            .collect())
    }

    fn to_json(&self) -> String {
        to_json_string(self.0.to_json())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        core::RationalQT::from_json(&parse_json(text)?)
            .map(RationalQT)
            .map_err(err)
    }

    fn __add__(&self, other: &Self) -> Self {
        RationalQT(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        RationalQT(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        RationalQT(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalQT('{}')", self.0)
    }
}

/// Rational function in s over the rationals.
#[pyclass(frozen, eq, skip_from_py_object, module = "mzeta")]
#[derive(Clone, PartialEq)]
struct RationalS(core::RationalS);

#[pymethods]
impl RationalS {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(RationalS).map_err(err)
    }

    /// Value at `s = 0` as a fraction string.
    fn value_at_0(&self) -> PyResult<String> {
        self.0.value_at_0().map(|v| v.to_string()).map_err(err)
    }

    fn derivative_at_0(&self) -> PyResult<String> {
        self.0.derivative_at_0().map(|v| v.to_string()).map_err(err)
    }

    fn to_json(&self) -> String {
        to_json_string(self.0.to_json())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalS('{}')", self.0)
    }
}

#[pyclass(frozen, module = "mzeta")]
struct Matroid {
    inner: core::Matroid,
    lattice: Arc<FlatLattice>,
}

impl Matroid {
    fn wrap(m: core::Matroid) -> Self {
        let lattice = Arc::new(FlatLattice::build(&m));
        Matroid { inner: m, lattice }
    }

    fn building_set_of(&self, choice: Option<&Bound<'_, PyAny>>) -> PyResult<core::BuildingSet> {
        let Some(choice) = choice else {
            return Ok(core::BuildingSet::maximal(self.lattice.clone()));
        };
        if let Ok(name) = choice.extract::<String>() {
            return match name.as_str() {
                "max" => Ok(core::BuildingSet::maximal(self.lattice.clone())),
                "min" => core::BuildingSet::minimal(self.lattice.clone()).map_err(err),
                other => Err(PyValueError::new_err(format!(
                    "building set must be \"max\", \"min\" or a list of flats, got {other:?}"
                ))),
            };
        }
        let flats: Vec<Vec<usize>> = choice.extract()?;
        building_set_from_json(&serde_json::json!(flats), self.lattice.clone()).map_err(err)
    }
}

fn kind_of(kind: &str) -> PyResult<ZetaKind> {
    kind.parse().map_err(err)
}

#[pymethods]
impl Matroid {
    #[staticmethod]
    fn uniform(r: usize, n: usize) -> PyResult<Self> {
        Self::from_spec(MatroidSpec::Uniform { r, n })
    }

    #[staticmethod]
    fn from_bases(n: usize, bases: Vec<Vec<usize>>) -> PyResult<Self> {
        Self::from_spec(MatroidSpec::Bases { n, bases })
    }

    #[staticmethod]
    fn graphic(edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Self::from_spec(MatroidSpec::Graph { edges })
    }

    /// One of fano, nonfano, k4, M1, M2, N1, N2.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        matroid_zeta::named::self_check(name).map_err(err)?;
        Self::from_spec(MatroidSpec::Named { name: name.to_string() })
    }

    /// A matroid document such as `{"type": "uniform", "r": 2, "n": 3}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Self::from_spec(MatroidSpec::parse(text).map_err(err)?)
    }

    fn to_json(&self) -> String {
        to_json_string(MatroidSpec::of_matroid(&self.inner).to_json())
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn bases(&self) -> Vec<Vec<usize>> {
        self.inner.bases().iter().map(|b| b.to_vec()).collect()
    }

    fn rank_of(&self, elements: Vec<usize>) -> usize {
        self.inner.rank_of(GroundSubset::from_elements(elements))
    }

    fn is_loopless(&self) -> bool {
        self.inner.is_loopless()
    }

    fn flats(&self) -> Vec<Vec<usize>> {
        self.lattice.flats().iter().map(|f| f.to_vec()).collect()
    }

    fn char_poly(&self) -> LaurentPoly {
        LaurentPoly(self.lattice.char_poly())
    }

    fn reduced_char_poly(&self) -> PyResult<LaurentPoly> {
        self.lattice.reduced_char_poly().map(LaurentPoly).map_err(err)
    }

    /// Members of a building set ("max", "min" or an explicit list of flats).
    #[pyo3(signature = (building_set = None))]
    fn building_set(&self, building_set: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<Vec<usize>>> {
        let g = self.building_set_of(building_set)?;
        Ok(g.member_flats().into_iter().map(|f| f.to_vec()).collect())
    }

    /// Nested sets of a building set, each a list of flats.
    #[pyo3(signature = (building_set = None))]
    fn nested_sets(&self, building_set: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<Vec<Vec<usize>>>> {
        let g = self.building_set_of(building_set)?;
        Ok(g.nested_sets()
            .iter()
            .map(|s| s.members().iter().map(|&f| self.lattice.flat(f).to_vec()).collect())
            .collect())
    }

    /// Motivic zeta function of the given kind (full, local or reduced).
    #[pyo3(signature = (kind = "full", building_set = None))]
    fn zeta(&self, kind: &str, building_set: Option<&Bound<'_, PyAny>>) -> PyResult<RationalQT> {
        let g = self.building_set_of(building_set)?;
        Ok(RationalQT(motivic_zeta(&g, kind_of(kind)?).map_err(err)?.collapse()))
    }

    fn topological_zeta(&self) -> PyResult<RationalS> {
        let g = core::BuildingSet::maximal(self.lattice.clone());
        let z = motivic_zeta(&g, ZetaKind::Full).map_err(err)?;
        z.mu_top().map(RationalS).map_err(err)
    }

    /// Dictionary with the reduced Poincaré, Euler-Poincaré and H polynomials
    /// and the Hilbert series of the cohomology ring.
    #[pyo3(signature = (building_set = None))]
    fn poincare<'py>(&self, py: Python<'py>, building_set: Option<&Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyDict>> {
        let flags = PoincareData::compute(&core::BuildingSet::maximal(self.lattice.clone())).map_err(err)?;
        let data = PoincareData::compute(&self.building_set_of(building_set)?).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("poincare", LaurentPoly(flags.p_total().clone()))?;
        d.set_item("euler_poincare", LaurentPoly(data.p_total().clone()))?;
        d.set_item("h", LaurentPoly(data.h_total().clone()))?;
        d.set_item("hilbert_series", LaurentPoly(data.hilbert_series()))?;
        Ok(d)
    }

    /// Coefficients of `T^0 .. T^tmax` by direct summation over weight vectors.
    #[pyo3(signature = (tmax, kind = "full", force = false))]
    fn oracle(&self, tmax: usize, kind: &str, force: bool) -> PyResult<Vec<LaurentPoly>> {
        let kind = kind_of(kind)?;
        let coeffs = if force {
            oracle::truncated_zeta_sum_unchecked(&self.inner, kind, tmax)
        } else {
            oracle::truncated_zeta_sum(&self.inner, kind, tmax)
        };
        Ok(coeffs.map_err(err)?.into_iter().map(LaurentPoly).collect())
    }

    /// Runs an identity suite and returns the report as a JSON string.
    #[pyo3(signature = (suite = "all", tmax = 8, force = false))]
    fn verify(&self, suite: &str, tmax: usize, force: bool) -> PyResult<String> {
        let suite: Suite = suite.parse().map_err(err)?;
        let opts = VerifyOptions {
            tmax,
            force,
            ..VerifyOptions::default()
        };
        let report = verify::run(&self.inner, suite, &opts).map_err(err)?;
        Ok(to_json_string(report.to_json()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Matroid(n={}, rank={}, bases={})",
            self.inner.n(),
            self.inner.rank(),
            self.inner.bases().len()
        )
    }
}

impl Matroid {
    fn from_spec(spec: MatroidSpec) -> PyResult<Self> {
        spec.to_matroid().map(Self::wrap).map_err(err)
    }
}

#[pymodule]
fn mzeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<LaurentPoly>()?;
    m.add_class::<RationalQT>()?;
    m.add_class::<RationalS>()?;
    m.add_class::<Matroid>()?;
    Ok(())
}
