//! Python bindings: finite-ring and integer-layer classification, ideal
//! enumeration, packing properties, and the verification suites.
//!
//! Certificates and reports cross the boundary as plain dicts so Python-side
//! checkers can re-derive every verdict from structured data.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn err(e: sprime::Error) -> PyErr {
    match e {
        sprime::Error::CapExceeded(_) | sprime::Error::Internal(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Element coordinates: a bare int for rank-one carriers, a sequence otherwise.
#[derive(FromPyObject)]
enum CoordsIn {
    #[pyo3(transparent)]
    Single(i64),
    #[pyo3(transparent)]
    Many(Vec<i64>),
}

impl CoordsIn {
    fn vec(self) -> Vec<i64> {
        match self {
            CoordsIn::Single(v) => vec![v],
            CoordsIn::Many(v) => v,
        }
    }
}

fn coords_of(e: &sprime::RingElement) -> Vec<u64> {
    e.coords().to_vec()
}

fn module_coords_of(e: &sprime::ModuleElement) -> Vec<u64> {
    e.coords().to_vec()
}

// ====== carriers ======

/// Finite abelian group `Z/d1 x ... x Z/dk` acted on by `Z` or `Z/n`.
#[pyclass(eq)]
#[derive(PartialEq)]
pub struct Module {
    inner: sprime::ModuleDescriptor,
}

#[pymethods]
impl Module {
    /// `base=None` means the action of the integers; `base=n` that of `Z/n`.
    #[new]
    #[pyo3(signature = (factors, base = None))]
    fn new(factors: Vec<u64>, base: Option<u64>) -> PyResult<Self> {
        let b = match base {
            Some(n) => sprime::BaseRing::Residue(n),
            None => sprime::BaseRing::Integers,
        };
        Ok(Module { inner: sprime::make_module(b, &factors).map_err(err)? })
    }

    #[getter]
    fn factors(&self) -> Vec<u64> {
        self.inner.factors().to_vec()
    }

    #[getter]
    fn cardinality(&self) -> u64 {
        self.inner.cardinality()
    }

    #[getter]
    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    fn __repr__(&self) -> String {
        match self.inner.base() {
            sprime::BaseRing::Integers => {
                format!("Module({})", sprime::print_module(&self.inner))
            }
            sprime::BaseRing::Residue(n) => {
                format!("Module({} over Z/{n})", sprime::print_module(&self.inner))
            }
        }
    }
}

#[pyclass(eq)]
#[derive(PartialEq)]
pub struct Ring {
    inner: sprime::RingDescriptor,
}

#[pymethods]
impl Ring {
    /// Parses the same expressions the CLI accepts, e.g. `"TE(Z/4, Z/2)"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Ring { inner: sprime::parse_ring(text).map_err(err)? })
    }

    #[staticmethod]
    fn residue(n: u64) -> PyResult<Self> {
        Ok(Ring { inner: sprime::make_residue_ring(n).map_err(err)? })
    }

    #[staticmethod]
    fn trivial_extension(module: PyRef<'_, Module>) -> PyResult<Self> {
        let a = module.inner.base().to_ring();
        Ok(Ring { inner: sprime::make_trivial_extension(&a, &module.inner).map_err(err)? })
    }

    #[getter]
    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    #[getter]
    fn cardinality(&self) -> Option<u64> {
        match self.inner.cardinality() {
            sprime::Cardinality::Finite(n) => Some(n),
            sprime::Cardinality::Infinite => None,
        }
    }

    /// The ideal generated by the given elements.
    fn ideal(&self, gens: Vec<CoordsIn>) -> PyResult<Ideal> {
        let elems = self.elements_from(gens)?;
        Ok(Ideal { inner: sprime::ideal_generated(&self.inner, &elems).map_err(err)? })
    }

    /// The multiplicative closure of the given elements together with 1.
    fn mult_set(&self, gens: Vec<CoordsIn>) -> PyResult<MultSet> {
        let elems = self.elements_from(gens)?;
        Ok(MultSet { inner: sprime::mult_set_generated(&self.inner, &elems).map_err(err)? })
    }

    /// Every ideal, sorted by cardinality then member list.
    fn ideals(&self) -> PyResult<Vec<Ideal>> {
        Ok(sprime::enumerate_ideals(&self.inner)
            .map_err(err)?
            .into_iter()
            .map(|inner| Ideal { inner })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", sprime::print_ring(&self.inner))
    }

    fn __str__(&self) -> String {
        sprime::print_ring(&self.inner)
    }
}

impl Ring {
    fn elements_from(&self, gens: Vec<CoordsIn>) -> PyResult<Vec<sprime::RingElement>> {
        gens.into_iter().map(|c| self.inner.element(&c.vec()).map_err(err)).collect()
    }
}

#[pyclass(eq)]
#[derive(PartialEq)]
pub struct Ideal {
    inner: sprime::Ideal,
}

#[pymethods]
impl Ideal {
    #[getter]
    fn generators(&self) -> Vec<Vec<u64>> {
        self.inner.generators().iter().map(coords_of).collect()
    }

    #[getter]
    fn cardinality(&self) -> usize {
        self.inner.cardinality()
    }

    #[getter]
    fn ring(&self) -> Ring {
        Ring { inner: self.inner.ring().clone() }
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        self.inner.elements().iter().map(coords_of).collect()
    }

    fn contains(&self, x: CoordsIn) -> PyResult<bool> {
        let e = self.inner.ring().element(&x.vec()).map_err(err)?;
        Ok(self.inner.contains(&e))
    }

    fn is_proper(&self) -> bool {
        self.inner.is_proper()
    }

    fn is_prime(&self) -> PyResult<bool> {
        sprime::is_prime(&self.inner).map_err(err)
    }

    fn is_maximal(&self) -> PyResult<bool> {
        sprime::is_maximal(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        let gens: Vec<String> =
            self.inner.generators().iter().map(|g| sprime::print_coords(g.coords())).collect();
        format!("Ideal(<{}> of {})", gens.join("; "), sprime::print_ring(self.inner.ring()))
    }
}

#[pyclass(eq)]
#[derive(PartialEq)]
pub struct MultSet {
    inner: sprime::MultiplicativeSet,
}

#[pymethods]
impl MultSet {
    #[getter]
    fn generators(&self) -> Vec<Vec<u64>> {
        self.inner.generators().iter().map(coords_of).collect()
    }

    #[getter]
    fn cardinality(&self) -> usize {
        self.inner.cardinality()
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        self.inner.elements().iter().map(coords_of).collect()
    }

    fn contains(&self, x: CoordsIn) -> PyResult<bool> {
        let e = self.inner.ring().element(&x.vec()).map_err(err)?;
        Ok(self.inner.contains(&e))
    }

    /// `S* = {x : xy in S for some y}`.
    fn saturation(&self) -> PyResult<MultSet> {
        Ok(MultSet { inner: sprime::saturation(&self.inner).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        let gens: Vec<String> =
            self.inner.generators().iter().map(|g| sprime::print_coords(g.coords())).collect();
        format!("MultSet(<{}> of {})", gens.join("; "), sprime::print_ring(self.inner.ring()))
    }
}

// ====== certificates as dicts ======

fn finite_cert_dict<'py>(
    py: Python<'py>,
    c: &sprime::SPrimalityCertificate,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("verdict", c.verdict)?;
    d.set_item("witness", c.witness.as_ref().map(coords_of))?;
    d.set_item(
        "residual",
        c.residual.as_ref().map(|r| r.generators().iter().map(coords_of).collect::<Vec<_>>()),
    )?;
    d.set_item("torsion_witness", c.torsion_witness.as_ref().map(coords_of))?;
    d.set_item("reason", c.reason.tag())?;
    Ok(d)
}

fn z_cert_dict<'py>(py: Python<'py>, c: &sprime::ZCertificate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("verdict", c.verdict)?;
    d.set_item("witness", c.witness.as_ref().map(|w| w.to_string()))?;
    d.set_item("witness_factors", c.witness.as_ref().map(|w| w.factors().to_vec()))?;
    d.set_item("residual", c.residual.as_ref().map(|r| r.modulus()))?;
    d.set_item("torsion_witness", c.torsion_witness.as_ref().map(|w| w.to_string()))?;
    d.set_item("reason", c.reason.tag())?;
    Ok(d)
}

// ====== finite-ring classification ======

/// S-prime test; `definitional=True` runs the quantifier-level oracle
/// instead of the residual-based decision procedure.
#[pyfunction]
#[pyo3(signature = (ideal, s, *, definitional = false))]
fn is_s_prime<'py>(
    py: Python<'py>,
    ideal: PyRef<'_, Ideal>,
    s: PyRef<'_, MultSet>,
    definitional: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let c = if definitional {
        sprime::is_s_prime_definitional(&ideal.inner, &s.inner).map_err(err)?
    } else {
        sprime::is_s_prime_residual(&ideal.inner, &s.inner).map_err(err)?
    };
    finite_cert_dict(py, &c)
}

/// S-maximal test, with the same `definitional` switch.
#[pyfunction]
#[pyo3(signature = (ideal, s, *, definitional = false))]
fn is_s_maximal<'py>(
    py: Python<'py>,
    ideal: PyRef<'_, Ideal>,
    s: PyRef<'_, MultSet>,
    definitional: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let c = if definitional {
        sprime::is_s_maximal_definitional(&ideal.inner, &s.inner).map_err(err)?
    } else {
        sprime::is_s_maximal_residual(&ideal.inner, &s.inner).map_err(err)?
    };
    finite_cert_dict(py, &c)
}

/// Degree-0 and degree-1 components of an ideal of a trivial extension.
#[pyfunction]
fn components<'py>(py: Python<'py>, ideal: PyRef<'_, Ideal>) -> PyResult<Bound<'py, PyDict>> {
    let parts = sprime::components(&ideal.inner).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("j0", Ideal { inner: parts.j0 })?;
    d.set_item(
        "j1_generators",
        parts.j1.generators().iter().map(module_coords_of).collect::<Vec<_>>(),
    )?;
    d.set_item("j1_cardinality", parts.j1.cardinality())?;
    d.set_item("homogeneous", parts.is_homogeneous)?;
    Ok(d)
}

/// All S-prime ideals, in canonical order.
#[pyfunction]
fn spec_s(ring: PyRef<'_, Ring>, s: PyRef<'_, MultSet>) -> PyResult<Vec<Ideal>> {
    Ok(sprime::spec_s(&ring.inner, &s.inner)
        .map_err(err)?
        .into_iter()
        .map(|inner| Ideal { inner })
        .collect())
}

/// All S-maximal ideals, in canonical order.
#[pyfunction]
fn max_s(ring: PyRef<'_, Ring>, s: PyRef<'_, MultSet>) -> PyResult<Vec<Ideal>> {
    Ok(sprime::max_s(&ring.inner, &s.inner)
        .map_err(err)?
        .into_iter()
        .map(|inner| Ideal { inner })
        .collect())
}

/// A prime containing the ideal and disjoint from S, when one exists.
#[pyfunction]
fn find_disjoint_prime(ideal: PyRef<'_, Ideal>, s: PyRef<'_, MultSet>) -> PyResult<Ideal> {
    Ok(Ideal { inner: sprime::find_disjoint_prime(&ideal.inner, &s.inner).map_err(err)? })
}

// ====== packing properties ======

fn packing_dict<'py>(py: Python<'py>, r: &sprime::PackingReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("verdict", r.verdict)?;
    match &r.counterexample {
        None => d.set_item("counterexample", py.None())?,
        Some(cx) => {
            let c = PyDict::new(py);
            c.set_item("q", Ideal { inner: cx.q.clone() })?;
            c.set_item("s", cx.s.as_ref().map(coords_of))?;
            c.set_item(
                "family",
                cx.family.iter().map(|i| Ideal { inner: i.clone() }).collect::<Vec<_>>(),
            )?;
            d.set_item("counterexample", c)?;
        }
    }
    Ok(d)
}

/// Compact S-packing via the worst-family reduction.
#[pyfunction]
fn is_compactly_s_packed<'py>(
    py: Python<'py>,
    ring: PyRef<'_, Ring>,
    s: PyRef<'_, MultSet>,
) -> PyResult<Bound<'py, PyDict>> {
    packing_dict(py, &sprime::is_compactly_s_packed(&ring.inner, &s.inner).map_err(err)?)
}

/// Coprime S-packing via the comaximal-family reduction.
#[pyfunction]
fn is_coprimely_s_packed<'py>(
    py: Python<'py>,
    ring: PyRef<'_, Ring>,
    s: PyRef<'_, MultSet>,
) -> PyResult<Bound<'py, PyDict>> {
    packing_dict(py, &sprime::is_coprimely_s_packed(&ring.inner, &s.inner).map_err(err)?)
}

/// Whether every S-prime ideal lies under exactly one S-maximal ideal.
#[pyfunction]
fn is_s_pm<'py>(
    py: Python<'py>,
    ring: PyRef<'_, Ring>,
    s: PyRef<'_, MultSet>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = sprime::is_s_pm(&ring.inner, &s.inner).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("verdict", r.verdict)?;
    match r.violation {
        None => d.set_item("violation", py.None())?,
        Some(v) => {
            let vd = PyDict::new(py);
            vd.set_item("p", Ideal { inner: v.p })?;
            vd.set_item(
                "containing",
                v.containing.into_iter().map(|inner| Ideal { inner }).collect::<Vec<_>>(),
            )?;
            vd.set_item(
                "kind",
                match v.kind {
                    sprime::PmViolationKind::NoContainingMaximal => "no-containing-maximal",
                    sprime::PmViolationKind::MultipleContainingMaximals => {
                        "multiple-containing-maximals"
                    }
                },
            )?;
            d.set_item("violation", vd)?;
        }
    }
    Ok(d)
}

// ====== integer layer ======

/// S-prime test for `dZ` in `Z` with S generated by `s_gens`.
#[pyfunction]
fn z_is_s_prime<'py>(py: Python<'py>, d: i64, s_gens: Vec<i64>) -> PyResult<Bound<'py, PyDict>> {
    let s = sprime::ZMultSet::new(&s_gens).map_err(err)?;
    z_cert_dict(py, &sprime::z_is_s_prime(&sprime::ZIdeal::new(d), &s).map_err(err)?)
}

/// S-maximal test for `dZ` in `Z`.
#[pyfunction]
fn z_is_s_maximal<'py>(py: Python<'py>, d: i64, s_gens: Vec<i64>) -> PyResult<Bound<'py, PyDict>> {
    let s = sprime::ZMultSet::new(&s_gens).map_err(err)?;
    z_cert_dict(py, &sprime::z_is_s_maximal(&sprime::ZIdeal::new(d), &s).map_err(err)?)
}

/// Whether `sM = M` for some product `s` of the generators.
#[pyfunction]
fn z_is_s_divisible(module: PyRef<'_, Module>, s_gens: Vec<i64>) -> PyResult<bool> {
    let s = sprime::ZMultSet::new(&s_gens).map_err(err)?;
    sprime::z_is_s_divisible(&module.inner, &s).map_err(err)
}

/// Finitely generated ideal of `Z ⋉ M` with exact slice arithmetic.
#[pyclass(name = "ZteIdeal", eq)]
#[derive(PartialEq)]
pub struct PyZteIdeal {
    inner: sprime::ZTEIdeal,
}

fn zte_pairs(
    m: &sprime::ModuleDescriptor,
    pairs: Vec<(i64, CoordsIn)>,
) -> PyResult<Vec<(i64, sprime::ModuleElement)>> {
    pairs.into_iter().map(|(a, x)| Ok((a, m.element(&x.vec()).map_err(err)?))).collect()
}

#[pymethods]
impl PyZteIdeal {
    /// `module` must carry the integer action; generators are `(a, x)` pairs.
    #[new]
    fn new(module: PyRef<'_, Module>, gens: Vec<(i64, CoordsIn)>) -> PyResult<Self> {
        let pairs = zte_pairs(&module.inner, gens)?;
        Ok(PyZteIdeal { inner: sprime::zte_ideal(&module.inner, &pairs).map_err(err)? })
    }

    #[getter]
    fn module(&self) -> Module {
        Module { inner: self.inner.module().clone() }
    }

    #[getter]
    fn generators(&self) -> Vec<(u64, Vec<u64>)> {
        self.inner.generators().iter().map(|(a, x)| (*a, module_coords_of(x))).collect()
    }

    /// Modulus of the degree-0 slice `{a : (a, 0) in J} = j0·Z`.
    #[getter]
    fn j0(&self) -> u64 {
        self.inner.j0().modulus()
    }

    /// Generators of the degree-1 slice `{x : (0, x) in J}`.
    #[getter]
    fn j1_generators(&self) -> Vec<Vec<u64>> {
        self.inner.j1().generators().iter().map(module_coords_of).collect()
    }

    #[getter]
    fn j1_cardinality(&self) -> usize {
        self.inner.j1().cardinality()
    }

    /// Modulus of the setwise projection to the base ring.
    #[getter]
    fn projection(&self) -> u64 {
        self.inner.projection_to_base().modulus()
    }

    fn is_homogeneous(&self) -> bool {
        sprime::zte_is_homogeneous(&self.inner)
    }

    fn contains(&self, a: i64, x: CoordsIn) -> PyResult<bool> {
        let e = self.inner.module().element(&x.vec()).map_err(err)?;
        Ok(sprime::zte_membership(a, &e, &self.inner))
    }

    fn is_s_prime<'py>(
        &self,
        py: Python<'py>,
        s: Vec<(i64, CoordsIn)>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let pairs = zte_pairs(self.inner.module(), s)?;
        z_cert_dict(py, &sprime::zte_is_s_prime(&self.inner, &pairs).map_err(err)?)
    }

    fn is_s_maximal<'py>(
        &self,
        py: Python<'py>,
        s: Vec<(i64, CoordsIn)>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let pairs = zte_pairs(self.inner.module(), s)?;
        z_cert_dict(py, &sprime::zte_is_s_maximal(&self.inner, &pairs).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        let gens: Vec<String> = self
            .inner
            .generators()
            .iter()
            .map(|(a, x)| {
                let mut parts = vec![a.to_string()];
                parts.extend(x.coords().iter().map(|c| c.to_string()));
                sprime::print_coords(&parts)
            })
            .collect();
        format!(
            "ZteIdeal(<{}> of TE(Z, {}))",
            gens.join("; "),
            sprime::print_module(self.inner.module())
        )
    }
}

// ====== verification ======

fn value_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        serde_json::Value::Null => py.None().into_bound(py),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        serde_json::Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.into_any(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(value_to_py(py, item)?)?;
            }
            list.into_any()
        }
        serde_json::Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, val) in map {
                d.set_item(k, value_to_py(py, val)?)?;
            }
            d.into_any()
        }
    })
}

fn report_to_py<'py>(
    py: Python<'py>,
    report: &sprime::VerificationReport,
) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(report)
        .map_err(|e| PyRuntimeError::new_err(format!("report serialization: {e}")))?;
    value_to_py(py, &v)
}

fn catalog_from(json: Option<&str>) -> PyResult<sprime::CatalogSpec> {
    match json {
        None => Ok(sprime::CatalogSpec::default()),
        Some(text) => serde_json::from_str(text)
            .map_err(|e| PyValueError::new_err(format!("invalid catalog: {e}"))),
    }
}

/// Runs one verification suite; `catalog` is an optional JSON object with
/// the same fields the CLI accepts.
#[pyfunction]
#[pyo3(signature = (name, catalog = None))]
fn run_suite<'py>(
    py: Python<'py>,
    name: &str,
    catalog: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let report = sprime::run_suite(name, &catalog_from(catalog)?).map_err(err)?;
    report_to_py(py, &report)
}

/// Reproduces the four worked examples exactly.
#[pyfunction]
fn reproduce_examples(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    let report = sprime::reproduce_examples().map_err(err)?;
    report_to_py(py, &report)
}

/// Searches the catalog for a named phenomenon and reports all hits.
#[pyfunction]
#[pyo3(signature = (target, catalog = None))]
fn search_counterexamples<'py>(
    py: Python<'py>,
    target: &str,
    catalog: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let report = sprime::search_counterexamples(target, &catalog_from(catalog)?).map_err(err)?;
    report_to_py(py, &report)
}

#[pymodule]
fn sprime_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Module>()?;
    m.add_class::<Ring>()?;
    m.add_class::<Ideal>()?;
    m.add_class::<MultSet>()?;
    m.add_class::<PyZteIdeal>()?;
    m.add_function(wrap_pyfunction!(is_s_prime, m)?)?;
    m.add_function(wrap_pyfunction!(is_s_maximal, m)?)?;
    m.add_function(wrap_pyfunction!(components, m)?)?;
    m.add_function(wrap_pyfunction!(spec_s, m)?)?;
    m.add_function(wrap_pyfunction!(max_s, m)?)?;
    m.add_function(wrap_pyfunction!(find_disjoint_prime, m)?)?;
    m.add_function(wrap_pyfunction!(is_compactly_s_packed, m)?)?;
    m.add_function(wrap_pyfunction!(is_coprimely_s_packed, m)?)?;
    m.add_function(wrap_pyfunction!(is_s_pm, m)?)?;
    m.add_function(wrap_pyfunction!(z_is_s_prime, m)?)?;
    m.add_function(wrap_pyfunction!(z_is_s_maximal, m)?)?;
    m.add_function(wrap_pyfunction!(z_is_s_divisible, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_examples, m)?)?;
    m.add_function(wrap_pyfunction!(search_counterexamples, m)?)?;
    m.add("SUITES", sprime::SUITES.to_vec())?;
    m.add("SEARCH_TARGETS", sprime::SEARCH_TARGETS.to_vec())?;
    Ok(())
}
