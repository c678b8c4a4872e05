//! Python bindings: structure files, classification, nuclei, containment
//! checks, constructors, search and the embedded fixtures.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use polynuclei_core::axioms::classify;
use polynuclei_core::construct::{self, groups, GroupTable, SubgroupSpec};
use polynuclei_core::fixtures::{self, NucleiStatus, OracleCaps};
use polynuclei_core::io::{parse_structure_file, serialize_structure};
use polynuclei_core::nuclei::{
    nucleus, nucleus_bruteforce, nucleus_report, verify_containment_theorems, NucleusOrder,
    NucleusSide, Strategy, DEFAULT_SUBSET_CAP,
};
use polynuclei_core::report::ProfileView;
use polynuclei_core::search::{self, SearchSpec};
use polynuclei_core::{ElementSet, Error, HyperTable, StructureBundle};

fn py_err(e: Error) -> PyErr {
    if e.is_internal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn labels(t: &HyperTable, s: ElementSet) -> Vec<String> {
    t.labels(s).into_iter().map(String::from).collect()
}

fn to_set(t: &HyperTable, items: &[String]) -> PyResult<ElementSet> {
    items
        .iter()
        .map(|l| {
            t.index_of(l)
                .ok_or_else(|| PyValueError::new_err(format!("unknown element {l:?}")))
        })
        .collect()
}

fn index(t: &HyperTable, label: &str) -> PyResult<usize> {
    t.index_of(label)
        .ok_or_else(|| PyValueError::new_err(format!("unknown element {label:?}")))
}

fn strategy(brute: bool, cap: usize) -> Strategy {
    if brute {
        Strategy::Brute { cap }
    } else {
        Strategy::Fast
    }
}

/// A hyperoperation table with optional divisions, identity and inverse.
#[pyclass(name = "Bundle", module = "polynuclei")]
struct PyBundle {
    inner: StructureBundle,
}

#[pymethods]
impl PyBundle {
    /// Parses the JSON structure file format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_structure_file(text.as_bytes())
            .map(|inner| PyBundle { inner })
            .map_err(py_err)
    }

    /// Builds a table from element names and a matrix of label lists.
    #[staticmethod]
    #[pyo3(signature = (elements, op, name = "table".to_string()))]
    fn from_table(
        elements: Vec<String>,
        op: Vec<Vec<Vec<String>>>,
        name: String,
    ) -> PyResult<Self> {
        let (table, _) = polynuclei_core::validate_table(&elements, &op).map_err(py_err)?;
        Ok(PyBundle {
            inner: StructureBundle::new(name, table),
        })
    }

    /// Canonical JSON serialization.
    fn to_json(&self) -> String {
        serialize_structure(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.table.order()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.table.names().to_vec()
    }

    #[getter]
    fn identity(&self) -> Option<String> {
        self.inner
            .identity
            .map(|e| self.inner.table.name(e).to_string())
    }

    /// `a·b` as a list of labels.
    fn product(&self, a: &str, b: &str) -> PyResult<Vec<String>> {
        let t = &self.inner.table;
        Ok(labels(t, t.cell(index(t, a)?, index(t, b)?)))
    }

    /// `A·B` under the union extension.
    fn set_product(&self, a: Vec<String>, b: Vec<String>) -> PyResult<Vec<String>> {
        let t = &self.inner.table;
        Ok(labels(t, t.set_product(to_set(t, &a)?, to_set(t, &b)?)))
    }

    /// Flag name to `True`, `False` or `None` (undetermined).
    fn classify(&self) -> PyResult<BTreeMap<&'static str, Option<bool>>> {
        let p = classify(&self.inner).map_err(py_err)?;
        Ok(p.flags().map(|(f, v)| (f.as_str(), v.as_bool())).collect())
    }

    /// The full classification report, with witnesses, as JSON.
    fn classify_json(&self) -> PyResult<String> {
        let p = classify(&self.inner).map_err(py_err)?;
        Ok(serde_json::to_string(&ProfileView::new(&self.inner, &p)).expect("report serializes"))
    }

    /// One nucleus; `side` is `left`, `middle` or `right`.
    #[pyo3(signature = (order, side, brute = false, cap = DEFAULT_SUBSET_CAP))]
    fn nucleus(&self, order: u8, side: &str, brute: bool, cap: usize) -> PyResult<Vec<String>> {
        let t = &self.inner.table;
        let order = NucleusOrder::new(order).map_err(py_err)?;
        let side: NucleusSide = side.parse().map_err(py_err)?;
        let set = if brute {
            nucleus_bruteforce(t, order, side, cap).map_err(py_err)?
        } else {
            nucleus(t, order, side)
        };
        Ok(labels(t, set))
    }

    /// `{order: {"left": [...], "middle": [...], "right": [...], "all": [...]}}`.
    #[pyo3(signature = (orders = vec![1, 2, 3, 4], brute = false, cap = DEFAULT_SUBSET_CAP))]
    fn nuclei(
        &self,
        orders: Vec<u8>,
        brute: bool,
        cap: usize,
    ) -> PyResult<BTreeMap<u8, BTreeMap<&'static str, Vec<String>>>> {
        let t = &self.inner.table;
        let orders = orders
            .into_iter()
            .map(NucleusOrder::new)
            .collect::<Result<Vec<_>, _>>()
            .map_err(py_err)?;
        let r = nucleus_report(t, &orders, strategy(brute, cap)).map_err(py_err)?;
        let mut out = BTreeMap::new();
        for o in orders {
            let mut sides = BTreeMap::new();
            for s in NucleusSide::ALL {
                sides.insert(s.as_str(), labels(t, r.get(o, s).unwrap_or_default()));
            }
            sides.insert("all", labels(t, r.intersection(o).unwrap_or_default()));
            out.insert(o.get(), sides);
        }
        Ok(out)
    }

    /// Containment label to whether it holds.
    #[pyo3(signature = (brute = false, cap = DEFAULT_SUBSET_CAP))]
    fn verify(&self, brute: bool, cap: usize) -> PyResult<BTreeMap<String, bool>> {
        let r =
            verify_containment_theorems(&self.inner.table, strategy(brute, cap)).map_err(py_err)?;
        Ok(r.clauses.iter().map(|c| (c.label(), c.holds)).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Bundle({:?}, order={})",
            self.inner.name,
            self.inner.table.order()
        )
    }

    fn __eq__(&self, other: &PyBundle) -> bool {
        self.inner == other.inner
    }
}

/// A finite group, validated on construction.
#[pyclass(name = "Group", module = "polynuclei")]
struct PyGroup {
    inner: GroupTable,
}

impl PyGroup {
    fn subgroup(&self, members: &[String]) -> PyResult<SubgroupSpec> {
        SubgroupSpec::from_labels(&self.inner, members).map_err(py_err)
    }
}

#[pymethods]
impl PyGroup {
    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        if n == 0 || n > 64 {
            return Err(PyValueError::new_err("order must be in 1..=64"));
        }
        Ok(PyGroup {
            inner: groups::cyclic(n),
        })
    }

    #[staticmethod]
    fn symmetric(n: usize) -> PyResult<Self> {
        if !(1..=4).contains(&n) {
            return Err(PyValueError::new_err("degree must be in 1..=4"));
        }
        Ok(PyGroup {
            inner: groups::symmetric(n),
        })
    }

    #[staticmethod]
    fn dihedral(n: usize) -> PyResult<Self> {
        if !(3..=32).contains(&n) {
            return Err(PyValueError::new_err("polygon size must be in 3..=32"));
        }
        Ok(PyGroup {
            inner: groups::dihedral(n),
        })
    }

    #[staticmethod]
    fn quaternion() -> Self {
        PyGroup {
            inner: groups::quaternion(),
        }
    }

    /// Reads a group file (all-singleton table with identity and inverse).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let b = parse_structure_file(text.as_bytes()).map_err(py_err)?;
        GroupTable::from_bundle(&b)
            .map(|inner| PyGroup { inner })
            .map_err(py_err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    /// Every subgroup as a list of member labels.
    fn subgroups(&self) -> Vec<Vec<String>> {
        let names = self.inner.names();
        construct::subgroups(&self.inner)
            .into_iter()
            .map(|h| h.members.iter().map(|i| names[i].clone()).collect())
            .collect()
    }

    /// The group as a singleton hypertable with identity and inverse.
    #[pyo3(signature = (name = "G".to_string()))]
    fn to_bundle(&self, name: String) -> PyBundle {
        PyBundle {
            inner: self.inner.to_bundle(name),
        }
    }

    /// Left coset hypergroup `G/H`.
    fn quotient(&self, subgroup: Vec<String>) -> PyResult<PyBundle> {
        let h = self.subgroup(&subgroup)?;
        let t = construct::quotient_hypergroup(&self.inner, &h).map_err(py_err)?;
        Ok(PyBundle {
            inner: StructureBundle::new("G/H", t),
        })
    }

    /// Double coset polygroup `G//H`.
    fn double_cosets(&self, subgroup: Vec<String>) -> PyResult<PyBundle> {
        let h = self.subgroup(&subgroup)?;
        construct::double_coset_algebra(&self.inner, &h)
            .map(|inner| PyBundle { inner })
            .map_err(py_err)
    }
}

#[pyfunction]
fn parse(text: &str) -> PyResult<PyBundle> {
    PyBundle::from_json(text)
}

#[pyfunction]
fn fixture_ids() -> Vec<&'static str> {
    fixtures::FIXTURES.iter().map(|f| f.id).collect()
}

#[pyfunction]
fn fixture(id: &str) -> PyResult<PyBundle> {
    fixtures::find(id)
        .map(|f| PyBundle { inner: f.bundle() })
        .ok_or_else(|| PyValueError::new_err(format!("unknown fixture {id:?}")))
}

/// `[(id, status)]` where status is `ok`, `known-erratum` or `fail`.
#[pyfunction]
fn check_fixtures() -> PyResult<Vec<(&'static str, &'static str)>> {
    let checks = fixtures::check_all(OracleCaps::default()).map_err(py_err)?;
    Ok(checks
        .iter()
        .map(|c| {
            let status = if !c.passed() {
                "fail"
            } else if matches!(c.nuclei, NucleiStatus::KnownErratum { .. }) {
                "known-erratum"
            } else {
                "ok"
            };
            (c.id, status)
        })
        .collect())
}

/// Backtracking search; `require` uses the CLI syntax, e.g. `"polyloop,!semihypergroup"`.
#[pyfunction]
#[pyo3(signature = (order, require = "", seed = 0, budget = 1_000_000, count = 1, cell_size_max = None))]
fn search_structures(
    order: usize,
    require: &str,
    seed: u64,
    budget: u64,
    count: usize,
    cell_size_max: Option<usize>,
) -> PyResult<Vec<PyBundle>> {
    let spec = SearchSpec {
        order,
        required: search::parse_requirements(require).map_err(py_err)?,
        cell_size_max: cell_size_max.unwrap_or(order),
        seed,
        node_budget: budget,
        count,
    };
    let outcome = search::search_structures(&spec).map_err(py_err)?;
    Ok(outcome
        .structures
        .into_iter()
        .map(|inner| PyBundle { inner })
        .collect())
}

#[pyfunction]
fn random_hypergroupoid(order: usize, density: f64, seed: u64) -> PyResult<PyBundle> {
    let t = search::random_hypergroupoid(order, density, seed).map_err(py_err)?;
    Ok(PyBundle {
        inner: StructureBundle::new(format!("random-{order}-{seed}"), t),
    })
}

#[pymodule]
fn polynuclei(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBundle>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_ids, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(check_fixtures, m)?)?;
    m.add_function(wrap_pyfunction!(search_structures, m)?)?;
    m.add_function(wrap_pyfunction!(random_hypergroupoid, m)?)?;
    Ok(())
}
