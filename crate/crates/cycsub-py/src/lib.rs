//! Python bindings exposing the main cycsub types and operations: group
//! construction from spec strings or Cayley tables, both edge counts, DOT
//! output, order-divisibility bijections, and the order scans.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cycsub::bijection::{self, BijectionOutcome, BijectionVerdict, OrderBijection};
use cycsub::group::FiniteGroup;
use cycsub::harness;
use cycsub::lattice;
use cycsub::numtheory::{self, EqualityKind, RatioRelation};
use cycsub::spec::GroupSpec;

fn to_py_err(e: cycsub::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite group, wrapped for Python.
#[pyclass]
struct Group {
    inner: FiniteGroup,
    label: String,
}

#[pymethods]
impl Group {
    /// Build from a spec string: Z12, D6, Dic3, Q8, S4, A5, Ab[6,2],
    /// SD[7,3,2], products like Z3xZ3, or @file.cayley / @file.perms.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let spec: GroupSpec = spec.parse().map_err(to_py_err)?;
        let inner = spec.construct().map_err(to_py_err)?;
        Ok(Group {
            label: spec.label(),
            inner,
        })
    }

    /// Build from an explicit multiplication table (full validation).
    #[staticmethod]
    fn from_cayley_table(table: Vec<Vec<usize>>) -> PyResult<Self> {
        let inner = FiniteGroup::from_cayley_table(&table).map_err(to_py_err)?;
        Ok(Group {
            label: format!("table<{}>", inner.order()),
            inner,
        })
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn identity(&self) -> usize {
        self.inner.identity()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        let n = self.inner.order();
        if a >= n || b >= n {
            return Err(PyIndexError::new_err(format!("indices must be below {n}")));
        }
        Ok(self.inner.mul(a, b))
    }

    fn element_order(&self, a: usize) -> PyResult<u64> {
        if a >= self.inner.order() {
            return Err(PyIndexError::new_err(format!(
                "index {a} out of range for order {}",
                self.inner.order()
            )));
        }
        Ok(self.inner.element_order(a))
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn is_nilpotent(&self) -> bool {
        self.inner.is_nilpotent()
    }

    /// Dict mapping element order -> count.
    fn order_histogram(&self) -> BTreeMap<u64, u64> {
        bijection::order_histogram(&self.inner).counts().clone()
    }

    fn cyclic_subgroup_count(&self) -> PyResult<u64> {
        Ok(lattice::cyclic_poset(&self.inner)
            .map_err(to_py_err)?
            .vertex_count())
    }

    /// Edge count from the Hasse diagram cover relations.
    fn edge_count_hasse(&self) -> PyResult<u64> {
        lattice::edge_count_hasse(&self.inner).map_err(to_py_err)
    }

    /// Edge count from the exact rational sum over element orders.
    fn edge_count_formula(&self) -> PyResult<u64> {
        lattice::edge_count_formula(&self.inner).map_err(to_py_err)
    }

    /// The cyclic subgroup graph in DOT form.
    fn dot(&self) -> PyResult<String> {
        let poset = lattice::cyclic_poset(&self.inner).map_err(to_py_err)?;
        Ok(harness::dot_graph(&self.label, &poset))
    }

    /// Solve the order-divisibility bijection onto Z_n.
    ///
    /// Returns {"feasible": True, "class_flow": [(d, d', amount), ...],
    /// "mapping": [...], "verified": bool} or {"feasible": False,
    /// "certificate": {"orders": [...], "demand": d, "capacity": c}}.
    fn bijection<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        match bijection::find_order_bijection(&self.inner) {
            BijectionOutcome::Feasible {
                class_flow,
                bijection: b,
            } => {
                let verdict = bijection::verify_order_bijection(&self.inner, &b);
                out.set_item("feasible", true)?;
                out.set_item(
                    "class_flow",
                    class_flow
                        .iter()
                        .map(|cf| (cf.from, cf.to, cf.amount))
                        .collect::<Vec<_>>(),
                )?;
                out.set_item("mapping", b.mapping)?;
                out.set_item("verified", matches!(verdict, BijectionVerdict::Valid))?;
            }
            BijectionOutcome::Infeasible(cert) => {
                let c = PyDict::new(py);
                c.set_item("orders", cert.orders)?;
                c.set_item("demand", cert.demand)?;
                c.set_item("capacity", cert.capacity)?;
                out.set_item("feasible", false)?;
                out.set_item("certificate", c)?;
            }
        }
        Ok(out)
    }

    /// Check a mapping against the divisibility contract; returns a string
    /// verdict ("valid", or a description of the first violation).
    fn verify_bijection(&self, mapping: Vec<usize>) -> String {
        match bijection::verify_order_bijection(&self.inner, &OrderBijection { mapping }) {
            BijectionVerdict::Valid => "valid".to_string(),
            BijectionVerdict::NotBijective { index } => {
                format!("not a permutation (first offense at index {index})")
            }
            BijectionVerdict::DivisibilityViolation {
                element,
                element_order,
                residue,
                residue_order,
            } => format!(
                "element {element} of order {element_order} mapped to residue {residue} of order {residue_order}"
            ),
        }
    }

    fn __repr__(&self) -> String {
        format!("Group({}, order={})", self.label, self.inner.order())
    }
}

/// Edge count of the cyclic subgroup graph of Z_n, by the closed form.
#[pyfunction]
fn cyclic_edge_count(n: u64) -> u64 {
    numtheory::cyclic_edge_count(n)
}

/// (ω(d), φ(d)).
#[pyfunction]
fn omega_phi(d: u64) -> (u32, u64) {
    numtheory::omega_phi(d)
}

/// Compare ω(d)/φ(d) against ω(d')/φ(d') for odd d | d'; returns
/// (relation, equality) strings.
#[pyfunction]
fn ratio_compare(d: u64, d_prime: u64) -> (String, String) {
    let v = numtheory::ratio_compare(d, d_prime);
    let relation = match v.relation {
        RatioRelation::StrictGreater => "StrictGreater",
        RatioRelation::Equal => "Equal",
        RatioRelation::OutOfDomain => "OutOfDomain",
    };
    let equality = match v.equality {
        EqualityKind::NotEqual => "NotEqual",
        EqualityKind::SameValue => "SameValue",
        EqualityKind::PrimePowerTimes3 => "PrimePowerTimes3",
    };
    (relation.to_string(), equality.to_string())
}

/// JSON report for one group spec.
#[pyfunction]
fn report_json(spec: &str) -> PyResult<String> {
    let spec: GroupSpec = spec.parse().map_err(to_py_err)?;
    let report =
        harness::group_report(&spec, &cycsub::group::BuildOptions::default()).map_err(to_py_err)?;
    serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// JSON minimality report for one order (catalog comparison against Z_n).
#[pyfunction]
fn verify_order_json(order: usize) -> PyResult<String> {
    let report = harness::verify_order(order).map_err(to_py_err)?;
    serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// JSON scan findings for orders 1..=max_n; parity is "all", "odd" or
/// "even".
#[pyfunction]
#[pyo3(signature = (max_n, parity = "all"))]
fn scan_json(max_n: usize, parity: &str) -> PyResult<String> {
    let parity = match parity {
        "all" => harness::Parity::All,
        "odd" => harness::Parity::OddOnly,
        "even" => harness::Parity::EvenOnly,
        other => {
            return Err(PyValueError::new_err(format!(
                "parity must be all/odd/even, got {other}"
            )))
        }
    };
    let findings = harness::scan(max_n, parity).map_err(to_py_err)?;
    serde_json::to_string_pretty(&findings).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn cycsub_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(cyclic_edge_count, m)?)?;
    m.add_function(wrap_pyfunction!(omega_phi, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_compare, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify_order_json, m)?)?;
    m.add_function(wrap_pyfunction!(scan_json, m)?)?;
    Ok(())
}
