//! Python bindings. Matrices are passed as nested 2×2 lists of complex numbers.

use std::collections::BTreeMap;

use cartan_cs::basis::{self, BasisEvaluator};
use cartan_cs::generators::{self, SymbolName};
use cartan_cs::{fock, wigner, CartanPoint, ComplexMatrix2, FockVector, SpinLabel, C64};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

fn err(e: cartan_cs::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type Mat = [[C64; 2]; 2];

fn mat(m: Mat) -> ComplexMatrix2 {
    ComplexMatrix2::new(m[0][0], m[0][1], m[1][0], m[1][1])
}

fn point(m: Mat) -> PyResult<CartanPoint> {
    CartanPoint::new(mat(m)).map_err(err)
}

fn occupations<'py>(py: Python<'py>, v: &FockVector) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (o, c) in v.terms() {
        d.set_item(PyTuple::new(py, &o[..v.n_modes()])?, *c)?;
    }
    Ok(d)
}

/// Basis label (λ, 2j, m, 2q_a, 2q_b).
#[pyclass(name = "BasisIndex", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyBasisIndex(basis::BasisIndex);

#[pymethods]
impl PyBasisIndex {
    #[new]
    fn new(lambda: i64, two_j: u32, m: u32, two_qa: i32, two_qb: i32) -> PyResult<Self> {
        basis::BasisIndex::new(lambda, two_j, m, two_qa, two_qb).map(Self).map_err(err)
    }

    #[getter]
    fn lambda_(&self) -> i64 {
        self.0.lambda
    }
    #[getter]
    fn two_j(&self) -> u32 {
        self.0.two_j
    }
    #[getter]
    fn m(&self) -> u32 {
        self.0.m
    }
    #[getter]
    fn two_qa(&self) -> i32 {
        self.0.two_qa
    }
    #[getter]
    fn two_qb(&self) -> i32 {
        self.0.two_qb
    }
    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    fn __repr__(&self) -> String {
        let i = &self.0;
        format!("BasisIndex({}, {}, {}, {}, {})", i.lambda, i.two_j, i.m, i.two_qa, i.two_qb)
    }
}

#[pyfunction]
fn indices_up_to(lambda: i64, max_degree: u32) -> Vec<PyBasisIndex> {
    basis::indices_up_to(lambda, max_degree).into_iter().map(PyBasisIndex).collect()
}

/// Wigner matrix D^j(X) for doubled spin `two_j`, rows indexed by q = j, j−1, …
#[pyfunction]
fn wigner_d(two_j: u32, x: Mat) -> Vec<Vec<C64>> {
    let d = wigner::wigner_d(SpinLabel::new(two_j), &mat(x));
    let n = two_j as usize + 1;
    (0..n).map(|r| (0..n).map(|c| d.at(r, c)).collect()).collect()
}

/// φ_idx as a list of (exponents of z₀..z₃, coefficient).
#[pyfunction]
fn basis_poly(idx: &PyBasisIndex) -> PyResult<Vec<([u32; 4], C64)>> {
    let p = basis::basis_poly(&idx.0).map_err(err)?;
    Ok(p.terms().map(|(e, c)| (*e, *c)).collect())
}

#[pyfunction]
fn basis_eval(idx: &PyBasisIndex, z: Mat) -> PyResult<C64> {
    BasisEvaluator::new(&mat(z), idx.0.two_j).value(&idx.0).map_err(err)
}

#[pyfunction]
fn bergman_kernel(z: Mat, zp: Mat, lambda: i64) -> PyResult<C64> {
    basis::bergman_kernel(&point(z)?, &point(zp)?, lambda).map_err(err)
}

#[pyfunction]
fn kernel_partial_sum(z: Mat, zp: Mat, lambda: i64, n: u32) -> PyResult<C64> {
    basis::kernel_partial_sum(&point(z)?, &point(zp)?, lambda, n).map_err(err)
}

#[pyfunction]
fn cs_overlap(z: Mat, zp: Mat, lambda: i64) -> PyResult<C64> {
    basis::cs_overlap(&point(z)?, &point(zp)?, lambda).map_err(err)
}

/// ⟨φ_a|φ_b⟩ by Monte Carlo; returns (estimate, standard error).
#[pyfunction]
#[pyo3(signature = (a, b, n_samples = 100_000, seed = 7))]
fn mc_inner_product(a: &PyBasisIndex, b: &PyBasisIndex, n_samples: u64, seed: u64) -> PyResult<(C64, f64)> {
    let (ia, ib) = (a.0, b.0);
    let f = move |z: &ComplexMatrix2| basis::basis_eval(&ia, z).unwrap_or_default();
    let h = move |z: &ComplexMatrix2| basis::basis_eval(&ib, z).unwrap_or_default();
    let r = basis::mc_inner_product(f, h, ia.lambda, n_samples, seed).map_err(err)?;
    Ok((r.estimate, r.stderr))
}

/// Returns (eigenvalue, off_diagonal, closed_form).
#[pyfunction]
fn casimir2(idx: &PyBasisIndex) -> (f64, f64, f64) {
    let r = generators::casimir2(&idx.0);
    (r.eigenvalue, r.off_diagonal, r.closed_form)
}

#[pyfunction]
fn coeff_c(two_j: u32, m: i64, two_qa: i32, two_qb: i32, lambda: i64) -> PyResult<f64> {
    generators::coeff_c(two_j, m, two_qa, two_qb, lambda).map_err(err)
}

/// Row of a linear generator ("D", "P0", "K2", "M01", "Sa+", ...).
#[pyfunction]
fn generator_row(name: &str, idx: &PyBasisIndex) -> PyResult<Vec<(PyBasisIndex, C64)>> {
    let g = name.parse().map_err(err)?;
    let row = generators::generator_matrix_elements(g, &idx.0);
    Ok(row.targets.into_iter().map(|(t, c)| (PyBasisIndex(t), c)).collect())
}

/// Coherent-state symbol ("D", "P", "K", "M", "D2", "PP", "KK", "PK", "KP", "MM").
#[pyfunction]
fn symbol(name: &str, z: Mat, lambda: i64) -> PyResult<C64> {
    let s = SymbolName::all()
        .into_iter()
        .find(|s| s.to_string() == name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown symbol {name:?}")))?;
    Ok(generators::symbol(s, &point(z)?, lambda))
}

/// Eight-mode state of φ_idx as {occupation tuple: amplitude}.
#[pyfunction]
fn compound_basis<'py>(py: Python<'py>, idx: &PyBasisIndex) -> PyResult<Bound<'py, PyDict>> {
    occupations(py, &fock::compound_basis(&idx.0).map_err(err)?)
}

#[pyfunction]
fn lowest_weight(py: Python<'_>, lambda: i64) -> PyResult<Bound<'_, PyDict>> {
    occupations(py, &fock::lowest_weight(lambda).map_err(err)?)
}

/// Constituent exchange applied to an eight-mode state.
#[pyfunction]
fn exchange<'py>(py: Python<'py>, state: BTreeMap<Vec<u32>, C64>) -> PyResult<Bound<'py, PyDict>> {
    let mut v = FockVector::zero(8);
    for (occ, c) in state {
        if occ.len() != 8 {
            return Err(PyValueError::new_err("occupations must have 8 entries"));
        }
        v = v.add(&FockVector::basis_state(8, &occ).scale(c));
    }
    occupations(py, &fock::exchange(&v).map_err(err)?)
}

#[pymodule]
fn pycartan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBasisIndex>()?;
    m.add_function(wrap_pyfunction!(indices_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_d, m)?)?;
    m.add_function(wrap_pyfunction!(basis_poly, m)?)?;
    m.add_function(wrap_pyfunction!(basis_eval, m)?)?;
    m.add_function(wrap_pyfunction!(bergman_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_partial_sum, m)?)?;
    m.add_function(wrap_pyfunction!(cs_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(mc_inner_product, m)?)?;
    m.add_function(wrap_pyfunction!(casimir2, m)?)?;
    m.add_function(wrap_pyfunction!(coeff_c, m)?)?;
    m.add_function(wrap_pyfunction!(generator_row, m)?)?;
    m.add_function(wrap_pyfunction!(symbol, m)?)?;
    m.add_function(wrap_pyfunction!(compound_basis, m)?)?;
    m.add_function(wrap_pyfunction!(lowest_weight, m)?)?;
    m.add_function(wrap_pyfunction!(exchange, m)?)?;
    Ok(())
}
