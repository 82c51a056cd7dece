//! Python bindings. Structured results cross the boundary as Python objects
//! decoded from the library's JSON reports.

use binedge_core::algebra::{parse_monomial, MonomialIdeal, VarNames};
use binedge_core::families::{self, fixtures, Family, GraphRecipe};
use binedge_core::fsplit;
use binedge_core::graph::{self, VertexSet};
use binedge_core::groebner;
use binedge_core::primes;
use binedge_core::symbolic::{self, CycleReport};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: serde::Serialize>(py: Python<'_>, v: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn family(name: &str) -> PyResult<Family> {
    Family::from_name(name).ok_or_else(|| value_err(format!("unknown family {name:?}")))
}

/// A simple graph on vertices `1..=n`.
#[pyclass(name = "Graph", module = "binedge")]
#[derive(Clone)]
pub struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: graph::Graph::from_edges(n, &edges).map_err(value_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: serde_json::from_str(text).map_err(value_err)? })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("graphs serialize")
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn component_count(&self, removed: Vec<usize>) -> usize {
        self.inner.component_count(removed.into_iter().collect::<VertexSet>())
    }

    /// Vertices of an induced net, or `None`.
    fn contains_induced_net(&self, py: Python<'_>) -> PyResult<Option<PyObject>> {
        self.inner.contains_induced_net().map(|w| to_py(py, &w)).transpose()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.inner.n(), self.inner.edges())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Clique joins along a path.
#[pyclass(name = "Recipe", module = "binedge")]
#[derive(Clone)]
pub struct PyRecipe {
    inner: GraphRecipe,
}

#[pymethods]
impl PyRecipe {
    #[new]
    fn new(path_len: usize) -> Self {
        PyRecipe { inner: GraphRecipe::path(path_len) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyRecipe { inner: GraphRecipe::from_json(text).map_err(value_err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn with_vertex_join(&self, pos: usize, t: usize) -> Self {
        PyRecipe { inner: self.inner.clone().with_vertex_join(pos, t) }
    }

    fn with_edge_join(&self, pos: usize, t: usize) -> Self {
        PyRecipe { inner: self.inner.clone().with_edge_join(pos, t) }
    }

    fn with_whisker(&self, pos: usize) -> Self {
        PyRecipe { inner: self.inner.clone().with_whisker(pos) }
    }

    fn with_clique_whisker(&self, pos: usize, offset: usize) -> Self {
        PyRecipe { inner: self.inner.clone().with_clique_whisker(pos, offset) }
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn is_in(&self, family_name: &str) -> PyResult<bool> {
        Ok(self.inner.is_in(family(family_name)?))
    }

    /// The graph in construction ids.
    fn build(&self) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: self.inner.build().map_err(value_err)?.graph })
    }

    /// The graph in the family labeling.
    fn labeled_graph(&self) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: self.inner.build().map_err(value_err)?.labeled_graph() })
    }

    fn __repr__(&self) -> String {
        format!("Recipe({})", self.inner.to_json())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

fn monomial_ideal(variables: Vec<String>, generators: Vec<String>) -> PyResult<(MonomialIdeal, VarNames)> {
    let names = VarNames::Custom(variables);
    let gens = generators.iter().map(|g| parse_monomial(g, &names)).collect::<Result<Vec<_>, _>>().map_err(value_err)?;
    Ok((MonomialIdeal::new(names.nvars(), gens), names))
}

#[pyfunction]
fn groebner_basis(g: &PyGraph) -> Vec<String> {
    groebner::groebner_basis_edge(&g.inner).render(&VarNames::binomial(g.inner.n()))
}

/// Reduced basis from Buchberger's algorithm, for cross-checks on small graphs.
#[pyfunction]
fn buchberger_basis(g: &PyGraph) -> PyResult<Vec<String>> {
    let ideal = binedge_core::algebra::binomial_edge_ideal(&g.inner);
    let gb = groebner::buchberger(&ideal, groebner::Budget::default()).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(gb.render(&VarNames::binomial(g.inner.n())))
}

#[pyfunction]
fn admissible_paths(py: Python<'_>, g: &PyGraph) -> PyResult<PyObject> {
    to_py(py, &groebner::enumerate_admissible_paths(&g.inner))
}

#[pyfunction]
fn initial_ideal(g: &PyGraph) -> Vec<String> {
    let names = VarNames::binomial(g.inner.n());
    groebner::initial_ideal(&g.inner).generators().iter().map(|m| names.render_monomial(m)).collect()
}

#[pyfunction]
fn minimal_primes(py: Python<'_>, g: &PyGraph) -> PyResult<PyObject> {
    to_py(py, &primes::minimal_primes(&g.inner).map_err(value_err)?)
}

#[pyfunction]
fn count_components_formula(recipe: &PyRecipe, cut: Vec<usize>) -> PyResult<usize> {
    Ok(primes::count_components_formula(&recipe.inner, &cut).map_err(value_err)?.0)
}

#[pyfunction]
fn recognize(g: &PyGraph, family_name: &str) -> PyResult<Option<PyRecipe>> {
    Ok(families::recognize(&g.inner, family(family_name)?).map(|r| PyRecipe { inner: r.recipe }))
}

#[pyfunction]
fn is_net_free_generalized_caterpillar(g: &PyGraph) -> bool {
    families::is_net_free_generalized_caterpillar(&g.inner)
}

#[pyfunction]
#[pyo3(signature = (family_name, max_n, max_path_len=None, max_clique=None))]
fn enumerate_recipes(family_name: &str, max_n: usize, max_path_len: Option<usize>, max_clique: Option<usize>) -> PyResult<Vec<PyRecipe>> {
    let f = family(family_name)?;
    let recipes = families::enumerate_recipes(f, max_n, max_path_len.unwrap_or(max_n), max_clique.unwrap_or(max_n));
    Ok(recipes.into_iter().map(|inner| PyRecipe { inner }).collect())
}

#[pyfunction]
fn fixture(py: Python<'_>, name: &str) -> PyResult<PyObject> {
    let f = fixtures::get(name).ok_or_else(|| value_err(format!("unknown fixture {name:?}")))?;
    to_py(py, &f)
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::NAMES.to_vec()
}

#[pyfunction]
fn find_special_odd_cycle(py: Python<'_>, variables: Vec<String>, generators: Vec<String>) -> PyResult<Option<PyObject>> {
    let (ideal, names) = monomial_ideal(variables, generators)?;
    let delta = symbolic::facet_complex(&ideal).map_err(value_err)?;
    symbolic::find_special_odd_cycle(&delta).map(|c| to_py(py, &CycleReport::new(&c, &delta, &names))).transpose()
}

#[pyfunction]
fn symbolic_power(variables: Vec<String>, generators: Vec<String>, m: u32) -> PyResult<Vec<String>> {
    let (ideal, names) = monomial_ideal(variables, generators)?;
    let s = symbolic::symbolic_power_monomial(&ideal, m).map_err(value_err)?;
    Ok(s.generators().iter().map(|g| names.render_monomial(g)).collect())
}

#[pyfunction]
fn powers_equal(py: Python<'_>, variables: Vec<String>, generators: Vec<String>, t_max: u32) -> PyResult<PyObject> {
    let (ideal, names) = monomial_ideal(variables, generators)?;
    to_py(py, &symbolic::powers_equal_named(&ideal, t_max, &names).map_err(value_err)?)
}

#[pyfunction]
#[pyo3(signature = (recipe, t_max=3))]
fn check_pendant_power_equality(py: Python<'_>, recipe: &PyRecipe, t_max: u32) -> PyResult<PyObject> {
    let rep = symbolic::check_pendant_power_equality(&recipe.inner, t_max).map_err(value_err)?;
    let obj = to_py(py, &rep)?;
    obj.bind(py).set_item("passed", rep.passed())?;
    Ok(obj)
}

#[pyfunction]
#[pyo3(signature = (recipe, p, oracle_bound=fsplit::DEFAULT_ORACLE_BOUND))]
fn verify_symbolic_fsplit(py: Python<'_>, recipe: &PyRecipe, p: u32, oracle_bound: usize) -> PyResult<PyObject> {
    to_py(py, &fsplit::verify_symbolic_fsplit(&recipe.inner, p, oracle_bound).map_err(value_err)?)
}

#[pyfunction]
#[pyo3(signature = (recipe, p, oracle_bound=fsplit::DEFAULT_ORACLE_BOUND))]
fn verify_sfr_conditions(py: Python<'_>, recipe: &PyRecipe, p: u32, oracle_bound: usize) -> PyResult<PyObject> {
    to_py(py, &fsplit::verify_sfr_conditions(&recipe.inner, p, oracle_bound).map_err(value_err)?)
}

#[pyfunction]
fn fedder_check(py: Python<'_>, n: usize, p: u32) -> PyResult<PyObject> {
    to_py(py, &fsplit::fedder_check(n, p).map_err(value_err)?)
}

#[pymodule]
pub fn binedge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyRecipe>()?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(buchberger_basis, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_paths, m)?)?;
    m.add_function(wrap_pyfunction!(initial_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_primes, m)?)?;
    m.add_function(wrap_pyfunction!(count_components_formula, m)?)?;
    m.add_function(wrap_pyfunction!(recognize, m)?)?;
    m.add_function(wrap_pyfunction!(is_net_free_generalized_caterpillar, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_recipes, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(find_special_odd_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(symbolic_power, m)?)?;
    m.add_function(wrap_pyfunction!(powers_equal, m)?)?;
    m.add_function(wrap_pyfunction!(check_pendant_power_equality, m)?)?;
    m.add_function(wrap_pyfunction!(verify_symbolic_fsplit, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sfr_conditions, m)?)?;
    m.add_function(wrap_pyfunction!(fedder_check, m)?)?;
    Ok(())
}
