//! Python bindings: automata, the decision procedure, formula evaluation,
//! compilation and the game.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use forestdef::algebra::{analyze, AlgebraDump, AlgebraError, Kind};
use forestdef::compile::CompileError;
use forestdef::logic::{ef_game_winner, eval_nodes as nodes_of, forest_accepts};
use forestdef::oracle::{bounded_indefinability_search, cross_check as check, CrossCheck};
use forestdef::terms::MaybeEmptyForest;
use forestdef::{
    compile_forest_formula, decide_definable, Alphabet, DecideOptions, Forest, ForestFormula,
    Formula, SemigroupAutomaton, Verdict,
};

create_exception!(forestdef, ResourceBoundError, PyException);

fn algebra_err(e: AlgebraError) -> PyErr {
    match e {
        AlgebraError::ResourceBound(_) => ResourceBoundError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn compile_err(e: CompileError) -> PyErr {
    match e {
        CompileError::Unstable(_) => PyValueError::new_err(e.to_string()),
        _ => ResourceBoundError::new_err(e.to_string()),
    }
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_forest(text: &str) -> PyResult<Forest> {
    Forest::parse(text).map_err(value_err)
}

/// A forest formula, or a node formula read as `E(φ)`.
fn parse_forest_formula(text: &str) -> PyResult<ForestFormula> {
    ForestFormula::parse(text).or_else(|e| {
        Formula::parse(text)
            .map(ForestFormula::exists)
            .map_err(|_| value_err(e))
    })
}

/// A semigroup automaton over a two-sorted alphabet.
#[pyclass(name = "Automaton", module = "forestdef", frozen)]
pub struct PyAutomaton {
    inner: SemigroupAutomaton,
}

#[pymethods]
impl PyAutomaton {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        SemigroupAutomaton::from_json(text)
            .map(|inner| PyAutomaton { inner })
            .map_err(algebra_err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(value_err)?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind {
            Kind::Forest => "forest",
            Kind::Tree => "tree",
        }
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn leaf_labels(&self) -> Vec<String> {
        self.inner.alphabet.leaf_labels.iter().cloned().collect()
    }

    #[getter]
    fn inner_labels(&self) -> Vec<String> {
        self.inner.alphabet.inner_labels.iter().cloned().collect()
    }

    fn accepts(&self, forest: &str) -> PyResult<bool> {
        self.inner
            .accepts(&parse_forest(forest)?)
            .map_err(algebra_err)
    }

    #[pyo3(signature = (witnesses = false, pump = 1, jobs = 1))]
    fn decide(&self, witnesses: bool, pump: usize, jobs: usize) -> PyResult<PyVerdict> {
        let opts = DecideOptions {
            witnesses,
            pump,
            jobs: jobs.max(1),
            ..Default::default()
        };
        decide_definable(&self.inner, &opts)
            .map(|inner| PyVerdict { inner })
            .map_err(algebra_err)
    }

    /// JSON dump of the syntactic forest algebra (forest kind only).
    #[pyo3(signature = (dashv = false))]
    fn algebra_json(&self, dashv: bool) -> PyResult<String> {
        if self.inner.kind == Kind::Tree {
            return Err(value_err("algebra dumps need a forest-kind automaton"));
        }
        let an = analyze(&self.inner, &DecideOptions::default()).map_err(algebra_err)?;
        let dump = AlgebraDump::new(&self.inner.name, &an.morphism, dashv.then_some(&an.dashv));
        serde_json::to_string(&dump).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Automaton(name={:?}, kind={}, size={})",
            self.inner.name,
            self.kind(),
            self.inner.size()
        )
    }
}

/// Outcome of the decision procedure.
#[pyclass(name = "Verdict", module = "forestdef", frozen)]
pub struct PyVerdict {
    inner: Verdict,
}

#[pymethods]
impl PyVerdict {
    #[getter]
    fn definable(&self) -> bool {
        self.inner.is_definable()
    }

    /// `"1-idempotent"`, `"1-commutative"`, `"2"`, `"3"` or `None`.
    #[getter]
    fn identity(&self) -> PyResult<Option<String>> {
        self.inner
            .violation()
            .map(|v| serde_json::to_value(v.identity).map(|j| j.as_str().unwrap_or("").to_string()))
            .transpose()
            .map_err(value_err)
    }

    #[getter]
    fn inner_label(&self) -> Option<String> {
        self.inner.violation().and_then(|v| v.inner_label.clone())
    }

    /// `(s0, s1, member0, member1)` when witnesses were requested.
    #[getter]
    fn separating_pair(&self) -> Option<(String, String, bool, bool)> {
        let p = self.inner.violation()?.separating_pair.as_ref()?;
        Some((p.s0.to_string(), p.s1.to_string(), p.member0, p.member1))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_err)
    }

    fn __bool__(&self) -> bool {
        self.inner.is_definable()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        match self.inner.violation() {
            None => "Verdict(definable)".into(),
            Some(_) => format!(
                "Verdict(not definable, identity {:?})",
                self.identity().ok().flatten()
            ),
        }
    }
}

/// Compile a forest formula into an automaton recognising its language.
#[pyfunction]
fn compile(
    formula: &str,
    leaf_labels: Vec<String>,
    inner_labels: Vec<String>,
) -> PyResult<PyAutomaton> {
    let psi = parse_forest_formula(formula)?;
    let alphabet = Alphabet::new(leaf_labels, inner_labels).map_err(value_err)?;
    compile_forest_formula(&psi, &alphabet)
        .map(|inner| PyAutomaton { inner })
        .map_err(compile_err)
}

/// Whether a forest formula (or node formula, read as `E(φ)`) accepts.
#[pyfunction]
fn evaluate(formula: &str, forest: &str) -> PyResult<bool> {
    Ok(forest_accepts(
        &parse_forest_formula(formula)?,
        &parse_forest(forest)?,
    ))
}

/// Child-index paths of the nodes where a node formula holds.
#[pyfunction]
fn eval_nodes(formula: &str, forest: &str) -> PyResult<Vec<Vec<usize>>> {
    let phi = Formula::parse(formula).map_err(value_err)?;
    Ok(nodes_of(&phi, &parse_forest(forest)?)
        .into_iter()
        .map(|id| id.0)
        .collect())
}

/// `"Spoiler"` or `"Duplicator"` for the `rounds`-round game.
#[pyfunction]
fn game_winner(rounds: usize, left: &str, right: &str) -> PyResult<String> {
    let l = MaybeEmptyForest::parse(left).map_err(value_err)?;
    let r = MaybeEmptyForest::parse(right).map_err(value_err)?;
    ef_game_winner(rounds, &l, &r, None)
        .map(|p| p.to_string())
        .map_err(value_err)
}

/// `None` when formula and automaton agree on every forest up to
/// `max_nodes` nodes, otherwise the first forest where they differ.
#[pyfunction]
#[pyo3(signature = (formula, automaton, max_nodes = 6))]
fn cross_check(
    formula: &str,
    automaton: &PyAutomaton,
    max_nodes: usize,
) -> PyResult<Option<String>> {
    let psi = parse_forest_formula(formula)?;
    match check(&psi, &automaton.inner, max_nodes).map_err(algebra_err)? {
        CrossCheck::Agree { .. } => Ok(None),
        CrossCheck::Counterexample { forest, .. } => Ok(Some(forest.to_string())),
    }
}

/// A pair `(s0 in L, s1 not in L)` that Duplicator cannot tell apart in
/// `rounds` rounds, if one exists among forests up to `max_nodes` nodes.
#[pyfunction]
#[pyo3(signature = (automaton, rounds, max_nodes = 4))]
fn search(
    automaton: &PyAutomaton,
    rounds: usize,
    max_nodes: usize,
) -> PyResult<Option<(String, String)>> {
    Ok(
        bounded_indefinability_search(&automaton.inner, rounds, max_nodes)
            .map_err(algebra_err)?
            .map(|(a, b)| (a.to_string(), b.to_string())),
    )
}

#[pymodule]
#[pyo3(name = "forestdef")]
pub fn forestdef_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAutomaton>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(compile, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(eval_nodes, m)?)?;
    m.add_function(wrap_pyfunction!(game_winner, m)?)?;
    m.add_function(wrap_pyfunction!(cross_check, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add(
        "ResourceBoundError",
        m.py().get_type::<ResourceBoundError>(),
    )?;
    Ok(())
}
