use pyo3::prelude::*;
use pyo3::types::PyDict;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/data");

fn with_module<R>(f: impl FnOnce(Python<'_>, &Bound<'_, PyDict>) -> R) -> R {
    static INIT: std::sync::Once = std::sync::Once::new();
    INIT.call_once(|| {
        pyo3::append_to_inittab!(forestdef_py);
        Python::initialize();
    });
    Python::attach(|py| {
        let globals = PyDict::new(py);
        globals
            .set_item("fd", py.import("forestdef").unwrap())
            .unwrap();
        globals.set_item("DATA", DATA).unwrap();
        f(py, &globals)
    })
}

fn eval<T: for<'a, 'py> FromPyObject<'a, 'py>>(expr: &str) -> T {
    with_module(|py, g| {
        let code = std::ffi::CString::new(expr).unwrap();
        py.eval(&code, Some(g), None)
            .unwrap_or_else(|e| panic!("{expr}: {e}"))
            .extract()
            .map_err(Into::<PyErr>::into)
            .unwrap()
    })
}

use forestdef_py::forestdef_py;

#[test]
fn decide_from_python() {
    let ok: bool = eval("fd.Automaton.load(DATA + '/some_a.json').decide().definable");
    assert!(ok);
    let id: String = eval("fd.Automaton.load(DATA + '/two_a.json').decide().identity");
    assert_eq!(id, "1-idempotent");
    let pair: (String, String, bool, bool) =
        eval("fd.Automaton.load(DATA + '/two_a.json').decide(witnesses=True).separating_pair");
    assert_eq!(pair, ("a".into(), "a+a".into(), false, true));
    let label: String = eval("fd.Automaton.load(DATA + '/child_of_root.json').kind");
    assert_eq!(label, "tree");
}

#[test]
fn formulas_and_games() {
    assert!(eval::<bool>("fd.evaluate('EF(a & !FP(!b))', 'b(b(a))')"));
    let nodes: Vec<Vec<usize>> = eval("fd.eval_nodes('EF a', 'b(b(a))')");
    assert_eq!(nodes, vec![vec![0], vec![0, 0]]);
    assert_eq!(
        eval::<String>("fd.game_winner(1, 'b(a)', 'b(c)')"),
        "Spoiler"
    );
    let aut: bool = eval("fd.compile('E(a | EF a)', ['a', 'c'], ['b']).accepts('b(c+b(a))')");
    assert!(aut);
    let none: Option<String> =
        eval("fd.cross_check('E(a | EF a)', fd.compile('E(a | EF a)', ['a', 'c'], ['b']), 4)");
    assert_eq!(none, None);
    let pair: Option<(String, String)> =
        eval("fd.search(fd.Automaton.load(DATA + '/two_a.json'), 3, 2)");
    assert_eq!(pair, Some(("a+a".into(), "a".into())));
}

#[test]
fn errors_become_exceptions() {
    with_module(|py, g| {
        for (expr, kind) in [
            ("fd.evaluate('E(', 'a')", "ValueError"),
            ("fd.Automaton.from_json('{')", "ValueError"),
        ] {
            let code = std::ffi::CString::new(expr).unwrap();
            let err = py.eval(&code, Some(g), None).unwrap_err();
            let name: String = err.get_type(py).name().unwrap().extract().unwrap();
            assert_eq!(name, kind, "{expr}");
        }
    });
}
