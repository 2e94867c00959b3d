"""Smoke test for the forestdef extension module.

Build the module first (``maturin develop`` in crates/py, or copy the
cdylib built with ``--features extension-module`` to ``forestdef.so`` on
``PYTHONPATH``), then run ``python3 python/smoke_test.py``.
"""

import json
import os
import sys

import forestdef as fd

DATA = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "data")


def load(name):
    return fd.Automaton.load(os.path.join(DATA, name))


def main():
    some_a = load("some_a.json")
    assert some_a.decide().definable
    assert bool(some_a.decide())

    two_a = load("two_a.json")
    v = two_a.decide(witnesses=True)
    assert not v.definable
    assert v.identity == "1-idempotent"
    assert v.separating_pair == ("a", "a+a", False, True)
    assert json.loads(v.to_json())["verdict"] == "not_definable"
    assert str(v).startswith("identity (1) fails")

    ex = load("ancestor_child.json")
    v = ex.decide(witnesses=True, pump=2)
    assert v.identity == "3", v
    s0, s1, m0, m1 = v.separating_pair
    assert ex.accepts(s0) == m0 and ex.accepts(s1) == m1 and m0 != m1

    tree = load("child_of_root.json")
    assert tree.kind == "tree" and tree.decide().definable

    aut = fd.compile("E(a | EF a)", ["a", "c"], ["b"])
    assert aut.accepts("b(c+b(a))") and not aut.accepts("c+b(c)")
    assert fd.cross_check("E(a | EF a)", aut, 5) is None
    assert fd.cross_check("E(a)", aut, 5) == "b(a)"
    dump = json.loads(aut.algebra_json(dashv=True))
    assert len(dump["elements"]) == 2 and "dashv" in dump

    assert fd.evaluate("EF(a & !FP(!b))", "b(b(a))")
    assert fd.eval_nodes("EF a", "b(b(a))") == [[0], [0, 0]]
    assert fd.game_winner(1, "b(a)", "b(c)") == "Spoiler"
    assert fd.game_winner(3, "a+a", "a") == "Duplicator"
    assert fd.search(two_a, 3, 2) == ("a+a", "a")

    try:
        fd.evaluate("E(", "a")
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")
    assert issubclass(fd.ResourceBoundError, Exception)

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
