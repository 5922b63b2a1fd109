import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from omlkit.expr import (CAP_MINUS, CAP_PLUS, CUP_MINUS, CUP_PLUS, EQ, LE, ORDER_INDICES, Relation,
                         Var, expand, identity, interpret_merged, iff, implies, join, meet, neg, parse, parse_condition)
from omlkit.freeoml import build_tables, check_quasi_2var, eval_free, free_lattice
from omlkit.models import (BUILTIN_NAMES, FAILS, HOLDS, OML_BATTERY, ModelError, builtin,
                           check_condition, eval_model, evaluate, load_model, parse_model, replay)

from conftest import exprs

a, b, c = Var("a"), Var("b"), Var("c")

O6_TEXT = """\
elements: 0 x xp y yp 1
complement: 0:1 1:0 x:xp xp:x y:yp yp:y
covers: 0<x x<y y<1 0<yp yp<xp xp<1      # O6
"""


@pytest.mark.parametrize("name,size,om", [("mo2", 6, True), ("o6", 6, False), ("bool2", 2, True),
                                          ("bool16", 16, True), ("mo2xbool2", 12, True)])
def test_builtin_flags(name, size, om):
    m = builtin(name)
    assert len(m) == size and m.is_lattice and m.is_ortholattice
    assert m.is_orthomodular == om


def test_model_file_matches_builtin_o6(tmp_path):
    p = tmp_path / "o6.txt"
    p.write_text(O6_TEXT)
    for spec in (f"file:{p}", str(p)):
        m = load_model(spec)
        assert not m.is_orthomodular and m.is_ortholattice
        assert eval_model(parse("(a v (a' ^ b))"), m, {"a": "x", "b": "y"}) == "x"


def test_o6_orthomodularity_failure():
    m = builtin("o6")
    assert eval_model(parse("(a v b)"), m, {"a": "x", "b": "y"}) == "y"
    assert eval_model(parse("(a v (a' ^ b))"), m, {"a": "x", "b": "y"}) == "x"


def test_mo2_sasaki_join():
    assert eval_model(parse("(a v1 b)"), builtin("mo2"), {"a": "x", "b": "y"}) == "x"


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_excluded_middle(name):
    m = builtin(name)
    for x in m.elements:
        assert eval_model(parse("(a v0 a')"), m, {"a": x}) == m.elements[m.top]


@pytest.mark.parametrize("text,err", [
    ("elements: 0 1\ncomplement: 0:1 1:0\n", "covers"),
    ("elements: 0 x 1\ncomplement: 0:1 1:0 x:x\ncovers: 0<x x<1\n", None),
    ("elements: 0 x y 1\ncomplement: 0:1 1:0 x:y y:x\ncovers: 0<x 0<y\n", None),
    ("elements: 0 1\ncomplement: 0:1 1:0\ncovers: 0<2\n", None),
    ("elements: 0 1\ncomplement: 0-1\ncovers: 0<1\n", "complement"),
    ("elements 0 1\n", None),
])
def test_bad_model_files(text, err):
    with pytest.raises(ModelError, match=err):
        parse_model(text)


def test_missing_model_file():
    with pytest.raises(ModelError):
        load_model("file:/nonexistent/model.txt")
    with pytest.raises(ModelError):
        builtin("mo3")


def test_ol4_clause_fails_in_mo2():
    rep = check_condition(parse_condition("b <=n1+ (a v1 b)"), builtin("mo2"))
    assert rep.verdict == FAILS and replay(rep, builtin("mo2"))


def test_u3_ordering_collapse_fails_in_o6():
    rep = check_condition(iff(Relation(CUP_PLUS, a, b, 3), Relation(LE, a, b)), builtin("o6"))
    assert rep.verdict == FAILS and replay(rep, builtin("o6"))


def test_join_cancellation_holds_in_mo2():
    phi = lambda x, y: meet(x, join(neg(x), y))  # noqa: E731
    from omlkit.expr import mjoin
    cond = implies((Relation(EQ, phi(a, neg(c)), phi(b, neg(c))),),
                   Relation(EQ, mjoin(a, c), mjoin(b, c)))
    for i in range(6):
        assert check_condition(cond, builtin("mo2"), i).holds


def test_counterexample_is_lexicographically_first():
    rep = check_condition(parse_condition("a = b"), builtin("bool2"))
    assert rep.counterexample == {"a": "0", "b": "1"}


def test_merged_needs_interp():
    with pytest.raises((ValueError, ModelError)):
        evaluate(parse("(a | b)"), builtin("mo2"), {"a": 1, "b": 2})


def test_orderings_are_partial_orders_on_mo2():
    m = builtin("mo2")
    for kind, idx in ORDER_INDICES.items():
        for i in idx:
            le = lambda x, y: Relation(kind, x, y, i)  # noqa: E731
            for cond in (implies((), le(a, a)),
                         implies((le(a, b), le(b, a)), Relation(EQ, a, b)),
                         implies((le(a, b), le(b, c)), le(a, c)),
                         iff(le(a, b), Relation(LE, a, b))):
                assert check_condition(cond, m).holds, (kind, i, cond)


@given(exprs("ab", merged=False), st.sampled_from(["mo2", "o6", "bool4", "mo2xbool2"]),
       st.integers(0, 11), st.integers(0, 11))
@settings(max_examples=300, deadline=None)
def test_expand_coherence(e, name, x, y):
    m = builtin(name)
    env = {"a": x % len(m), "b": y % len(m)}
    assert evaluate(e, m, env) == evaluate(expand(e), m, env)


@given(exprs("ab", indexed=False), st.integers(0, 5), st.integers(0, 11), st.integers(0, 11))
@settings(max_examples=200, deadline=None)
def test_expand_coherence_merged(e, i, x, y):
    m = builtin("mo2xbool2")
    env = {"a": x, "b": y}
    assert evaluate(e, m, env, i) == evaluate(expand(interpret_merged(e, i)), m, env)


@given(exprs("ab", merged=False, max_leaves=8))
@settings(max_examples=100, deadline=None)
def test_free_algebra_as_model(e):
    t = build_tables()
    lat = free_lattice()
    xs, ys = np.meshgrid(np.arange(96), np.arange(96), indexing="ij")
    got = np.broadcast_to(evaluate(e, lat, {"a": xs, "b": ys}), xs.shape)
    for x, y in [(t.a, t.b), (t.b, t.a), (0, 95), (17, 58)] + list(zip(range(0, 96, 7), range(95, 0, -7))):
        assert got[x, y] == eval_free(e, 0, t, {"a": x, "b": y})


def _two_var_conditions():
    out = []
    for kind, idx in ORDER_INDICES.items():
        for i in idx:
            out.append(iff(Relation(kind, a, b, i), Relation(LE, a, b)))
            out.append(implies((), Relation(kind, a, join(a, b, i), i)))
            out.append(implies((), Relation(kind, b, join(a, b, i), i)))
    out.append(parse_condition("(a ->1 b) = 1 <=> a <= b"))
    out.append(parse_condition("(a v1 b) = (b v1 a)"))
    out.append(parse_condition("(a ^ (a' v b)) = (a ^1 b)"))
    return out


@pytest.mark.parametrize("cond", _two_var_conditions(), ids=str)
def test_two_var_decision_agrees_with_models(cond):
    verdict = check_quasi_2var(cond)
    for name in OML_BATTERY + ("bool16",):
        rep = check_condition(cond, builtin(name))
        if verdict.holds:
            assert rep.holds, name
    if not verdict.holds:
        assert not check_condition(cond, builtin(verdict.model)).holds
