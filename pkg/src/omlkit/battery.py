"""Fixed battery of claims about quantum operations, checked exhaustively.

Each item states what is expected (HOLDS / FAILS, and where) and records
what was observed; an item passes only if the two agree exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .expr import (CAP_MINUS, CAP_PLUS, CUP_MINUS, CUP_PLUS, EQ, LE, ONE, ORDER_INDICES, ZERO,
                   Condition, Relation, Var, identity, iff, impl, implies, join, meet, mjoin,
                   mmeet, neg, parse)
from .models import FAILS, HOLDS, OML_BATTERY, builtin, check_condition, replay
from .freeoml import N_CLASSES, Septuple, check_beran_listing, check_identity_all_oml, \
    check_quasi_2var, classify

a, b, c = Var("a"), Var("b"), Var("c")
KINDS = (CUP_PLUS, CUP_MINUS, CAP_PLUS, CAP_MINUS)


@dataclass
class Item:
    group: str
    name: str
    expected: str
    observed: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def tsv(self) -> str:
        mark = "pass" if self.passed else "FAIL"
        return "\t".join([mark, self.group, self.name, f"expected {self.expected}",
                          f"observed {self.observed}", self.detail or "-"])


def rel(kind, x, y, i=None):
    return Relation(kind, x, y, i)


def admissible():
    return [(k, i) for k in KINDS for i in ORDER_INDICES[k]]


# ---------- evidence helpers ----------

def _all_oml(cond: Condition, interp=None):
    """Exact for two variables, battery search otherwise.  Returns (verdict, detail)."""
    if len(cond.variables()) <= 2:
        rep = check_quasi_2var(cond, interp)
    else:
        rep = next((r for r in _battery(cond, interp) if not r.holds), None)
        if rep is None:
            return HOLDS, "battery " + ",".join(OML_BATTERY)
    if rep.holds:
        return HOLDS, "bool2+mo2 (all OML)"
    return FAILS, f"{rep.model}: {rep.counterexample_text()}"


def _battery(cond, interp=None):
    for name in OML_BATTERY:
        yield check_condition(cond, builtin(name), interp)


def _in(cond, model, interp=None):
    m = builtin(model)
    rep = check_condition(cond, m, interp)
    if not rep.holds:
        assert replay(rep, m, interp), f"counterexample does not replay: {cond}"
        return FAILS, f"{model}: {rep.counterexample_text()}"
    return HOLDS, model


def _claim(items, group, name, cond, expected, where="oml", interp=None):
    verdict, detail = _all_oml(cond, interp) if where == "oml" else _in(cond, where, interp)
    items.append(Item(group, f"{name} [{cond}]" if where == "oml" else f"{name} in {where} [{cond}]",
                      expected, verdict, detail))


def _oml_and_o6(items, group, name, cond):
    """Valid in every OML, and fails in O6 (so it forces orthomodularity)."""
    _claim(items, group, name, cond, HOLDS)
    _claim(items, group, name, cond, FAILS, "o6")


# ---------- groups ----------

def ol_positive(items):
    """OL1-3, OL5-9 and orthomodularity with quantum orderings and operations."""
    g = "OL conditions"
    for kind, i in admissible():
        le = lambda x, y: rel(kind, x, y, i)  # noqa: E731
        tag = f"<={kind[0]}{i}{kind[1]}"
        conds = {
            "OL1": implies((), le(a, a)),
            "OL2": implies((le(a, b), le(b, a)), rel(EQ, a, b)),
            "OL3": implies((le(a, b), le(b, c)), le(a, c)),
            "OL5": implies((le(a, c), le(b, c)), le(join(a, b, i), c)),
            "OL6": implies((), le(a, join(b, neg(b), i))),
            "OL7": identity(a, neg(neg(a))),
            "OL8": implies((le(a, b),), le(neg(b), neg(a))),
            "OL9": identity(meet(a, b, i), neg(join(neg(a), neg(b), i))),
            "OM": iff(rel(EQ, impl(a, b, i), ONE), le(a, b)),
        }
        for label, cond in conds.items():
            _claim(items, g, f"{label} {tag}", cond, HOLDS)
    for i in range(6):
        for lhs, rhs in ((join(a, neg(a), i), ONE), (join(neg(a), a, i), ONE),
                         (meet(a, neg(a), i), ZERO), (meet(neg(a), a, i), ZERO)):
            verdict = check_identity_all_oml(lhs, rhs, [0])
            items.append(Item(g, f"complement unanimity i={i} [{identity(lhs, rhs)}]",
                              HOLDS, verdict))


def ol4_pattern(items):
    g = "OL4 pattern"
    for x, name in ((a, "a"), (b, "b")):
        for kind, i in ((CAP_PLUS, 1), (CAP_MINUS, 2)):
            cond = implies((), rel(kind, x, join(a, b, i), i))
            expected = HOLDS if (x is a) == (i == 1) else FAILS
            _claim(items, g, f"{name} vs a v{i} b", cond, expected, "mo2")
            if expected == HOLDS:
                _claim(items, g, f"{name} vs a v{i} b", cond, HOLDS)
    for i in (3, 4, 5):
        for kind in KINDS:
            for x, name in ((a, "a"), (b, "b")):
                cond = implies((), rel(kind, x, join(a, b, i), i))
                _claim(items, g, f"{name} vs a v{i} b", cond, FAILS, "mo2")


def orderings_collapse(items):
    g = "quantum orderings equal <="
    for kind, i in admissible():
        _oml_and_o6(items, g, f"<={kind[0]}{i}{kind[1]}", iff(rel(kind, a, b, i), rel(LE, a, b)))


def orthomodular_via_join(items):
    g = "a' vi b = 1 characterises the ordering"
    for kind, i in admissible():
        cond = iff(rel(EQ, join(neg(a), b, i), ONE), rel(kind, a, b, i))
        _oml_and_o6(items, g, f"<={kind[0]}{i}{kind[1]}", cond)
    for i in range(1, 6):
        _oml_and_o6(items, g, f"->{i}", iff(rel(EQ, impl(a, b, i), ONE), rel(LE, a, b)))


def deduction(items, models=OML_BATTERY):
    g = "deduction theorem"
    forms = [(LE, None), (CUP_PLUS, 1), (CAP_PLUS, 1)]
    for kind, i in forms:
        cond = iff(rel(kind, meet(b, a, 1), c, i), rel(kind, a, impl(b, c, 1), i))
        _claim(items, g, f"index 1 {kind}", cond, HOLDS)
        _claim(items, g, f"index 1 {kind}", cond, FAILS, "o6")
    for kind, i in admissible():
        if i == 1 and kind in (CUP_PLUS, CAP_PLUS):
            continue
        cond = iff(rel(kind, meet(b, a, i), c, i), rel(kind, a, impl(b, c, 1), i))
        _claim(items, g, f"other index <={kind[0]}{i}{kind[1]}", cond, FAILS)


def _phi(x, y):
    """Sasaki projection of y onto x."""
    return meet(x, join(neg(x), y))


def sasaki(items):
    g = "Sasaki projection"
    for i in range(6):
        c25 = implies((rel(EQ, _phi(a, c), _phi(b, c)),), rel(EQ, mmeet(a, c), mmeet(b, c)))
        c26 = implies((rel(EQ, _phi(a, neg(c)), _phi(b, neg(c))),), rel(EQ, mjoin(a, c), mjoin(b, c)))
        for name, cond in (("meet cancellation", c25), ("join cancellation", c26)):
            verdict, detail = HOLDS, "battery " + ",".join(OML_BATTERY)
            for rep in _battery(cond, i):
                if not rep.holds:
                    verdict, detail = FAILS, f"{rep.model}: {rep.counterexample_text()}"
                    break
            items.append(Item(g, f"{name} i={i} [{cond}]", HOLDS, verdict, detail))
    phi_eq = iff(rel(EQ, _phi(a, c), _phi(b, c)), rel(EQ, _phi(neg(a), c), _phi(neg(b), c)))
    _claim(items, g, "complement equivalence", phi_eq, HOLDS)
    _claim(items, g, "complement equivalence", phi_eq, FAILS, "o6")
    imp_eq = iff(rel(EQ, impl(a, c, 1), impl(b, c, 1)), rel(EQ, impl(neg(a), c, 1), impl(neg(b), c, 1)))
    _claim(items, g, "->1 complement equivalence", imp_eq, HOLDS)
    _claim(items, g, "->1 complement equivalence", imp_eq, FAILS, "o6")


def sasaki_identities(items):
    """Two-variable identities used to prove the cancellation laws."""
    g = "Sasaki identities"
    phi = _phi(a, c)
    m1 = meet(a, c, 1)
    m2 = meet(a, c, 2)
    pairs = [
        ("a^c", meet(a, c), meet(c, phi)),
        ("a^1c", m1, phi),
        ("a^2c", m2, neg(impl(c, neg(phi), 1))),
        ("a^3c", meet(a, c, 3), neg(impl(impl(m1, c, 1), neg(m2), 1))),
        ("a^4c", meet(a, c, 4), neg(impl(impl(c, m1, 1), neg(m1), 1))),
        ("a^5c", meet(a, c, 5), join(m1, m2)),
        ("phi_a'(c')", _phi(neg(a), neg(c)), neg(impl(neg(c), _phi(a, neg(c)), 2))),
        ("phi_a'(c)", _phi(neg(a), c), neg(impl(c, _phi(a, c), 2))),
    ]
    for name, lhs, rhs in pairs:
        cond = identity(lhs, rhs)
        _claim(items, g, name, cond, HOLDS)


def classification(items, listing=True):
    g = "free algebra"
    if listing:
        bad = check_beran_listing()
        items.append(Item(g, "Beran listing", "0 mismatches", f"{len(bad)} mismatches",
                          "; ".join(map(str, bad[:4])) + (" ..." if len(bad) > 4 else "")))
    from . import catalog
    for text, want in catalog.SEPTUPLE_ANCHORS:
        got = classify(parse(text))
        items.append(Item(g, f"septuple of {text}", ",".join(map(str, want)), str(got)))


def construction(items, full=False, sample=10_000, seed=0):
    from .construct import construct_representative, load_seeds
    g = "construction"
    seeds = load_seeds()
    ids = range(N_CLASSES) if full else random.Random(seed).sample(range(N_CLASSES), sample)
    bad = 0
    for cid in ids:
        s = Septuple.from_id(cid)
        if classify(construct_representative(s, seeds, verify=False)) != s:
            bad += 1
    items.append(Item(g, f"round trip ({'all' if full else sample} septuples)", "0 failures",
                      f"{bad} failures"))


def enumeration(items, full=False, workers=1):
    from .search import TABLE1, enumerate_classes
    g = "enumeration"
    k = 14 if full else 8
    t = enumerate_classes(k, workers=workers)
    want = list(TABLE1[:k + 1])
    items.append(Item(g, f"class counts for costs 0..{k}", " ".join(map(str, want)),
                      " ".join(map(str, t.histogram()))))
    return t


def run_battery(full: bool = False, workers: int = 1) -> list[Item]:
    items: list[Item] = []
    ol_positive(items)
    ol4_pattern(items)
    orderings_collapse(items)
    orthomodular_via_join(items)
    deduction(items)
    sasaki_identities(items)
    sasaki(items)
    classification(items)
    construction(items, full=full)
    enumeration(items, full=full, workers=workers)
    return items
