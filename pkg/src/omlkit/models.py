"""Finite ortholattices and exhaustive checking of (quasi-)identities in them.

Expressions are evaluated over *all* assignments at once: every variable is a
numpy index array over the model's elements, so a condition with k variables
costs a handful of table gathers of length ``len(model) ** k``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .expr import (JOIN, MEET, MJOIN, MMEET, Binary, Complement, Condition, Expr, One, Op,
                   Var, Zero, definition, variables)

HOLDS, FAILS = "HOLDS", "FAILS"


class ModelError(ValueError):
    pass


@dataclass(eq=False)
class Ortholattice:
    name: str
    elements: tuple[str, ...]
    comp: np.ndarray          # (n,) complement
    leq: np.ndarray           # (n, n) bool, leq[x, y] <=> x <= y
    join: np.ndarray = field(repr=False, default=None)
    meet: np.ndarray = field(repr=False, default=None)
    bottom: int = 0
    top: int = 0
    is_lattice: bool = False
    is_ortholattice: bool = False
    is_orthomodular: bool = False

    def __len__(self):
        return len(self.elements)

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise ModelError(f"model {self.name}: no element named {name!r}") from None

    @classmethod
    def from_order(cls, name, elements, complement, leq) -> "Ortholattice":
        """Build and validate.  ``complement`` maps names to names (or is an index array)."""
        elements = tuple(elements)
        n = len(elements)
        if len(set(elements)) != n:
            raise ModelError(f"model {name}: duplicate element names")
        leq = np.asarray(leq, dtype=bool)
        if isinstance(complement, dict):
            missing = [e for e in elements if e not in complement]
            if missing:
                raise ModelError(f"model {name}: no complement given for {', '.join(missing)}")
            pos = {e: k for k, e in enumerate(elements)}
            try:
                comp = np.array([pos[complement[e]] for e in elements])
            except KeyError as err:
                raise ModelError(f"model {name}: complement names unknown element {err.args[0]!r}") from None
        else:
            comp = np.asarray(complement, dtype=np.int64)
        m = cls(name, elements, comp, leq)
        m._validate()
        return m

    @classmethod
    def from_covers(cls, name, elements, complement, covers) -> "Ortholattice":
        elements = tuple(elements)
        pos = {e: k for k, e in enumerate(elements)}
        n = len(elements)
        leq = np.eye(n, dtype=bool)
        for lo, hi in covers:
            for e in (lo, hi):
                if e not in pos:
                    raise ModelError(f"model {name}: cover mentions unknown element {e!r}")
            leq[pos[lo], pos[hi]] = True
        for k in range(n):  # transitive closure (Warshall)
            leq |= leq[:, [k]] & leq[[k], :]
        return cls.from_order(name, elements, complement, leq)

    def _pair(self, x, y):
        return f"({self.elements[x]}, {self.elements[y]})"

    def _validate(self):
        leq, n, el = self.leq, len(self.elements), self.elements
        if not leq.diagonal().all():
            raise ModelError(f"model {self.name}: order is not reflexive")
        both = leq & leq.T & ~np.eye(n, dtype=bool)
        if both.any():
            x, y = map(int, np.argwhere(both)[0])
            raise ModelError(f"model {self.name}: order is not antisymmetric at {self._pair(x, y)}")
        trans = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        if (trans & ~leq).any():
            x, y = map(int, np.argwhere(trans & ~leq)[0])
            raise ModelError(f"model {self.name}: order is not transitive at {self._pair(x, y)}")

        # least upper bounds: ub[x, y, z] <=> x <= z and y <= z
        ub = leq[:, None, :] & leq[None, :, :]
        lb = leq.T[:, None, :] & leq.T[None, :, :]
        self.join = self._extremum(ub, leq, "least upper bound")
        self.meet = self._extremum(lb, leq.T, "greatest lower bound")
        self.is_lattice = True
        bots = np.flatnonzero(leq.all(axis=1))
        tops = np.flatnonzero(leq.all(axis=0))
        self.bottom, self.top = int(bots[0]), int(tops[0])

        comp = self.comp
        if comp.shape != (n,) or comp.min() < 0 or comp.max() >= n:
            raise ModelError(f"model {self.name}: complement is not a map on the elements")
        bad = np.flatnonzero(comp[comp] != np.arange(n))
        if bad.size:
            x = int(bad[0])
            raise ModelError(f"model {self.name}: complement is not an involution at {el[x]} "
                             f"({el[x]}'' = {el[comp[comp[x]]]})")
        rev = leq & ~leq[comp][:, comp].T
        if rev.any():
            x, y = map(int, np.argwhere(rev)[0])
            raise ModelError(f"model {self.name}: complement does not reverse order: "
                             f"{el[x]} <= {el[y]} but not {el[comp[y]]} <= {el[comp[x]]}")
        ids = np.arange(n)
        bad = np.flatnonzero(self.join[ids, comp] != self.top)
        if bad.size:
            x = int(bad[0])
            raise ModelError(f"model {self.name}: {el[x]} v {el[comp[x]]} is not the top element")
        bad = np.flatnonzero(self.meet[ids, comp] != self.bottom)
        if bad.size:
            x = int(bad[0])
            raise ModelError(f"model {self.name}: {el[x]} ^ {el[comp[x]]} is not the bottom element")
        self.is_ortholattice = True

        # a <= b  =>  a v (a' ^ b) = b
        a, b = np.meshgrid(ids, ids, indexing="ij")
        om = self.join[a, self.meet[comp[a], b]] == b
        self.is_orthomodular = bool(om[leq].all())

    def _extremum(self, bounds, order, what):
        n = len(self.elements)
        flat = bounds.reshape(n * n, n).astype(np.int64)
        # z is extremal among the bounds iff no bound w fails order[z, w]
        beaten = (flat @ (~order).T.astype(np.int64)) > 0
        best = bounds.reshape(n * n, n) & ~beaten
        counts = best.sum(axis=1)
        if (counts != 1).any():
            k = int(np.flatnonzero(counts != 1)[0])
            raise ModelError(f"model {self.name}: no unique {what} for {self._pair(k // n, k % n)}")
        return best.argmax(axis=1).reshape(n, n)

    def product(self, other: "Ortholattice", name=None) -> "Ortholattice":
        n, m = len(self), len(other)
        elements = [f"{p}.{q}" for p in self.elements for q in other.elements]
        comp = (self.comp[:, None] * m + other.comp[None, :]).ravel()
        leq = (self.leq[:, None, :, None] & other.leq[None, :, None, :]).reshape(n * m, n * m)
        return Ortholattice.from_order(name or f"{self.name}x{other.name}", elements, comp, leq)


# ---------- built-in models ----------

def _boolean(k: int) -> Ortholattice:
    atoms = "pqrs"[:k]
    full = (1 << k) - 1

    def label(s):
        if s == 0:
            return "0"
        if s == full:
            return "1"
        return "".join(atoms[j] for j in range(k) if s >> j & 1)

    sets = range(1 << k)
    leq = np.array([[(s & t) == s for t in sets] for s in sets])
    comp = np.array([full ^ s for s in sets])
    return Ortholattice.from_order(f"bool{1 << k}", [label(s) for s in sets], comp, leq)


def _mo2() -> Ortholattice:
    # element order matches the MO2 encoding used by the free algebra
    atoms = ["x", "y", "yp", "xp"]
    covers = [("0", t) for t in atoms] + [(t, "1") for t in atoms]
    comp = {"0": "1", "1": "0", "x": "xp", "xp": "x", "y": "yp", "yp": "y"}
    return Ortholattice.from_covers("mo2", ["0", *atoms, "1"], comp, covers)


def _o6() -> Ortholattice:
    covers = [("0", "x"), ("x", "y"), ("y", "1"), ("0", "yp"), ("yp", "xp"), ("xp", "1")]
    comp = {"0": "1", "1": "0", "x": "xp", "xp": "x", "y": "yp", "yp": "y"}
    return Ortholattice.from_covers("o6", ["0", "x", "xp", "y", "yp", "1"], comp, covers)


BUILTIN_NAMES = ("mo2", "o6", "bool2", "bool4", "bool8", "bool16", "mo2xbool2")
OML_BATTERY = ("bool2", "bool4", "bool8", "mo2", "mo2xbool2")


@lru_cache(maxsize=None)
def builtin(name: str) -> Ortholattice:
    if name == "mo2":
        return _mo2()
    if name == "o6":
        return _o6()
    if name.startswith("bool") and name[4:] in ("2", "4", "8", "16"):
        return _boolean(int(name[4:]).bit_length() - 1)
    if name == "mo2xbool2":
        return builtin("mo2").product(builtin("bool2"), "mo2xbool2")
    raise ModelError(f"unknown builtin model {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def parse_model(text: str, name: str = "model") -> Ortholattice:
    fields = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("elements", "complement", "covers", "name"):
            raise ModelError(f"{name}:{lineno}: expected 'elements:', 'complement:' or 'covers:'")
        fields[key] = fields.get(key, []) + rest.split()
    for key in ("elements", "complement", "covers"):
        if key not in fields:
            raise ModelError(f"{name}: missing '{key}:' line")
    if "name" in fields:
        name = fields["name"][0]
    comp = {}
    for item in fields["complement"]:
        x, sep, y = item.partition(":")
        if not sep:
            raise ModelError(f"{name}: bad complement entry {item!r}; expected x:y")
        comp[x] = y
    covers = []
    for item in fields["covers"]:
        x, sep, y = item.partition("<")
        if not sep:
            raise ModelError(f"{name}: bad cover {item!r}; expected x<y")
        covers.append((x, y))
    return Ortholattice.from_covers(name, fields["elements"], comp, covers)


def load_model(spec: str | Path) -> Ortholattice:
    """``builtin:NAME``, a bare builtin name, ``file:PATH`` or a path."""
    spec = str(spec)
    if spec.startswith("builtin:"):
        return builtin(spec[len("builtin:"):])
    if spec in BUILTIN_NAMES:
        return builtin(spec)
    path = Path(spec[len("file:"):] if spec.startswith("file:") else spec)
    try:
        text = path.read_text()
    except OSError as err:
        raise ModelError(f"cannot read model file {path}: {err.strerror}") from None
    return parse_model(text, path.stem)


# ---------- evaluation ----------

@lru_cache(maxsize=None)
def _template(op: Op) -> Expr:
    return definition(op, Var("p"), Var("q"))


def evaluate(e: Expr, m: Ortholattice, env: dict, interp: int | None = None):
    """Evaluate ``e`` with variables bound to element indices (ints or arrays).

    Derived operators are computed from their defining join/meet/complement
    polynomials; merged operators are read as join_interp / meet_interp.
    """
    if not m.is_ortholattice:
        raise ModelError(f"model {m.name} is not an ortholattice")
    return _eval(e, m, env, interp)


def _eval(e, m, env, interp):
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise ModelError(f"unassigned variable {e.name!r}") from None
    if isinstance(e, Zero):
        return m.bottom
    if isinstance(e, One):
        return m.top
    if isinstance(e, Complement):
        return m.comp[_eval(e.child, m, env, interp)]
    x = _eval(e.left, m, env, interp)
    y = _eval(e.right, m, env, interp)
    op = e.op
    if op.merged:
        if interp is None:
            raise ModelError("merged operator needs an interpretation index")
        op = Op(JOIN if op.sym == MJOIN else MEET, interp)
    if op.index == 0 and op.sym == JOIN:
        return m.join[x, y]
    if op.index == 0 and op.sym == MEET:
        return m.meet[x, y]
    return _eval(_template(op), m, {"p": x, "q": y}, None)


def eval_model(e: Expr, m: Ortholattice, assignment: dict[str, str], interp: int | None = None) -> str:
    env = {v: m.index(x) for v, x in assignment.items()}
    return m.elements[int(evaluate(e, m, env, interp))]


# ---------- checking ----------

@dataclass
class CheckReport:
    condition: Condition
    model: str
    verdict: str
    counterexample: dict[str, str] | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def counterexample_text(self) -> str:
        if not self.counterexample:
            return "-"
        return ",".join(f"{k}={v}" for k, v in self.counterexample.items())

    def tsv(self, item=None) -> str:
        return "\t".join([item or str(self.condition), self.model, self.verdict,
                          self.counterexample_text()])


def assignments(m: Ortholattice, names):
    """Index arrays enumerating all assignments, first variable slowest."""
    n = len(m)
    if not names:
        return {}, 1
    grids = np.meshgrid(*[np.arange(n)] * len(names), indexing="ij")
    return {v: g.ravel() for v, g in zip(names, grids)}, n ** len(names)


def satisfied(c: Condition, m: Ortholattice, env: dict, interp=None):
    """Boolean mask over the assignments in ``env``."""
    def rel(r):
        lhs, rhs = r.equation()
        return np.asarray(_eval(lhs, m, env, interp) == _eval(rhs, m, env, interp))

    concl = rel(c.conclusion)
    hyp = np.ones_like(concl, dtype=bool)
    for h in c.hypotheses:
        hyp = hyp & rel(h)
    return hyp == concl if c.biconditional else ~hyp | concl


def check_condition(c: Condition, m: Ortholattice, interp: int | None = None) -> CheckReport:
    """Exhaustive check; reports the lexicographically first counterexample."""
    if not m.is_ortholattice:
        raise ModelError(f"model {m.name} is not an ortholattice")
    names = sorted(c.variables())
    env, total = assignments(m, names)
    ok = np.broadcast_to(satisfied(c, m, env, interp), (total,))
    if ok.all():
        return CheckReport(c, m.name, HOLDS)
    k = int(np.argmin(ok))
    return CheckReport(c, m.name, FAILS,
                       {v: m.elements[int(env[v][k])] for v in names})


def replay(report: CheckReport, m: Ortholattice, interp=None) -> bool:
    """Re-evaluate the condition at the reported counterexample; True if it fails there."""
    env = {v: m.index(x) for v, x in report.counterexample.items()}
    return not bool(satisfied(report.condition, m, env, interp))


def check_battery(c: Condition, names=OML_BATTERY, interp=None) -> list[CheckReport]:
    return [check_condition(c, builtin(n), interp) for n in names]


def all_pairs(m: Ortholattice):
    return itertools.product(range(len(m)), repeat=2)
