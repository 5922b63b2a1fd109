"""The free orthomodular lattice on two generators, F(a,b) = 2^4 x MO2.

Elements are packed as ``bits * 6 + m`` where ``bits`` is a 4-bit set of the
Boolean atoms (bit 0: a^b, 1: a^b', 2: a'^b, 3: a'^b') and ``m`` is the MO2
part in the order 0, x, y, y', x', 1.  The generators are a = ({ab, ab'}, x)
and b = ({ab, a'b}, y).

Beran numbers are 16 * n_M + n_B + 1.  n_M is the MO2 code; n_B is fitted by
evaluating ``catalog.BOOLEAN_SEEDS`` classically, then checked against anchors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import catalog
from .expr import (BICOND, IMPL, JOIN, MEET, MJOIN, Binary, Complement, Condition, Expr, One,
                   Op, Var, Zero, join, neg, parse, variables)
from .models import FAILS, HOLDS, CheckReport, Ortholattice, builtin, check_condition, evaluate

N_ELEM = 96
N_CLASSES = 16 * 6 ** 6
BITS_A, BITS_B = 0b0011, 0b0101
MO2_NAMES = ("0", "x", "y", "y'", "x'", "1")


class CalibrationError(RuntimeError):
    pass


def mo2_join(p: int, q: int) -> int:
    if p == q or q == 0:
        return p
    if p == 0:
        return q
    return 5  # two distinct atoms, or anything with 1


def pack(bits: int, m: int) -> int:
    return bits * 6 + m


def unpack(e: int) -> tuple[int, int]:
    return divmod(int(e), 6)


def free_lattice() -> Ortholattice:
    """F(a,b) as a validated ortholattice with provisional element names."""
    ids = range(N_ELEM)
    names = [f"{bits:04b}.{MO2_NAMES[m]}" for bits, m in map(unpack, ids)]
    comp = [pack(15 ^ bits, 5 - m) for bits, m in map(unpack, ids)]
    leq = np.zeros((N_ELEM, N_ELEM), dtype=bool)
    for x in ids:
        bx, mx = unpack(x)
        for y in ids:
            by, my = unpack(y)
            leq[x, y] = (bx & by) == bx and mo2_join(mx, my) == my
    return Ortholattice.from_order("F(a,b)", names, comp, leq)


@dataclass(eq=False)
class OpTables:
    lattice: Ortholattice
    join: np.ndarray        # (6, 96, 96), index 0 is the classical join
    meet: np.ndarray
    impl: np.ndarray
    bicond: np.ndarray
    comp: np.ndarray        # (96,)
    nb: np.ndarray          # (96,) Boolean label 0..15
    nm: np.ndarray          # (96,) MO2 code 0..5
    beran: np.ndarray       # (96,) 1..96
    label_of_bits: np.ndarray
    bits_of_label: np.ndarray
    terms: dict = field(default_factory=dict, repr=False)   # Beran number -> classical Expr
    a: int = pack(BITS_A, 1)
    b: int = pack(BITS_B, 2)
    zero: int = pack(0, 0)
    one: int = pack(15, 5)

    def __post_init__(self):
        # plain lists for the scalar evaluators; much faster than numpy scalars
        self._join = self.join.tolist()
        self._meet = self.meet.tolist()
        self._impl = self.impl.tolist()
        self._bicond = self.bicond.tolist()
        self._comp = self.comp.tolist()
        self._by_beran = {int(k): e for e, k in enumerate(self.beran)}

    def element(self, beran: int) -> int:
        return self._by_beran[beran]

    def name(self, e: int) -> str:
        return f"B{int(self.beran[e])}"

    def table(self, sym: str):
        return {JOIN: self._join, MEET: self._meet, IMPL: self._impl, BICOND: self._bicond}[sym]

    def mo2_join_table(self, i: int) -> np.ndarray:
        """join_i restricted to the MO2 part (Boolean parts are irrelevant)."""
        ids = np.arange(6)
        return self.join[i][np.ix_(pack(15, ids), pack(15, ids))] % 6

    def label(self, e: int) -> tuple[int, int]:
        return int(self.nb[e]), int(self.nm[e])


def _op_tables(lat: Ortholattice):
    x, y = np.meshgrid(np.arange(N_ELEM), np.arange(N_ELEM), indexing="ij")
    env = {"a": x, "b": y}
    out = {}
    for sym in (JOIN, MEET, IMPL, BICOND):
        out[sym] = np.stack([evaluate(Binary(Op(sym, i), Var("a"), Var("b")), lat, env)
                             for i in range(6)]).astype(np.int64)
    return out


BOOLEAN_ANCHORS = (("0", 0), ("a", 5), ("b", 6), ("b'", 9), ("a'", 10), ("1", 15),
                   ("(a ^ b)", 1), ("(a v b)", 11))
ELEMENT_ANCHORS = (("0", 1), ("1", 96), ("a", 22), ("b", 39), ("a'", 75), ("b'", 58),
                   ("(a v b)", 92), ("(a v1 b)", 28))


def _calibrate(lat, ops):
    comp = lat.comp
    env = {"a": pack(BITS_A, 1), "b": pack(BITS_B, 2)}
    label_of_bits = np.full(16, -1)
    for n, text in enumerate(catalog.BOOLEAN_SEEDS):
        bits, m = unpack(evaluate(parse(text), lat, env, 0))
        if m != 5:
            raise CalibrationError(f"Boolean seed {n} has MO2 part {MO2_NAMES[m]}, expected 1")
        if label_of_bits[bits] != -1:
            raise CalibrationError(f"Boolean seeds {label_of_bits[bits]} and {n} coincide")
        label_of_bits[bits] = n
    for text, want in BOOLEAN_ANCHORS:
        bits, _ = unpack(evaluate(parse(text), lat, env, 0))
        if label_of_bits[bits] != want:
            raise CalibrationError(f"anchor {text}: Boolean label {label_of_bits[bits]}, expected {want}")
    ids = np.arange(N_ELEM)
    nb = label_of_bits[ids // 6]
    nm = ids % 6
    beran = 16 * nm + nb + 1
    for text, want in ELEMENT_ANCHORS:
        got = int(beran[evaluate(parse(text), lat, env, 0)])
        if got != want:
            raise CalibrationError(f"anchor {text}: Beran {got}, expected {want}")
    assert sorted(beran.tolist()) == list(range(1, 97))
    bits_of_label = np.argsort(label_of_bits)
    return nb, nm, beran, label_of_bits, bits_of_label


def _beran_terms(t: OpTables) -> dict[int, Expr]:
    """Shortest classical term (join and complement only) for every element."""
    terms = {t.a: Var("a"), t.b: Var("b")}
    frontier = dict(terms)
    while len(terms) < N_ELEM and frontier:
        new = {}
        for x, ex in list(frontier.items()):
            cx = t._comp[x]
            if cx not in terms and cx not in new:
                new[cx] = neg(ex)
            for y, ey in list(terms.items()):
                for p, q, ep, eq in ((x, y, ex, ey), (y, x, ey, ex)):
                    z = t._join[0][p][q]
                    if z not in terms and z not in new:
                        new[z] = join(ep, eq)
        terms.update(new)
        frontier = new
    if len(terms) != N_ELEM:
        raise CalibrationError("generators do not reach every element")
    return {int(t.beran[e]): ex for e, ex in terms.items()}


@lru_cache(maxsize=None)
def build_tables() -> OpTables:
    lat = free_lattice()
    ops = _op_tables(lat)
    nb, nm, beran, lob, bol = _calibrate(lat, ops)
    lat.elements = tuple(f"B{k}" for k in beran)
    t = OpTables(lat, ops[JOIN], ops[MEET], ops[IMPL], ops[BICOND], lat.comp.copy(),
                 nb, nm, beran, lob, bol)
    t.terms.update(_beran_terms(t))
    for arr in (t.join, t.meet, t.impl, t.bicond, t.comp, t.nb, t.nm, t.beran):
        arr.setflags(write=False)
    return t


# ---------- evaluation ----------

def eval_free(e: Expr, i: int = 0, tables: OpTables | None = None, assignment=None) -> int:
    """Evaluate with merged ops read as join_i/meet_i.  Default assignment a->a, b->b."""
    t = tables or build_tables()
    env = {"a": t.a, "b": t.b} if assignment is None else assignment
    return _ev(e, i, t, env)


def _ev(e, i, t, env):
    if isinstance(e, Binary):
        x = _ev(e.left, i, t, env)
        y = _ev(e.right, i, t, env)
        op = e.op
        if op.merged:
            return (t._join if op.sym == MJOIN else t._meet)[i][x][y]
        return t.table(op.sym)[op.index][x][y]
    if isinstance(e, Complement):
        return t._comp[_ev(e.child, i, t, env)]
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise KeyError(f"unassigned variable {e.name!r}") from None
    if isinstance(e, Zero):
        return t.zero
    if isinstance(e, One):
        return t.one
    raise TypeError(f"not an expression: {e!r}")


def _ev6(e, t, env):
    """All six interpretations at once; returns a tuple of element ids."""
    if isinstance(e, Binary):
        xs = _ev6(e.left, t, env)
        ys = _ev6(e.right, t, env)
        op = e.op
        if op.merged:
            tab = t._join if op.sym == MJOIN else t._meet
            return tuple(tab[i][x][y] for i, x, y in zip(range(6), xs, ys))
        tab = t.table(op.sym)[op.index]
        return tuple(tab[x][y] for x, y in zip(xs, ys))
    if isinstance(e, Complement):
        c = t._comp
        return tuple(c[x] for x in _ev6(e.child, t, env))
    if isinstance(e, Var):
        try:
            return (env[e.name],) * 6
        except KeyError:
            raise KeyError(f"unassigned variable {e.name!r}") from None
    if isinstance(e, Zero):
        return (t.zero,) * 6
    if isinstance(e, One):
        return (t.one,) * 6
    raise TypeError(f"not an expression: {e!r}")


@dataclass(frozen=True, order=True)
class Septuple:
    nb: int
    m: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.nb < 16 or len(self.m) != 6 or not all(0 <= v < 6 for v in self.m):
            raise ValueError(f"not a septuple: {self.nb}, {self.m}")

    @property
    def class_id(self) -> int:
        k = 0
        for v in self.m:
            k = k * 6 + v
        return self.nb * 6 ** 6 + k

    @classmethod
    def from_id(cls, k: int) -> "Septuple":
        if not 0 <= k < N_CLASSES:
            raise ValueError(f"class id {k} out of range")
        nb, rest = divmod(int(k), 6 ** 6)
        m = []
        for _ in range(6):
            rest, v = divmod(rest, 6)
            m.append(v)
        return cls(nb, tuple(reversed(m)))

    @classmethod
    def parse(cls, text: str) -> "Septuple":
        parts = text.strip().strip("<>()").replace(",", " ").split()
        if len(parts) != 7:
            raise ValueError(f"septuple needs 7 numbers: {text!r}")
        nb, *m = map(int, parts)
        return cls(nb, tuple(m))

    def astuple(self):
        return (self.nb, *self.m)

    @property
    def beran(self) -> int | None:
        """Beran number when all six MO2 parts agree."""
        if len(set(self.m)) == 1:
            return 16 * self.m[0] + self.nb + 1
        return None

    def __str__(self):
        return ",".join(map(str, self.astuple()))


class InvariantError(AssertionError):
    pass


def classify(e: Expr | str, tables: OpTables | None = None) -> Septuple:
    t = tables or build_tables()
    if isinstance(e, str):
        e = parse(e)
    extra = variables(e) - {"a", "b"}
    if extra:
        raise ValueError(f"classify works over a, b only; found {', '.join(sorted(extra))}")
    vals = _ev6(e, t, {"a": t.a, "b": t.b})
    nbs = {int(t.nb[v]) for v in vals}
    if len(nbs) != 1:
        raise InvariantError(f"Boolean parts differ across interpretations for {e}")
    return Septuple(nbs.pop(), tuple(int(t.nm[v]) for v in vals))


# ---------- Beran substitution ----------

def beran_value(ref: catalog.BeranRef, tables: OpTables | None = None) -> int:
    """Element named by Beran number ``ref.number`` at a -> x, b -> y."""
    t = tables or build_tables()
    gens = {"a": t.a, "b": t.b, "a'": t._comp[t.a], "b'": t._comp[t.b]}
    env = {"a": gens[ref.x], "b": gens[ref.y]}
    v = _ev(t.terms[ref.number], 0, t, env)
    return t._comp[v] if ref.primed else v


@dataclass
class ListingMismatch:
    entry: str
    form: str
    got: str
    want: str

    def __str__(self):
        return f"{self.entry}: {self.form} gives {self.got}, expected {self.want}"


def check_beran_listing(tables: OpTables | None = None, entries=catalog.BERAN_LISTING):
    """Every reference, alias and merged form must name the definition's element."""
    t = tables or build_tables()
    bad = []
    for ent in entries:
        want = eval_free(parse(ent.definition), 0, t)
        forms = [(str(r), beran_value(r, t)) for r in ent.refs]
        forms += [(a, eval_free(parse(a), 0, t)) for a in ent.aliases]
        if ent.quantum1:
            forms.append((ent.quantum1, eval_free(parse(ent.quantum1), 0, t)))
        if ent.merged:
            forms += [(f"{ent.merged} @{i}", eval_free(parse(ent.merged), i, t)) for i in range(6)]
        for form, got in forms:
            if got != want:
                bad.append(ListingMismatch(ent.name, form, t.name(got), t.name(want)))
    return bad


# ---------- two-variable decision procedures ----------

def _generator_env(names, t):
    if len(names) > 2:
        raise ValueError(f"{len(names)} variables; the free-algebra check is only complete "
                         "for two (use model-battery checking instead)")
    names = sorted(names)
    if set(names) <= {"a", "b"}:
        return {"a": t.a, "b": t.b}
    return dict(zip(names, (t.a, t.b)))


def failing_interpretations(lhs: Expr, rhs: Expr, iset=range(6), tables=None) -> list[int]:
    t = tables or build_tables()
    env = _generator_env(variables(lhs) | variables(rhs), t)
    return [i for i in iset if _ev(lhs, i, t, env) != _ev(rhs, i, t, env)]


def check_identity_all_oml(lhs: Expr, rhs: Expr, iset=range(6), tables=None) -> str:
    """HOLDS iff lhs = rhs in every OML, for every chosen reading of the merged ops."""
    return FAILS if failing_interpretations(lhs, rhs, iset, tables) else HOLDS


ALL_OML = "OML"


def check_quasi_2var(c: Condition, interp: int | None = None) -> CheckReport:
    """Valid in all OMLs iff valid in bool2 and MO2 (the two subdirectly irreducible factors)."""
    names = c.variables()
    if len(names) > 2:
        raise ValueError(f"{len(names)} variables; the two-factor check is only complete for two "
                         "(use model-battery checking instead)")
    for m in ("bool2", "mo2"):
        rep = check_condition(c, builtin(m), interp)
        if not rep.holds:
            return rep
    return CheckReport(c, ALL_OML, HOLDS)
