"""Lattice terms: AST, text grammar, canonical printing, definitional expansion.

Binary operators never associate on their own; every binary node is written
inside its own pair of parentheses.  Complement is a postfix ``'``.

Operator spellings (``D`` is a digit 0..5)::

    v D   join_i        ^ D   meet_i       -> D   impl_i     == D   bicond_i
    |     merged join   &     merged meet

A bare ``v``/``^``/``->``/``==`` means index 0, and ``|D``/``&D`` are accepted
as aliases for ``vD``/``^D``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

JOIN, MEET, IMPL, BICOND = "v", "^", "->", "=="
MJOIN, MMEET = "|", "&"
INDEXED = (JOIN, MEET, IMPL, BICOND)
MERGED = (MJOIN, MMEET)


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Op:
    sym: str
    index: int | None = None

    def __post_init__(self):
        if self.sym in MERGED:
            if self.index is not None:
                raise ValueError(f"merged operator {self.sym!r} takes no index")
        elif self.sym in INDEXED:
            if self.index not in range(6):
                raise ValueError(f"operator index must be 0..5, got {self.index!r}")
        else:
            raise ValueError(f"unknown operator {self.sym!r}")

    @property
    def merged(self) -> bool:
        return self.sym in MERGED

    def __str__(self):
        if self.merged:
            return self.sym
        return self.sym if self.index == 0 else f"{self.sym}{self.index}"


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class One:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if len(self.name) != 1 or not ("a" <= self.name <= "z"):
            raise ValueError(f"variable must be a single letter a..z, got {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Complement:
    child: "Expr"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Binary:
    op: Op
    left: "Expr"
    right: "Expr"

    def __str__(self):
        return to_text(self)


Expr = Union[Zero, One, Var, Complement, Binary]

ZERO, ONE = Zero(), One()


# ---------- constructors ----------

def neg(e: Expr) -> Expr:
    """Complement, cancelling an existing outer complement."""
    return e.child if isinstance(e, Complement) else Complement(e)


def join(x, y, i=0):
    return Binary(Op(JOIN, i), x, y)


def meet(x, y, i=0):
    return Binary(Op(MEET, i), x, y)


def impl(x, y, i=0):
    return Binary(Op(IMPL, i), x, y)


def mjoin(x, y):
    return Binary(Op(MJOIN), x, y)


def mmeet(x, y):
    return Binary(Op(MMEET), x, y)


# ---------- printing ----------

def to_text(e: Expr) -> str:
    """Canonical, fully parenthesized text; ``parse(to_text(e)) == e``."""
    parts: list[str] = []

    def go(e):
        if isinstance(e, Binary):
            parts.append("(")
            go(e.left)
            parts.append(f" {e.op} ")
            go(e.right)
            parts.append(")")
        elif isinstance(e, Complement):
            go(e.child)
            parts.append("'")
        else:
            parts.append(str(e))

    go(e)
    return "".join(parts)


# ---------- parsing ----------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message, offset=None):
        raise ParseError(message, self.pos if offset is None else offset)

    def expr(self) -> Expr:
        c = self.peek()
        if c == "(":
            start = self.pos
            self.pos += 1
            first = self.expr()
            if self.peek() == ")":
                self.pos += 1
                node = first
            else:
                op = self.binop()
                if op is None:
                    if self.peek() == "":
                        self.fail("unbalanced parentheses: missing ')'", start)
                    self.fail(f"expected operator or ')', got {self.peek()!r}")
                second = self.expr()
                nxt = self.peek()
                if nxt != ")":
                    if nxt == "":
                        self.fail("unbalanced parentheses: missing ')'", start)
                    if self.binop(probe=True) is not None:
                        self.fail("missing parentheses: chained binary operators need explicit grouping")
                    self.fail(f"expected ')', got {nxt!r}")
                self.pos += 1
                node = Binary(op, first, second)
        elif c == "0":
            self.pos += 1
            node = ZERO
        elif c == "1":
            self.pos += 1
            node = ONE
        elif c and "a" <= c <= "z":
            self.pos += 1
            node = Var(c)
        elif c == "":
            self.fail("unexpected end of input")
        elif c == ")":
            self.fail("unbalanced parentheses: unexpected ')'")
        else:
            self.fail(f"unexpected character {c!r}")
        while self.peek() == "'":
            self.pos += 1
            node = Complement(node)
        return node

    def binop(self, probe=False) -> Op | None:
        self.skip()
        t, p = self.text, self.pos
        for sym, spelled in ((IMPL, "->"), (BICOND, "=="), (JOIN, "v"), (MEET, "^"),
                             (MJOIN, "|"), (MMEET, "&")):
            if not t.startswith(spelled, p):
                continue
            q = p + len(spelled)
            digit = t[q] if q < len(t) and t[q].isdigit() else None
            if probe:
                return Op(MJOIN)
            if digit is None:
                op = Op(sym) if sym in MERGED else Op(sym, 0)
            else:
                if int(digit) > 5 or (q + 1 < len(t) and t[q + 1].isdigit()):
                    self.fail(f"unknown operator index {t[p:q + 1]!r}", p)
                base = {MJOIN: JOIN, MMEET: MEET}.get(sym, sym)
                op = Op(base, int(digit))
                q += 1
            self.pos = q
            return op
        return None


def parse(text: str) -> Expr:
    """Parse one expression.  A single outermost binary may omit its parentheses."""
    p = _Parser(text)
    e = p.expr()
    if p.peek() not in ("", ")", "'"):
        op = p.binop()
        if op is not None:
            e = Binary(op, e, p.expr())
            if p.peek() != "" and p.binop(probe=True) is not None:
                p.fail("missing parentheses: chained binary operators need explicit grouping")
    if p.peek() != "":
        if p.peek() == ")":
            p.fail("unbalanced parentheses: unexpected ')'")
        p.fail(f"trailing input {p.peek()!r}")
    return e


# ---------- inspection ----------

def occurrences(e: Expr) -> int:
    """Number of variable leaves."""
    if isinstance(e, Var):
        return 1
    if isinstance(e, Complement):
        return occurrences(e.child)
    if isinstance(e, Binary):
        return occurrences(e.left) + occurrences(e.right)
    return 0


def size(e: Expr) -> int:
    """Total number of AST nodes."""
    if isinstance(e, Complement):
        return 1 + size(e.child)
    if isinstance(e, Binary):
        return 1 + size(e.left) + size(e.right)
    return 1


def variables(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Complement):
        return variables(e.child)
    if isinstance(e, Binary):
        return variables(e.left) | variables(e.right)
    return set()


def has_merged(e: Expr) -> bool:
    if isinstance(e, Complement):
        return has_merged(e.child)
    if isinstance(e, Binary):
        return e.op.merged or has_merged(e.left) or has_merged(e.right)
    return False


def substitute(e: Expr, env: dict[str, Expr]) -> Expr:
    if isinstance(e, Var):
        return env.get(e.name, e)
    if isinstance(e, Complement):
        return Complement(substitute(e.child, env))
    if isinstance(e, Binary):
        return Binary(e.op, substitute(e.left, env), substitute(e.right, env))
    return e


def interpret_merged(e: Expr, i: int) -> Expr:
    """Replace merged join/meet by join_i/meet_i."""
    if isinstance(e, Complement):
        return Complement(interpret_merged(e.child, i))
    if isinstance(e, Binary):
        op = e.op
        if op.sym == MJOIN:
            op = Op(JOIN, i)
        elif op.sym == MMEET:
            op = Op(MEET, i)
        return Binary(op, interpret_merged(e.left, i), interpret_merged(e.right, i))
    return e


# ---------- definitions of the derived operations ----------

def _impl_def(i: int, a: Expr, b: Expr) -> Expr:
    if i == 0:
        return join(neg(a), b)
    if i == 1:
        return join(neg(a), meet(a, b))
    if i == 2:
        return _impl_def(1, neg(b), neg(a))
    if i == 3:
        return join(join(meet(neg(a), b), meet(neg(a), neg(b))),
                    meet(a, join(neg(a), b)))
    if i == 4:
        return _impl_def(3, neg(b), neg(a))
    return join(join(meet(a, b), meet(neg(a), b)), meet(neg(a), neg(b)))


def _join_def(i: int, a: Expr, b: Expr) -> Expr:
    if i == 0:
        return join(a, b)
    if i == 5:
        # a' ->5 b with its classical joins reassociated (equal in every lattice)
        return join(join(meet(a, b), meet(a, neg(b))), meet(neg(a), b))
    return _impl_def(i, neg(a), b)


def _meet_def(i: int, a: Expr, b: Expr) -> Expr:
    if i == 0:
        return meet(a, b)
    return neg(_impl_def(i, a, neg(b)))


def _bicond_def(i: int, a: Expr, b: Expr) -> Expr:
    if i == 0:
        return meet(join(b, neg(a)), join(neg(b), a))
    if i == 1:
        return meet(join(a, neg(b)), join(neg(a), meet(a, b)))
    if i == 2:
        return meet(join(a, neg(b)), join(b, meet(neg(b), neg(a))))
    if i == 3:
        return _bicond_def(1, neg(a), neg(b))
    if i == 4:
        return _bicond_def(2, neg(a), neg(b))
    return join(meet(neg(b), neg(a)), meet(b, a))


DEFINITIONS: dict[str, Callable[[int, Expr, Expr], Expr]] = {
    JOIN: _join_def, MEET: _meet_def, IMPL: _impl_def, BICOND: _bicond_def,
}


def definition(op: Op, a: Expr, b: Expr) -> Expr:
    """One-step unfolding of ``(a op b)`` into join_0/meet_0/complement."""
    if op.merged:
        raise ValueError("merged operators have no fixed definition; interpret them first")
    return DEFINITIONS[op.sym](op.index, a, b)


def expand(e: Expr, meets: bool = True) -> Expr:
    """Rewrite every derived operator into 0, 1, variables, ', join_0, meet_0.

    With ``meets=False`` meet_0 is further reduced to ``(x' v y')'``.
    """
    if isinstance(e, Complement):
        return Complement(expand(e.child, meets))
    if not isinstance(e, Binary):
        return e
    if e.op.merged:
        raise ValueError(f"cannot expand merged operator {e.op.sym!r}")
    a, b = expand(e.left, meets), expand(e.right, meets)
    if e.op.sym == JOIN and e.op.index == 0:
        return join(a, b)
    if e.op.sym == MEET and e.op.index == 0:
        return meet(a, b) if meets else Complement(join(neg(a), neg(b)))
    return expand(definition(e.op, a, b), meets)


# ---------- relations and conditions ----------

EQ, LE, CUP_PLUS, CUP_MINUS, CAP_PLUS, CAP_MINUS = "=", "<=", "u+", "u-", "n+", "n-"
# admissible indices of the quantum orderings
ORDER_INDICES = {
    CUP_PLUS: (1, 3, 4, 5),
    CUP_MINUS: (2, 3, 4, 5),
    CAP_PLUS: (1, 3, 4, 5),
    CAP_MINUS: (2, 3, 4, 5),
}


@dataclass(frozen=True)
class Relation:
    kind: str
    lhs: Expr
    rhs: Expr
    index: int | None = None

    def __post_init__(self):
        if self.kind in (EQ, LE):
            if self.index is not None:
                raise ValueError(f"relation {self.kind!r} takes no index")
        elif self.kind in ORDER_INDICES:
            if self.index not in ORDER_INDICES[self.kind]:
                raise ValueError(f"ordering <={self.kind[0]}{self.index}{self.kind[1]} is not defined; "
                                 f"allowed indices {ORDER_INDICES[self.kind]}")
        else:
            raise ValueError(f"unknown relation kind {self.kind!r}")

    def equation(self) -> tuple[Expr, Expr]:
        """The equation whose truth defines the relation."""
        x, y, i = self.lhs, self.rhs, self.index
        if self.kind == EQ:
            return x, y
        if self.kind == LE:
            return join(x, y), y
        if self.kind == CUP_PLUS:
            return join(x, y, i), y
        if self.kind == CUP_MINUS:
            return join(y, x, i), y
        # the meet orderings are oriented so that each admissible index gives a
        # partial order; with the other orientation index 1 (resp. 2) of the
        # "+" (resp. "-") form is not antisymmetric in MO2
        if self.kind == CAP_PLUS:
            return meet(y, x, i), x
        return meet(x, y, i), x

    @property
    def symbol(self) -> str:
        if self.kind in (EQ, LE):
            return self.kind
        return f"<={self.kind[0]}{self.index}{self.kind[1]}"

    def variables(self) -> set[str]:
        return variables(self.lhs) | variables(self.rhs)

    def __str__(self):
        return f"{to_text(self.lhs)} {self.symbol} {to_text(self.rhs)}"


def ordering(kind: str, x: Expr, y: Expr, i: int | None = None) -> Relation:
    return Relation(kind, x, y, i)


@dataclass(frozen=True)
class Condition:
    hypotheses: tuple[Relation, ...]
    conclusion: Relation
    biconditional: bool = False

    def __post_init__(self):
        if self.biconditional and len(self.hypotheses) != 1:
            raise ValueError("a biconditional needs exactly one relation on each side")

    def variables(self) -> set[str]:
        out = set(self.conclusion.variables())
        for h in self.hypotheses:
            out |= h.variables()
        return out

    def __str__(self):
        if self.biconditional:
            return f"{self.hypotheses[0]} <=> {self.conclusion}"
        if not self.hypotheses:
            return str(self.conclusion)
        return " & ".join(map(str, self.hypotheses)) + " => " + str(self.conclusion)


def identity(lhs: Expr, rhs: Expr) -> Condition:
    return Condition((), Relation(EQ, lhs, rhs))


def implies(hyps, concl: Relation) -> Condition:
    return Condition(tuple(hyps), concl)


def iff(left: Relation, right: Relation) -> Condition:
    return Condition((left,), right, biconditional=True)


def _split_top(text: str):
    """Split at depth-0 relation/connective tokens -> list of (kind, start, end)."""
    out = []
    depth, k = 0, 0
    while k < len(text):
        c = text[k]
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses: unexpected ')'", k)
        elif depth == 0:
            if text.startswith("<=>", k):
                out.append(("<=>", k, k + 3))
                k += 3
                continue
            if text.startswith("=>", k):
                out.append(("=>", k, k + 2))
                k += 2
                continue
            if text.startswith("<=", k):
                q = k + 2
                if q < len(text) and text[q] in "un":
                    if q + 2 >= len(text) or not text[q + 1].isdigit() or text[q + 2] not in "+-":
                        raise ParseError("malformed quantum ordering; expected <=uD+ / <=nD-", k)
                    out.append((f"<={text[q:q + 3]}", k, q + 3))
                    k = q + 3
                    continue
                out.append(("<=", k, k + 2))
                k += 2
                continue
            if c == "=":
                out.append(("=", k, k + 1))
            elif c == "&":
                out.append(("&", k, k + 1))
        k += 1
    if depth > 0:
        raise ParseError("unbalanced parentheses: missing ')'", len(text))
    return out


def _parse_at(text: str, start: int, end: int) -> Expr:
    try:
        return parse(text[start:end])
    except ParseError as err:
        raise ParseError(str(err).rsplit(" at offset", 1)[0], start + err.offset) from None


def _relation_from(text, start, end, tokens) -> Relation:
    rel = [t for t in tokens if t[0] not in ("&", "=>", "<=>")]
    if len(rel) != 1:
        raise ParseError("expected exactly one relation symbol", start)
    sym, s, e = rel[0]
    lhs, rhs = _parse_at(text, start, s), _parse_at(text, e, end)
    if sym == "=":
        return Relation(EQ, lhs, rhs)
    if sym == "<=":
        return Relation(LE, lhs, rhs)
    kind = sym[2] + sym[4]
    try:
        return Relation(kind, lhs, rhs, int(sym[3]))
    except ValueError as err:
        raise ParseError(str(err), s) from None


def parse_relation(text: str) -> Relation:
    return _relation_from(text, 0, len(text), _split_top(text))


def parse_condition(text: str) -> Condition:
    """``R``, ``R1 & R2 => R3`` or ``R1 <=> R2``."""
    tokens = _split_top(text)
    arrows = [t for t in tokens if t[0] in ("=>", "<=>")]
    if len(arrows) > 1:
        raise ParseError("more than one '=>'/'<=>'", arrows[1][1])

    def relations(start, end):
        seps = [t for t in tokens if t[0] == "&" and start <= t[1] < end]
        bounds = [start] + [x for t in seps for x in (t[1], t[2])] + [end]
        out = []
        for s, e in zip(bounds[::2], bounds[1::2]):
            inner = [t for t in tokens if s <= t[1] < e]
            out.append(_relation_from(text, s, e, inner))
        return out

    if not arrows:
        rels = relations(0, len(text))
        if len(rels) != 1:
            raise ParseError("hypotheses without '=>'", 0)
        return Condition((), rels[0])
    kind, s, e = arrows[0]
    left, right = relations(0, s), relations(e, len(text))
    if len(right) != 1:
        raise ParseError("conclusion must be a single relation", e)
    if kind == "<=>":
        if len(left) != 1:
            raise ParseError("'<=>' needs a single relation on the left", 0)
        return iff(left[0], right[0])
    return Condition(tuple(left), right[0])


def parse_conditions(text: str) -> list[Condition]:
    """One condition per line; blank lines and ``#`` comments ignored."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_condition(line))
    return out
