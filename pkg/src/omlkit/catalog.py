"""Fixed expression catalogues for the two-generator free OML.

``BOOLEAN_SEEDS[n]`` lies in class <n,5,5,5,5,5,5>; ``MO2_SEEDS[i][v]`` lies in
the class whose Boolean part is 15 and whose MO2 components are all 5 except
component ``i``, which is ``v``.

``BERAN_LISTING`` records, for a family of two-variable OML polynomials, the
Beran numbers (with generator substitutions) that name the same element, a
merged-operation form valid for every interpretation, and a join_1/meet_1 form.
"""
from __future__ import annotations

from dataclasses import dataclass, field

BOOLEAN_SEEDS = (
    "(((a & b) & (b & a')) | (((a' | b) & (b | a)) & ((a & b)' & (b' | a))))",
    "((a & b) | (((a' | b) & (b | a)) & ((b | a) & (a | b'))))",
    "((a & b') | (((a & b)' & (b | a)) & ((b' | a) & (a | b))))",
    "((b & a') | (((b & a)' & (a | b)) & ((a' | b) & (b | a))))",
    "((a | b) & (((a' & b) & (b | a)) | ((b & a) | (a & b'))))'",
    "(a | ((a & b) | (a' & ((b | a) & (a | b')))))",
    "(b | ((a & b) | (a' & ((b | a) & (a | b')))))",
    "((a & b) | ((a | b)' | ((a | b') & (a' | b))))",
    "((a & b') | ((a & (b & a))' & ((b | a) | b)))",
    "(b' | ((a | b)' | (a & ((b & a)' & (a | b)))))",
    "(a' | ((a | b)' | (((a | b) & (b & a)') & b)))",
    "(a | (b | (b' & (a | (a & b')))))",
    "(a | (b' | (b & (a | (a & b)))))",
    "(b | (a' | (a & (b | (b & a)))))",
    "((a & (b' & a)) | (a & (b & a))')",
    "1",
)

MO2_SEEDS = (
    (
        "((a & b) | ((a & b') | (a' & ((b | a)' | b))))",
        "(a | ((a' & b) | (b | a)'))",
        "(b | ((b' & a) | (a | b)'))",
        "(b' | ((b & a) | (a' & b)))",
        "(a' | ((a & b) | (b' & a)))",
    ),
    (
        "((a & (a' | b)) | ((a | (b | a')) & ((a & b)' | b)))",
        "(a | (a | ((b | a) | a')))",
        "(b | (a | (b & (b | a))'))",
        "(b' | (a | ((b & a) | b)))",
        "(a' | (b | ((a & b) | a)))",
    ),
    (
        "(((a | b) & b') | ((a | (a' | b)) & ((b | a) | b')))",
        "(a | (b | (b' | (b | a))))",
        "(a | (a' | ((a | b) & b)))",
        "(a | (a & ((a | b) & b))')",
        "(b | (b & ((b | a) & a))')",
    ),
    (
        "((a & (a | (b | a))) | (a | (a & (b | a)))')",
        "(a | (a' | (b | a)))",
        "(b | (b' | (a | b)))",
        "(b | (a | (a | b)'))",
        "(a | (b | (b | a)'))",
    ),
    (
        "((a & ((a | b) | a)) | (a | ((a | b) & a))')",
        "(a | ((a | b) | a'))",
        "(b | ((b | a) | b'))",
        "(a | ((a | b)' | b))",
        "(b | ((b | a)' | a))",
    ),
    (
        "((a | b) | (a & b)')",
        "(a | (a | (b | (b & a)')))",
        "(b | (a | ((a & b)' | b)))",
        "(b' | (b | (a | (a | b))))",
        "(a' | (a | (b | (b | a))))",
    ),
)


@dataclass(frozen=True)
class BeranRef:
    """Beran number ``number`` evaluated at (x, y), optionally complemented."""
    number: int
    x: str = "a"
    y: str = "b"
    primed: bool = False

    def __str__(self):
        x, y = self.x, self.y
        return f"{self.number}{chr(39) if self.primed else ''}[{x},{y}]"


def _refs(spec: str) -> tuple[BeranRef, ...]:
    """``"92 a b; 2' a b"`` -> BeranRefs."""
    out = []
    for item in spec.split(";"):
        num, x, y = item.split()
        primed = num.endswith("'")
        out.append(BeranRef(int(num.rstrip("'")), x, y, primed))
    return tuple(out)


@dataclass(frozen=True)
class BeranEntry:
    name: str
    definition: str
    refs: tuple[BeranRef, ...]
    merged: str | None = None
    quantum1: str | None = None
    aliases: tuple[str, ...] = field(default=())


BERAN_LISTING = (
    BeranEntry("1", "1", _refs("96 a b; 1' a b"), merged="1", aliases=("0'",)),
    BeranEntry("a", "a", _refs("22 a b; 75' a b; 39 b a; 58' b a"), merged="a"),
    BeranEntry(
        "a v b", "(a v b)",
        _refs("92 a b; 93 a b'; 94 a' b; 95 a' b'; 2' a b; 3' a b'; 4' a' b; 5' a' b'"),
        merged="(a | (b | (b' & (a | (a & b')))))",
        quantum1="(b v1 (b' ^1 a))",
        aliases=("(a' ^ b')'",),
    ),
    BeranEntry(
        "a ==0 b", "((b v a') ^ (b' v a))", _refs("88 a b; 9' a b"),
        # outer complement restored: without it the form evaluates to 9[a,b]
        merged="((a | b) & ((a & b)' & ((a & b') | (a' & b))))'",
        quantum1="((b' ^1 a') v1 (b ^1 a))",
        aliases=("(a == b)",),
    ),
    BeranEntry(
        "1_ab1", "(((a ^ b) v (a ^ b')) v ((a' ^ b) v (a' ^ b')))", _refs("16 a b; 81' a b"),
        merged="(((a | b) | (b | a')) & (((a' & b) | (b & a)) | ((a | b)' | (b' & a))))",
        quantum1="((a v1 (b v1 a')) ^1 (a' v1 (b v1 a)))",
    ),
    BeranEntry(
        "1_ab2", "((a v (a' ^ b)) v (a' ^ b'))",
        _refs("32 a b; 80 a' b'; 48 b a; 64 b' a'; 17' a' b'; 65' a b; 33' b' a'; 49' b a"),
        merged="(a | (((b | (a | b)') & (a | (a & b))') | a))",
        quantum1="(a v1 (b ^1 a)')",
    ),
    BeranEntry(
        "a_b1", "((a ^ b) v (a ^ b'))",
        _refs("6 a b; 7 b a; 10 b' a'; 11 a' b'; 86' a' b'; 87' b' a'; 90' b a; 91' a b"),
        merged="(a & ((a | b) & (a' | ((b & a) | (a & b')))))",
        quantum1="(a ^1 (a' v1 (b v1 a)))",
    ),
    BeranEntry(
        "a_b2", "((a v b) ^ (b' v (b ^ a)))",
        _refs("54 a b; 23 b' a; 26' b' a'; 38 a b'; 43' a' b'; 59' a b'; 71 b a; 74' b' a"),
        merged="((b' | (a | b')) & ((a & b) | (((b | a) | a) & b')))",
        quantum1="((b' ^1 a) v1 a)",
    ),
    BeranEntry(
        "a_b3", "(((a v b) ^ (a v b')) ^ ((a' v (a ^ b)) v (a ^ b')))",
        _refs("70 a b; 27 a' b'; 55 b a; 42 b' a'"),
        merged="((a' | (b | a)) & (((b & a) | (a & b')) | ((a | ((b | a) & b')) & a')))",
        quantum1="((a' ^1 (b' ^1 a)) v1 ((b' ^1 a) v1 a))",
    ),
    BeranEntry(
        "a ==1 b", "((a v b') ^ (a' v (a ^ b)))",
        _refs("72 a b; 73 a b'; 56 b a; 57 b a'"),
        merged="((a | (b | a))' | ((b' | a) & ((b & (a & b)) | a')))",
        quantum1="((a v1 b)' v1 (b ^1 a))",
        aliases=("(a ==1 b)", "(a' ==3 b')"),
    ),
    BeranEntry(
        "a ==2 b", "((a v b') ^ (b v (b' ^ a')))",
        _refs("40 a b; 41 a' b; 24 b a; 25 a b'"),
        merged="((b & (a & b)) | ((a | b') & (b | ((b | a)' | b))))",
        quantum1="((b ^1 a) v1 (a v1 (b v1 a))')",
        aliases=("(a ==2 b)", "(a' ==4 b')"),
    ),
    BeranEntry(
        "a ==5 b", "((b' ^ a') v (b ^ a))", _refs("8 a b; 89' a b"),
        merged="((a | b') & ((a | (b | a))' | ((b & a) & b)))",
        quantum1="((b v1 a') ^1 (b' v1 a))",
        aliases=("(a ==5 b)",),
    ),
    BeranEntry(
        "a v1 b", "(a v (a' ^ b))",
        _refs("28 a b; 29 a b'; 44 b a; 46 b a'; 61 b' a; 63 b' a'; 78 a' b; 79 a' b'; "
              "18' a' b'; 19' a' b; 34' b' a'; 36' b' a; 51' b a'; 53' b a; 68' a b'; 69' a b"),
        merged="(a | (b & (a | (a & b))'))",
        aliases=("(a v1 b)", "(b v2 a)", "(a' ^1 b')'", "(b' ^2 a')'"),
    ),
    BeranEntry(
        "a v3 b", "((a v b) ^ ((a' v (a ^ b')) v (a ^ b)))",
        _refs("76 a b; 30 a' b; 31 a' b'; 45 b' a; 47 b' a'; 60 b a; 62 b a'; 77 a b'; "
              "66' a' b'; 20' a b'; 21' a b; 35' b' a; 37' b a; 50' b' a'; 52' b' a; 67' a' b"),
        merged="((a' | (b | a)) & (((b & a) | (a & b')) | ((a | b) & a')))",
        quantum1="((a' ^1 b) v1 (b v1 a))",
        aliases=("(a v3 b)", "(b v4 a)", "(a' ^3 b')'", "(b' ^4 a')'"),
    ),
    BeranEntry(
        "a v5 b", "(((a ^ b) v (a ^ b')) v (a' ^ b))",
        _refs("12 a b; 13 a' b; 14 a' b'; 15 a b'; 82' a' b'; 83' a' b; 84' a b; 85' a b'"),
        merged="((a | b) & (((a' & b) & (b | a)) | ((b & a) | (a & b'))))",
        quantum1="((a v1 b) ^1 (a' v1 (b' v1 a)))",
        aliases=("(a v5 b)", "(a' ^5 b')'"),
    ),
)

# Septuples quoted for specific expressions (n_B, m0..m5).
SEPTUPLE_ANCHORS = (
    ("(a | b)", (11, 5, 1, 2, 4, 3, 0)),
    ("(((b' & a) & (a | b)) | ((a & b) | (b & a')))", (11, 0, 3, 4, 2, 1, 5)),
    ("0", (0, 0, 0, 0, 0, 0, 0)),
    ("1", (15, 5, 5, 5, 5, 5, 5)),
    ("a", (5, 1, 1, 1, 1, 1, 1)),
    ("b", (6, 2, 2, 2, 2, 2, 2)),
    ("a'", (10, 4, 4, 4, 4, 4, 4)),
    ("b'", (9, 3, 3, 3, 3, 3, 3)),
    ("(a & b)", (1, 0, 1, 2, 4, 3, 5)),
    ("(b & a)", (1, 0, 2, 1, 3, 4, 5)),
    ("(a & (b & a'))", (0, 0, 1, 0, 4, 1, 1)),
    ("((a & (b & (b | a))) | ((a' & ((b | a) & b)) | ((b | ((b | (a | b)) & a')) & b')))",
     (6, 3, 5, 5, 0, 3, 3)),
    ("(a | (b | (b' & (a | (a & b')))))", (11, 5, 5, 5, 5, 5, 5)),
    ("(a | (a' & b))", (11, 1, 5, 2, 1, 2, 5)),
    ("(b | (b' & a))", (11, 2, 5, 1, 2, 1, 5)),
    ("((a' & b) | a)", (11, 1, 5, 1, 1, 4, 5)),
    ("((b' & a) | b)", (11, 2, 5, 2, 2, 3, 5)),
)

# The cost-14 example quoted alongside the class-count table.
LONGEST_EXAMPLE = SEPTUPLE_ANCHORS[11][0]
