"""Long-but-explicit representatives for any septuple.

Start from the Boolean seed of n_B (all MO2 parts 1) and meet it, left to
right, with one MO2 seed per position whose target is not 1.  Each seed is 1
everywhere except at its own position, and 1 is a unit for every meet_i, so
each step fixes exactly one component.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import catalog
from .expr import Expr, mmeet, parse, to_text
from .freeoml import Septuple, classify


class SeedError(ValueError):
    pass


@dataclass(frozen=True)
class SeedTables:
    boolean: tuple[Expr, ...]              # index n_B
    mo2: tuple[tuple[Expr, ...], ...]      # [position][value], value 0..4

    def seed(self, pos: int, value: int) -> Expr:
        return self.mo2[pos][value]


@lru_cache(maxsize=None)
def load_seeds() -> SeedTables:
    boolean = tuple(parse(s) for s in catalog.BOOLEAN_SEEDS)
    mo2 = tuple(tuple(parse(s) for s in row) for row in catalog.MO2_SEEDS)
    for nb, e in enumerate(boolean):
        want = Septuple(nb, (5,) * 6)
        got = classify(e)
        if got != want:
            raise SeedError(f"Boolean seed {nb} classifies as {got}, expected {want}: {to_text(e)}")
    for pos, row in enumerate(mo2):
        for v, e in enumerate(row):
            m = [5] * 6
            m[pos] = v
            want = Septuple(15, tuple(m))
            got = classify(e)
            if got != want:
                raise SeedError(f"MO2 seed ({pos}, {v}) classifies as {got}, expected {want}: "
                                f"{to_text(e)}")
    return SeedTables(boolean, mo2)


def construct_representative(s: Septuple, seeds: SeedTables | None = None,
                             verify: bool = True) -> Expr:
    seeds = seeds or load_seeds()
    e = seeds.boolean[s.nb]
    for pos, v in enumerate(s.m):
        if v != 5:
            e = mmeet(e, seeds.seed(pos, v))
    if verify:
        got = classify(e)
        if got != s:
            raise AssertionError(f"construction of {s} produced class {got}")
    return e


def dump_seeds(seeds: SeedTables | None = None) -> str:
    """TSV listing of every seed with its septuple."""
    seeds = seeds or load_seeds()
    lines = []
    for nb, e in enumerate(seeds.boolean):
        lines.append(f"{Septuple(nb, (5,) * 6)}\t{to_text(e)}")
    for pos, row in enumerate(seeds.mo2):
        for v, e in enumerate(row):
            m = [5] * 6
            m[pos] = v
            lines.append(f"{Septuple(15, tuple(m))}\t{to_text(e)}")
    return "\n".join(lines) + "\n"
