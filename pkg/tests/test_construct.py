import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from omlkit import catalog
from omlkit.construct import SeedError, construct_representative, dump_seeds, load_seeds
from omlkit.expr import occurrences, parse, to_text
from omlkit.freeoml import N_CLASSES, Septuple, classify


def test_seeds_load_and_validate():
    seeds = load_seeds()
    assert len(seeds.boolean) == 16 and all(len(row) == 5 for row in seeds.mo2)
    for nb, e in enumerate(seeds.boolean):
        assert classify(e) == Septuple(nb, (5,) * 6)
    assert to_text(seeds.boolean[15]) == "1"


def test_table3_examples():
    seeds = load_seeds()
    assert seeds.seed(3, 1) == parse("(a | (a' | (b | a)))")
    assert classify(seeds.seed(3, 1)) == Septuple(15, (5, 5, 5, 1, 5, 5))
    assert seeds.seed(0, 1) == parse("a | ((a' & b) | (b | a)')")


def test_bad_seed_aborts(monkeypatch):
    rows = [list(r) for r in catalog.MO2_SEEDS]
    rows[2][0], rows[2][1] = rows[2][1], rows[2][0]
    monkeypatch.setattr(catalog, "MO2_SEEDS", tuple(map(tuple, rows)))
    load_seeds.cache_clear()
    try:
        with pytest.raises(SeedError, match=r"\(2, 0\)"):
            load_seeds()
    finally:
        monkeypatch.undo()
        load_seeds.cache_clear()


def test_boolean_seed_unchanged():
    s = Septuple(11, (5,) * 6)
    assert construct_representative(s) == parse(catalog.BOOLEAN_SEEDS[11])


def test_zero_and_join():
    e = construct_representative(Septuple(0, (0,) * 6))
    assert classify(e) == classify("0")
    e = construct_representative(Septuple(11, (5, 1, 2, 4, 3, 0)))
    assert classify(e) == classify("(a | b)")


@given(st.integers(0, N_CLASSES - 1))
@settings(max_examples=300, deadline=None)
def test_roundtrip_property(cid):
    s = Septuple.from_id(cid)
    assert classify(construct_representative(s, verify=False)) == s


def test_left_associated_chain():
    s = Septuple(3, (0, 5, 2, 5, 5, 4))
    seeds = load_seeds()
    e = construct_representative(s)
    assert e.right == seeds.seed(5, 4)
    assert e.left.right == seeds.seed(2, 2)
    assert e.left.left.right == seeds.seed(0, 0)
    assert e.left.left.left == seeds.boolean[3]


def test_dump_seeds():
    lines = dump_seeds().splitlines()
    assert len(lines) == 16 + 30
    for line in lines:
        sept, text = line.split("\t")
        assert str(classify(text)) == sept


@pytest.mark.slow
def test_construction_never_shorter(full_table):
    ids = random.Random(3).sample(range(N_CLASSES), 3000)
    for cid in ids:
        e = construct_representative(Septuple.from_id(cid), verify=False)
        assert occurrences(e) >= full_table.cost[cid]
