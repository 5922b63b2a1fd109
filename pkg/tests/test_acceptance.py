"""Acceptance criteria 1-10, one test each, at their stated tolerances."""
import os
import random

import numpy as np
import pytest

from omlkit import battery, catalog
from omlkit.battery import FAILS, HOLDS
from omlkit.cli import main
from omlkit.construct import construct_representative, load_seeds
from omlkit.freeoml import N_CLASSES, Septuple, check_beran_listing, classify
from omlkit.search import TABLE1, extract_subalgebra

import oracle
from conftest import record

pytestmark = pytest.mark.slow


def _items(*groups):
    items = []
    for g in groups:
        g(items)
    return items


def _failed(items):
    return [it.tsv() for it in items if not it.passed]


def test_c01_table1(full_table):
    hist = full_table.histogram()
    ok = full_table.complete and hist == list(TABLE1) and sum(hist) == N_CLASSES
    record(1, ok, f"per-cost counts {hist}, total {sum(hist)}")
    assert hist == list(TABLE1)
    assert full_table.complete and sum(hist) == 746496


def test_c02_beran_listing():
    bad = check_beran_listing()
    record(2, not bad, f"{len(bad)} Beran listing mismatches"
           + ("" if not bad else ": " + "; ".join(map(str, bad))))
    assert bad == [], "\n".join(map(str, bad))


def test_c03_septuple_anchors(full_table):
    wrong = [(text, str(classify(text))) for text, want in catalog.SEPTUPLE_ANCHORS
             if classify(text).astuple() != tuple(want)]
    long_cost = int(full_table.cost[Septuple(6, (3, 5, 5, 0, 3, 3)).class_id])
    record(3, not wrong and long_cost == 14,
           f"{len(catalog.SEPTUPLE_ANCHORS)} anchors, {len(wrong)} wrong; cost of <6,3,5,5,0,3,3> = {long_cost}")
    assert wrong == []
    assert long_cost == 14


def test_c04_ol_conditions():
    items = _items(battery.ol_positive, battery.ol4_pattern)
    ol4 = [it for it in items if it.group == "OL4 pattern"]
    # the four stated i=1,2 clauses, checked in MO2: two hold, two fail
    stated = [it for it in ol4 if "in mo2" in it.name and (" v1 " in it.name or " v2 " in it.name)]
    negatives = [it for it in ol4 if it.expected == FAILS]
    bad = _failed(items)
    record(4, not bad and len(stated) == 4,
           f"{len(items)} items ({len(stated)} stated i=1,2 OL4 clauses in MO2, "
           f"{len(negatives)} required failures), {len(bad)} disagree")
    assert bad == []
    assert len(stated) == 4 and sorted(it.observed for it in stated) == [FAILS, FAILS, HOLDS, HOLDS]
    # every ordering kind for i = 3, 4, 5 and both generators, plus the two failing i=1,2 clauses
    assert len(negatives) == 3 * 4 * 2 + 2


def test_c05_orthomodularity_characterisations():
    items = _items(battery.orderings_collapse, battery.orthomodular_via_join)
    o6 = [it for it in items if it.name.endswith("]") and " in o6 " in it.name]
    concrete = all(it.detail.startswith("o6: ") and "=" in it.detail for it in o6)
    bad = _failed(items)
    record(5, not bad and concrete and len(o6) * 2 == len(items),
           f"{len(items) // 2} equivalences, all OML + O6 counterexample; {len(bad)} disagree")
    assert bad == []
    assert concrete and len(o6) * 2 == len(items)


def test_c06_deduction_and_sasaki():
    items = _items(battery.deduction, battery.sasaki_identities, battery.sasaki)
    phi_o6 = [it for it in items if it.name.startswith("complement equivalence in o6")]
    bad = _failed(items)
    record(6, not bad and len(phi_o6) == 1 and phi_o6[0].observed == FAILS,
           f"{len(items)} items, {len(bad)} disagree")
    assert bad == []
    assert phi_o6 and phi_o6[0].observed == FAILS


def _roundtrip(ids, seeds):
    return sum(classify(construct_representative(Septuple.from_id(c), seeds, verify=False)).class_id != c
               for c in ids)


def test_c07_construction_roundtrip():
    seeds = load_seeds()  # raises if any seed is off
    fast = _roundtrip(random.Random(0).sample(range(N_CLASSES), 10_000), seeds)
    full = _roundtrip(range(N_CLASSES), seeds)
    record(7, fast == 0 and full == 0,
           f"46 seeds verified; {fast} failures in 10000 random, {full} in all {N_CLASSES}")
    assert fast == 0 and full == 0


def test_c08_qa1_extraction(full_table):
    rows = extract_subalgebra(full_table, "11,.,5,.,.,.,.")
    costs = {c for _, _, c in rows}
    found = {s for s, _, _ in rows}
    listed = [classify(t) for t in ("(a | (a' & b))", "(b | (b' & a))", "((a' & b) | a)",
                                    "((b' & a) | b)")]
    ok = costs == {3} and all(s in found for s in listed)
    record(8, ok, f"minimal cost {sorted(costs)}, {len(rows)} classes, listed four present: "
           f"{all(s in found for s in listed)}")
    assert costs == {3}
    assert all(s in found for s in listed)


def test_c09_small_cost_oracle(full_table):
    brute = oracle.costs_up_to(4)
    dp = {int(c): int(full_table.cost[c]) for c in np.flatnonzero(full_table.cost <= 4)}
    counts = np.bincount(list(brute.values())).tolist()
    record(9, brute == dp and counts == list(TABLE1[:5]), f"oracle counts {counts}, DP agrees: {brute == dp}")
    assert counts == list(TABLE1[:5])
    assert brute == dp


def test_c10_determinism(tmp_path):
    n = max(2, os.cpu_count() or 1)
    outs = {}
    for w in (1, n):
        hist = tmp_path / f"hist{w}.tsv"
        atlas = tmp_path / f"atlas{w}.tsv"
        with open(hist, "w") as fh:
            assert main(["search", "--max-cost", "14", "--out", str(atlas), "--histogram",
                         "--workers", str(w)], fh) == 0
        outs[w] = (hist.read_bytes(), atlas.read_bytes())
    same = outs[1] == outs[n]
    record(10, same, f"histogram and atlas byte-identical for workers 1 and {n}: {same}")
    assert outs[1][0] == outs[n][0]
    assert outs[1][1] == outs[n][1]
