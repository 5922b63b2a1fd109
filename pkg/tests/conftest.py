import os

import pytest
from hypothesis import strategies as st

from omlkit.expr import BICOND, IMPL, JOIN, MEET, MJOIN, MMEET, ONE, ZERO, Binary, Complement, Op, Var

os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")


def exprs(names="ab", merged=True, indexed=True, max_leaves=12):
    """Random ASTs over the given variables."""
    leaves = st.sampled_from([ZERO, ONE, *(Var(n) for n in names)])
    ops = []
    if merged:
        ops += [Op(MJOIN), Op(MMEET)]
    if indexed:
        ops += [Op(s, i) for s in (JOIN, MEET, IMPL, BICOND) for i in range(6)]
    op = st.sampled_from(ops)

    def extend(children):
        return st.one_of(
            st.builds(Complement, children),
            st.builds(Binary, op, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@pytest.fixture(scope="session")
def tables():
    from omlkit.freeoml import build_tables
    return build_tables()


@pytest.fixture(scope="session")
def full_table():
    """Complete enumeration, shared by every module that needs it (about a minute)."""
    from omlkit.search import enumerate_classes
    return enumerate_classes(14, workers=os.cpu_count() or 1)


CRITERIA: dict[int, str] = {}


def record(n: int, ok: bool, what: str):
    """Remember one acceptance line; the test still asserts on its own."""
    CRITERIA[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {what}"
    print(CRITERIA[n])
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
