import random

import pytest
from hypothesis import strategies as st

from tagcalc.formula import Conn, Imp, Var
from tagcalc.tagsys import TagSystem

NAMES = ["x", "y", "z", "u", "v"]


def formulas(max_leaves: int = 12, names=NAMES, conn: bool = False):
    leaves = st.sampled_from(names).map(Var)

    def extend(children):
        out = st.builds(Imp, children, children)
        if conn:
            out = out | st.builds(lambda a: Conn("neg", (a,)), children)
        return out

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def random_formula(rng: random.Random, depth: int, names=NAMES, conn: bool = False):
    if depth == 0 or rng.random() < 0.25:
        return Var(rng.choice(names))
    if conn and rng.random() < 0.15:
        return Conn("neg", (random_formula(rng, depth - 1, names, conn),))
    return Imp(random_formula(rng, depth - 1, names, conn), random_formula(rng, depth - 1, names, conn))


@pytest.fixture
def T1():
    return TagSystem("ab", {"a": "ab", "b": "b"}, 2)


@pytest.fixture
def T2():
    return TagSystem("a", {"a": "aa"}, 2)


# One PASS/FAIL line per acceptance criterion, shown at the end of the run.
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
