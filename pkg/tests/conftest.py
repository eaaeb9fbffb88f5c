import random
from fractions import Fraction

import pytest

from hvmforge.catalog import classical_nc, pr_box, pr_box_fc


def enumerate_context(m, cid):
    """Brute-force realization straight from the tables: {outcome tuple: mass}."""
    qs = m.contexts[cid]
    hidden = m.hidden[cid] if m.per_context else m.hidden
    out = {}
    for lam, p in hidden.items():
        row = []
        for q in qs:
            if m.form in ("general", "fc"):
                row.append(m.response[(q, cid, lam)])
            elif m.form in ("ci", "nc"):
                row.append(m.response[(q, lam)])
            elif m.form == "xi":
                row.append(m.response[(q, cid, lam[q])])
            else:
                row.append(m.response[(q, lam[q])])
        out[tuple(row)] = out.get(tuple(row), Fraction(0)) + p
    return out


def as_table(joint):
    return {tuple(a[q] for q in joint.keys): p for a, p in joint.items()}


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture
def prbox():
    return pr_box()


@pytest.fixture
def prbox_fc():
    return pr_box_fc()


@pytest.fixture
def classical():
    return classical_nc()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
