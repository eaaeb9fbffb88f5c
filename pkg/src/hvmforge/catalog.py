"""Canonical models for the four-cycle systems built by :func:`~hvmforge.systems.cyclic4`."""

from .hvm import FcHvm, NcHvm
from .prob import Assignment, Dist
from .systems import MINUS, PLUS, cyclic4

__all__ = ["CYCLE4", "classical_nc", "pr_box", "pr_box_fc"]

CYCLE4 = {f"c{i}": (f"q{i}", f"q{i % 4 + 1}") for i in range(1, 5)}
_NEG = {PLUS: MINUS, MINUS: PLUS}


def pr_box():
    return cyclic4(1, 1, 1, -1)


def pr_box_fc() -> FcHvm:
    """Free-choice model of the PR box: a uniform ±1 coin, read as-is except q4 in c4 flips it."""
    table = {}
    for cid, qs in CYCLE4.items():
        for q in qs:
            for lam in (PLUS, MINUS):
                table[(q, cid, lam)] = _NEG[lam] if (q, cid) == ("q4", "c4") else lam
    return FcHvm(CYCLE4, Dist.uniform([PLUS, MINUS]), table)


def classical_nc() -> NcHvm:
    """Noncontextual model of ``cyclic4(1, 1, 1, 1)``: all +1 or all -1, each with mass 1/2."""
    pts = [Assignment((f"q{i}", v) for i in range(1, 5)) for v in (PLUS, MINUS)]
    table = {(q, g): g[q] for g in pts for q in g}
    return NcHvm(CYCLE4, Dist.uniform(pts), table)
