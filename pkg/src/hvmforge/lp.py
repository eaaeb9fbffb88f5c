"""Exact rational feasibility for ``A x = b, x >= 0``.

Phase one of the tableau simplex method with artificial variables and Bland's
rule. At a phase-one optimum with positive value, the artificial columns of
the tableau hold the inverse basis, from which a Farkas vector ``y`` with
``A^T y >= 0`` and ``b^T y < 0`` is read off. Redundant rows are harmless: an
artificial variable may stay basic at level zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["Feasibility", "farkas_holds", "solve_feasibility"]


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    x: Optional[tuple] = None
    certificate: Optional[tuple] = None
    pivots: int = 0


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def farkas_holds(A: Sequence[Sequence], b: Sequence, y: Sequence) -> bool:
    """Check ``A^T y >= 0`` componentwise and ``b^T y < 0`` exactly."""
    if len(y) != len(A):
        return False
    ncols = len(A[0]) if A else 0
    for j in range(ncols):
        if _dot((row[j] for row in A), y) < 0:
            return False
    return _dot(b, y) < 0


def solve_feasibility(A: Sequence[Sequence], b: Sequence, max_pivots: int = 100_000) -> Feasibility:
    """Find ``x >= 0`` with ``A x = b`` or prove none exists.

    Entries may be ints or Fractions. Returns either a basic feasible ``x`` or
    a certificate ``y`` satisfying :func:`farkas_holds`.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    # normalize so b >= 0; remember flips for the certificate
    flip = [Fraction(-1) if bi < 0 else Fraction(1) for bi in b]
    rows = []
    for i in range(m):
        s = flip[i]
        row = [s * Fraction(a) for a in A[i]]
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows.append(row + art + [s * Fraction(b[i])])
    basis = [n + i for i in range(m)]

    # phase-one objective: minimize sum of artificials; reduced costs for x columns
    width = n + m
    cost = [Fraction(0)] * width
    for i in range(m):
        for j in range(n):
            cost[j] -= rows[i][j]
    obj = -sum((r[-1] for r in rows), Fraction(0))

    pivots = 0
    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            a = rows[i][entering]
            if a > 0:
                key = (rows[i][-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        # phase one is bounded below by zero, so some row always qualifies
        leave = best[1]
        piv = rows[leave][entering]
        prow = [v / piv for v in rows[leave]]
        rows[leave] = prow
        for i in range(m):
            if i != leave:
                f = rows[i][entering]
                if f:
                    r = rows[i]
                    rows[i] = [rv - f * pv for rv, pv in zip(r, prow)]
        f = cost[entering]
        cost = [cv - f * pv for cv, pv in zip(cost, prow[:-1])]
        obj -= f * prow[-1]
        basis[leave] = entering
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError(f"simplex exceeded {max_pivots} pivots")

    value = -obj
    if value == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = rows[i][-1]
        return Feasibility(True, x=tuple(x), pivots=pivots)

    # duals of the phase-one problem: y_i = 1 - reduced cost of artificial i
    y = [Fraction(1) - cost[n + i] for i in range(m)]
    cert = tuple(-flip[i] * y[i] for i in range(m))
    return Feasibility(False, certificate=cert, pivots=pivots)
