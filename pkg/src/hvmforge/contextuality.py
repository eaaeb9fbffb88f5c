"""Deciding whether a system admits a noncontextual model.

A noncontextual model is the same thing as a distribution over global
assignments (one outcome per property) whose restrictions reproduce every
context's joint distribution. Existence is an LP feasibility question, solved
here exactly; infeasibility comes with a Farkas certificate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ShapeError, SizeLimit
from .hvm import NcHvm
from .lp import farkas_holds, solve_feasibility
from .prob import Assignment, Dist
from .systems import System

__all__ = [
    "DEFAULT_CAP",
    "NcDecision",
    "NcProgram",
    "cycle_functional",
    "cycle_max",
    "cycle_order",
    "find_nc_hvm",
    "global_assignments",
    "nc_program",
]

DEFAULT_CAP = 10**6
_SIGN = {"+1": 1, "-1": -1, "1": 1}


@dataclass(frozen=True)
class NcProgram:
    """Constraint data for the feasibility program ``A p = b, p >= 0``.

    ``rows[i]`` labels equality ``i``: ``(cid, outcomes)`` for a context cell
    or ``("*", ())`` for the normalization row; ``columns[j]`` is a global
    assignment.
    """

    columns: tuple
    rows: tuple
    A: tuple
    b: tuple


@dataclass(frozen=True)
class NcDecision:
    witness: Optional[NcHvm] = None
    certificate: Optional[tuple] = None
    program: Optional[NcProgram] = None

    @property
    def feasible(self) -> bool:
        return self.witness is not None

    def certificate_valid(self) -> bool:
        if self.certificate is None:
            return False
        return farkas_holds(self.program.A, self.program.b, self.certificate)


def global_assignments(s: System, cap: int = DEFAULT_CAP) -> list:
    count = math.prod(len(p.alphabet) for p in s.properties)
    if count > cap:
        raise SizeLimit(count, cap)
    pids = [p.id for p in s.properties]
    return [Assignment(zip(pids, combo)) for combo in itertools.product(*(p.alphabet for p in s.properties))]


def nc_program(s: System, cap: int = DEFAULT_CAP) -> NcProgram:
    columns = global_assignments(s, cap)
    rows, A, b = [], [], []
    for c in s.contexts:
        joint = s.jointly[c.id]
        alphabets = [s.get_property(q).alphabet for q in c.properties]
        # index columns by their restriction to c
        by_cell: dict = {}
        for j, g in enumerate(columns):
            by_cell.setdefault(tuple(g[q] for q in c.properties), []).append(j)
        for outcomes in itertools.product(*alphabets):
            row = [0] * len(columns)
            for j in by_cell.get(outcomes, ()):
                row[j] = 1
            rows.append((c.id, outcomes))
            A.append(tuple(row))
            b.append(joint.mass(Assignment(zip(c.properties, outcomes))))
    rows.append(("*", ()))
    A.append(tuple([1] * len(columns)))
    b.append(Fraction(1))
    return NcProgram(tuple(columns), tuple(rows), tuple(A), tuple(b))


def find_nc_hvm(s: System, cap: int = DEFAULT_CAP) -> NcDecision:
    """Exact noncontextual model for ``s``, or a Farkas certificate that none exists."""
    prog = nc_program(s, cap)
    res = solve_feasibility(prog.A, prog.b)
    if not res.feasible:
        return NcDecision(certificate=res.certificate, program=prog)
    mass = [(g, p) for g, p in zip(prog.columns, res.x) if p > 0]
    delta = {(q, g): g[q] for g, _ in mass for q in g}
    witness = NcHvm(s.structure, Dist(mass), delta)
    return NcDecision(witness=witness, program=prog)


def cycle_order(s: System) -> list:
    """Contexts of a binary ±1 cyclic system, in declaration order, after shape checks."""
    for p in s.properties:
        if len(p.alphabet) != 2 or not set(p.alphabet) <= set(_SIGN) or len({_SIGN[o] for o in p.alphabet}) != 2:
            raise ShapeError(f"property {p.id!r} is not ±1-valued: {p.alphabet}")
    n = len(s.contexts)
    if n < 2:
        raise ShapeError("a cycle needs at least two contexts")
    for c in s.contexts:
        if len(c.properties) != 2:
            raise ShapeError(f"context {c.id!r} has {len(c.properties)} properties, cycles need 2")
    degree = {p.id: 0 for p in s.properties}
    for c in s.contexts:
        for q in c.properties:
            degree[q] += 1
    if any(d != 2 for d in degree.values()) or len(degree) != n:
        raise ShapeError("every property must lie in exactly two contexts")
    # connectedness: walk from the first context
    seen = {s.contexts[0].id}
    frontier = [s.contexts[0]]
    while frontier:
        cur = frontier.pop()
        for c in s.contexts:
            if c.id not in seen and set(c.properties) & set(cur.properties):
                seen.add(c.id)
                frontier.append(c)
    if len(seen) != n:
        raise ShapeError("contexts do not form a single cycle")
    return list(s.contexts)


def _expectation(s: System, c) -> Fraction:
    q1, q2 = c.properties
    return sum((p * _SIGN[a[q1]] * _SIGN[a[q2]] for a, p in s.jointly[c.id].items()), Fraction(0))


def cycle_functional(s: System, signs: Sequence[int]) -> Fraction:
    """Signed sum of product expectations, one sign per context in declaration order."""
    ctxs = cycle_order(s)
    if len(signs) != len(ctxs) or any(x not in (1, -1) for x in signs):
        raise ShapeError(f"need {len(ctxs)} signs in {{+1, -1}}, got {list(signs)}")
    return sum((x * _expectation(s, c) for x, c in zip(signs, ctxs)), Fraction(0))


def cycle_max(s: System) -> Fraction:
    """Maximum of :func:`cycle_functional` over sign vectors with an odd number of minuses."""
    ctxs = cycle_order(s)
    es = [_expectation(s, c) for c in ctxs]
    best = None
    for signs in itertools.product((1, -1), repeat=len(es)):
        if signs.count(-1) % 2 == 1:
            v = sum((x * e for x, e in zip(signs, es)), Fraction(0))
            if best is None or v > best:
                best = v
    return best
