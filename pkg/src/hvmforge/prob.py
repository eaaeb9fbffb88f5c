"""Exact finite probability: distributions, push-forwards, marginals, couplings.

Points are either plain string labels or :class:`Assignment` objects, which
map keys (property or context ids) to points. An ordered tuple of components
and a partial assignment share the same representation, so a coupling over
contexts and a set of outcomes for some properties are both just assignments.

All masses are :class:`fractions.Fraction`; nothing here ever rounds.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping
from fractions import Fraction
from typing import Union

from .errors import EmptyInput, InvalidDistribution, UndefinedOnSupport, UnknownKey

__all__ = [
    "Assignment",
    "Dist",
    "JointDist",
    "Point",
    "as_fraction",
    "comonotone_coupling",
    "dist_eq",
    "product_coupling",
    "project",
    "pushforward",
]


class Assignment(Mapping):
    """Immutable, hashable map from keys to points.

    Key order is kept for display and serialization but ignored by ``==`` and
    ``hash``, so ``Assignment(a=1, b=2) == Assignment(b=2, a=1)``.
    """

    __slots__ = ("_items", "_dict", "_hash")

    def __init__(self, items=(), **kwargs):
        pairs = list(items.items() if isinstance(items, Mapping) else items)
        pairs.extend(kwargs.items())
        d = dict(pairs)
        if len(d) != len(pairs):
            raise ValueError("duplicate keys in assignment")
        self._items = tuple(pairs)
        self._dict = d
        self._hash = hash(frozenset(pairs))

    def __getitem__(self, key):
        return self._dict[key]

    def __iter__(self):
        return (k for k, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Assignment):
            return self._hash == other._hash and self._dict == other._dict
        return NotImplemented

    def __repr__(self):
        inner = ", ".join(f"{k}: {v!r}" for k, v in self._items)
        return "{" + inner + "}"

    def restrict(self, keys: Iterable) -> "Assignment":
        return Assignment((k, self._dict[k]) for k in keys)


Point = Union[str, Assignment]


def as_fraction(value) -> Fraction:
    """Convert an int, Fraction, or ``"num/den"`` string to an exact Fraction."""
    if isinstance(value, bool):
        raise InvalidDistribution(f"not a probability: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidDistribution(f"not a rational: {value!r}") from None
    raise InvalidDistribution(f"inexact or unsupported mass type: {type(value).__name__}")


class Dist:
    """Exact distribution with finite support.

    Only points of positive mass are stored; ``alphabet`` lists them in
    insertion order. Two distributions are equal when their mass maps are.
    """

    __slots__ = ("_mass",)

    def __init__(self, mass: Mapping[Point, object] | Iterable[tuple[Point, object]]):
        pairs = mass.items() if isinstance(mass, Mapping) else mass
        table: dict = {}
        for point, p in pairs:
            p = as_fraction(p)
            if p < 0:
                raise InvalidDistribution(f"negative mass {p} on {point!r}")
            if p:
                table[point] = table.get(point, Fraction(0)) + p
        total = sum(table.values(), Fraction(0))
        if total != 1:
            raise InvalidDistribution(f"masses sum to {total}, not 1")
        self._mass = table

    @classmethod
    def uniform(cls, points: Iterable[Point]) -> "Dist":
        points = list(points)
        if not points:
            raise EmptyInput("uniform distribution over an empty alphabet")
        w = Fraction(1, len(points))
        return cls((pt, w) for pt in points)

    @classmethod
    def point(cls, pt: Point) -> "Dist":
        return cls({pt: 1})

    @property
    def alphabet(self) -> tuple:
        return tuple(self._mass)

    support = alphabet

    def items(self):
        return self._mass.items()

    def mass(self, pt: Point) -> Fraction:
        return self._mass.get(pt, Fraction(0))

    __getitem__ = mass

    def __contains__(self, pt):
        return pt in self._mass

    def __len__(self):
        return len(self._mass)

    def __iter__(self):
        return iter(self._mass)

    def __eq__(self, other):
        if isinstance(other, Dist):
            return self._mass == other._mass
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        inner = ", ".join(f"{pt!r}: {p}" for pt, p in self._mass.items())
        return f"{type(self).__name__}({{{inner}}})"


class JointDist(Dist):
    """A distribution over assignments that all share one ordered key set."""

    __slots__ = ("keys",)

    def __init__(self, keys: Iterable, mass):
        super().__init__(mass)
        self.keys = tuple(keys)
        if len(set(self.keys)) != len(self.keys):
            raise InvalidDistribution(f"duplicate keys {self.keys}")
        expected = set(self.keys)
        for pt in self._mass:
            if not isinstance(pt, Assignment) or set(pt) != expected:
                raise InvalidDistribution(f"point {pt!r} is not an assignment on keys {self.keys}")

    @classmethod
    def from_dist(cls, keys, d: Dist) -> "JointDist":
        return cls(keys, d.items())


def pushforward(d: Dist, f: Mapping | Callable[[Point], Point]) -> Dist:
    """Distribution of ``f(X)`` for ``X ~ d``.

    ``f`` may be a mapping or a callable; a missing key (or a callable raising
    ``KeyError``) on any support point raises :class:`UndefinedOnSupport`.
    """
    look = f.__getitem__ if isinstance(f, Mapping) else f
    out: dict = {}
    for pt, p in d.items():
        try:
            y = look(pt)
        except KeyError:
            raise UndefinedOnSupport(f"map undefined at {pt!r}") from None
        out[y] = out.get(y, Fraction(0)) + p
    return Dist(out)


def product_coupling(ds: Mapping) -> JointDist:
    """Independent coupling of a keyed family of distributions."""
    if not ds:
        raise EmptyInput("no distributions to couple")
    keys = tuple(ds)
    factors = [list(ds[k].items()) for k in keys]
    out = {}
    for combo in itertools.product(*factors):
        p = Fraction(1)
        for _, w in combo:
            p *= w
        out[Assignment(zip(keys, (pt for pt, _ in combo)))] = p
    return JointDist(keys, out)


def comonotone_coupling(ds: Mapping) -> JointDist:
    """Quantile coupling: all components driven by one common uniform variable.

    Each distribution's alphabet order defines its quantile function; the unit
    interval is cut at every cumulative breakpoint and each piece is mapped to
    the tuple of points whose quantile cells contain it. The support has at
    most ``sum(len(d)) - len(ds) + 1`` points.
    """
    if not ds:
        raise EmptyInput("no distributions to couple")
    keys = tuple(ds)
    cells = {}
    for k in keys:
        acc = Fraction(0)
        ends = []
        for pt, p in ds[k].items():
            acc += p
            ends.append((acc, pt))
        cells[k] = ends
    cuts = sorted({end for k in keys for end, _ in cells[k]})
    out = {}
    lo = Fraction(0)
    pos = dict.fromkeys(keys, 0)
    for hi in cuts:
        pts = []
        for k in keys:
            while cells[k][pos[k]][0] <= lo:
                pos[k] += 1
            pts.append((k, cells[k][pos[k]][1]))
        a = Assignment(pts)
        out[a] = out.get(a, Fraction(0)) + (hi - lo)
        lo = hi
    return JointDist(keys, out)


def project(j: JointDist, key) -> Dist:
    """Exact marginal of ``j`` on one key."""
    if key not in j.keys:
        raise UnknownKey(f"{key!r} is not among {j.keys}")
    return pushforward(j, lambda a: a[key])


def dist_eq(d1: Dist, d2: Dist) -> bool:
    """Exact equality in distribution on finite alphabets."""
    return dict(d1.items()) == dict(d2.items())
