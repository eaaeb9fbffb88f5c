"""Random generators for systems and models, used by tests and demos.

Sizes follow the desk-scale defaults: alphabets of 2-4 points, 2-4 contexts,
rational masses with denominators at most 12. Every generator takes a
:class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .hvm import CiHvm, FcHvm, GeneralHvm, NcHvm, RhoHvm, XiHvm
from .prob import Assignment, Dist, JointDist
from .systems import MINUS, PLUS, System, cyclic4

__all__ = [
    "random_ci_hvm",
    "random_correlation",
    "random_dist",
    "random_fc_hvm",
    "random_general_hvm",
    "random_hvm",
    "random_nc_hvm",
    "random_rho_hvm",
    "random_signaling_system",
    "random_structure",
    "random_xi_hvm",
]

MAX_DEN = 12


def random_masses(rng: random.Random, n: int, max_den: int = MAX_DEN) -> list:
    """``n`` nonnegative rationals summing to 1, with a common denominator <= max_den."""
    den = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, den) for _ in range(n - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    return [Fraction(k, den) for k in parts]


def random_dist(rng: random.Random, points, max_den: int = MAX_DEN) -> Dist:
    points = list(points)
    return Dist(zip(points, random_masses(rng, len(points), max_den)))


def _alphabet(rng, prefix, lo=2, hi=4):
    return tuple(f"{prefix}{i}" for i in range(rng.randint(lo, hi)))


def random_structure(rng: random.Random, max_contexts: int = 4, max_props: int = 4):
    """Random ``(alphabets, contexts)``: ``{pid: outcomes}`` and ``{cid: (pid, ...)}``.

    Every property is measured in at least one context.
    """
    nprops = rng.randint(2, max_props)
    pids = [f"q{i + 1}" for i in range(nprops)]
    ncontexts = rng.randint(2, max_contexts)
    while True:
        contexts = {}
        for i in range(ncontexts):
            k = rng.randint(1, min(3, nprops))
            contexts[f"c{i + 1}"] = tuple(sorted(rng.sample(pids, k), key=pids.index))
        if {q for qs in contexts.values() for q in qs} == set(pids):
            break
    alphabets = {q: _alphabet(rng, "o") for q in pids}
    return alphabets, contexts


def _hidden_alphabet(rng):
    return _alphabet(rng, "h", 1, 4)


def random_general_hvm(rng: random.Random) -> GeneralHvm:
    alph, ctx = random_structure(rng)
    hidden, table = {}, {}
    for cid, qs in ctx.items():
        hs = _hidden_alphabet(rng)
        hidden[cid] = random_dist(rng, hs)
        for q in qs:
            for h in hs:
                table[(q, cid, h)] = rng.choice(alph[q])
    return GeneralHvm(ctx, hidden, table)


def random_ci_hvm(rng: random.Random) -> CiHvm:
    alph, ctx = random_structure(rng)
    hs = _hidden_alphabet(rng)
    hidden = {cid: random_dist(rng, hs) for cid in ctx}
    table = {(q, h): rng.choice(alph[q]) for q in alph for h in hs}
    return CiHvm(ctx, hidden, table)


def random_fc_hvm(rng: random.Random) -> FcHvm:
    alph, ctx = random_structure(rng)
    hs = _hidden_alphabet(rng)
    table = {(q, cid, h): rng.choice(alph[q]) for cid, qs in ctx.items() for q in qs for h in hs}
    return FcHvm(ctx, random_dist(rng, hs), table)


def random_nc_hvm(rng: random.Random) -> NcHvm:
    alph, ctx = random_structure(rng)
    hs = _hidden_alphabet(rng)
    table = {(q, h): rng.choice(alph[q]) for q in alph for h in hs}
    return NcHvm(ctx, random_dist(rng, hs), table)


def _random_joint(rng, keys, component_alphabets, max_points=4):
    pts = set()
    for _ in range(rng.randint(1, max_points)):
        pts.add(Assignment((k, rng.choice(component_alphabets[k])) for k in keys))
    pts = list(pts)
    return JointDist(keys, zip(pts, random_masses(rng, len(pts))))


def random_xi_hvm(rng: random.Random) -> XiHvm:
    alph, ctx = random_structure(rng)
    hidden, table = {}, {}
    for cid, qs in ctx.items():
        comps = {q: _alphabet(rng, f"h{q}", 1, 4) for q in qs}
        hidden[cid] = _random_joint(rng, qs, comps)
        for q in qs:
            for h in comps[q]:
                table[(q, cid, h)] = rng.choice(alph[q])
    return XiHvm(ctx, hidden, table)


def random_rho_hvm(rng: random.Random) -> RhoHvm:
    alph, ctx = random_structure(rng)
    pids = tuple(alph)
    comps = {q: _alphabet(rng, "h", 1, 4) for q in pids}
    table = {(q, h): rng.choice(alph[q]) for q in pids for h in comps[q]}
    return RhoHvm(ctx, _random_joint(rng, pids, comps), table)


_GENERATORS = {
    "general": random_general_hvm,
    "ci": random_ci_hvm,
    "fc": random_fc_hvm,
    "nc": random_nc_hvm,
    "xi": random_xi_hvm,
    "rho": random_rho_hvm,
}


def random_hvm(rng: random.Random, form: str):
    return _GENERATORS[form](rng)


def random_correlation(rng: random.Random, max_den: int = MAX_DEN) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-den, den), den)


def random_signaling_system(rng: random.Random) -> System:
    """A cyclic-4 system with one cell's mass shifted so one marginal changes.

    Mass moves between two cells of one context that differ only in one
    property, so that property's marginal in that context changes while all
    other contexts keep uniform marginals.
    """
    base = cyclic4(*(random_correlation(rng) for _ in range(4)))
    ctx = rng.choice(base.contexts)
    q = rng.choice(ctx.properties)
    joint = base.jointly[ctx.id]
    sources = [a for a in joint]
    src = rng.choice(sources)
    dst = Assignment((k, (PLUS if v == MINUS else MINUS) if k == q else v) for k, v in src.items())
    shift = joint.mass(src) * Fraction(rng.randint(1, 4), 4)
    cells = {a: joint.mass(a) for a in joint}
    cells[src] -= shift
    cells[dst] = cells.get(dst, Fraction(0)) + shift
    joints = dict(base.jointly)
    joints[ctx.id] = JointDist(ctx.properties, cells.items())
    return System(base.properties, base.contexts, joints)
