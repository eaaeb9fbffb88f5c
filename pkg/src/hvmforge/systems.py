"""Systems of random variables indexed by (property, context).

A :class:`System` holds, for each context, the joint distribution of the
properties measured in it. No joint distribution across contexts is given.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

import jsonschema

from .errors import InvalidDistribution, OutOfRange, SchemaError, ValidationError
from .prob import Assignment, JointDist, as_fraction, project

__all__ = [
    "Context",
    "Property",
    "System",
    "SystemReport",
    "Violation",
    "cyclic4",
    "is_consistently_connected",
    "parse_system",
    "serialize_system",
    "system_from_realizations",
]

PLUS, MINUS = "+1", "-1"


@dataclass(frozen=True)
class Property:
    id: str
    alphabet: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        if not self.alphabet:
            raise ValidationError(f"property {self.id!r}: empty alphabet")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValidationError(f"property {self.id!r}: duplicate outcome labels")


@dataclass(frozen=True)
class Context:
    id: str
    properties: tuple

    def __post_init__(self):
        object.__setattr__(self, "properties", tuple(self.properties))
        if not self.properties:
            raise ValidationError(f"context {self.id!r}: no properties")
        if len(set(self.properties)) != len(self.properties):
            raise ValidationError(f"context {self.id!r}: duplicate properties")


@dataclass(frozen=True, eq=False)
class System:
    """Properties, contexts, and one joint distribution per context.

    ``jointly[c]`` is a :class:`JointDist` keyed by ``c``'s property ids, in
    the context's order.
    """

    properties: tuple
    contexts: tuple
    jointly: MappingProxyType

    def __post_init__(self):
        props = tuple(self.properties)
        ctxs = tuple(self.contexts)
        object.__setattr__(self, "properties", props)
        object.__setattr__(self, "contexts", ctxs)
        object.__setattr__(self, "jointly", MappingProxyType(dict(self.jointly)))

        pids = [p.id for p in props]
        if len(set(pids)) != len(pids):
            raise ValidationError("duplicate property ids")
        cids = [c.id for c in ctxs]
        if len(set(cids)) != len(cids):
            raise ValidationError("duplicate context ids")
        by_id = {p.id: p for p in props}
        used = set()
        for c in ctxs:
            for q in c.properties:
                if q not in by_id:
                    raise ValidationError(f"context {c.id!r}: unknown property {q!r}")
            used.update(c.properties)
            j = self.jointly.get(c.id)
            if j is None:
                raise ValidationError(f"context {c.id!r}: no distribution")
            if set(j.keys) != set(c.properties):
                raise ValidationError(f"context {c.id!r}: distribution keyed by {j.keys}, expected {c.properties}")
            for pt in j:
                for q in c.properties:
                    if pt[q] not in by_id[q].alphabet:
                        raise ValidationError(f"context {c.id!r}: outcome {pt[q]!r} not in alphabet of {q!r}")
        if set(self.jointly) != set(cids):
            extra = sorted(set(self.jointly) - set(cids))
            raise ValidationError(f"distributions for undeclared contexts {extra}")
        unused = [q for q in pids if q not in used]
        if unused:
            raise ValidationError(f"properties in no context: {unused}")

    @classmethod
    def build(cls, properties, contexts, jointly) -> "System":
        """Build from plain data: ``{pid: alphabet}``, ``{cid: [pids]}``, ``{cid: {tuple: mass}}``."""
        props = [Property(q, alph) for q, alph in properties.items()]
        ctxs = [Context(c, qs) for c, qs in contexts.items()]
        joints = {}
        for c in ctxs:
            cells = ((Assignment(zip(c.properties, outcome)), p) for outcome, p in jointly[c.id].items())
            joints[c.id] = JointDist(c.properties, cells)
        return cls(props, ctxs, joints)

    def get_property(self, pid) -> Property:
        for p in self.properties:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def get_context(self, cid) -> Context:
        for c in self.contexts:
            if c.id == cid:
                return c
        raise KeyError(cid)

    @property
    def structure(self) -> dict:
        """The measured-in relation as ``{cid: (pid, ...)}``."""
        return {c.id: c.properties for c in self.contexts}

    def __eq__(self, other):
        if not isinstance(other, System):
            return NotImplemented
        return (
            self.properties == other.properties
            and self.contexts == other.contexts
            and dict(self.jointly) == dict(other.jointly)
        )

    __hash__ = None


@dataclass(frozen=True)
class Violation:
    property: str
    contexts: tuple
    marginals: tuple


@dataclass(frozen=True)
class SystemReport:
    consistent: bool
    violations: tuple = field(default=())


def is_consistently_connected(s: System) -> SystemReport:
    """Compare every property's marginal across every pair of contexts containing it.

    All mismatches are reported, not just the first.
    """
    violations = []
    for prop in s.properties:
        holders = [c.id for c in s.contexts if prop.id in c.properties]
        margins = {c: project(s.jointly[c], prop.id) for c in holders}
        for c1, c2 in itertools.combinations(holders, 2):
            if margins[c1] != margins[c2]:
                violations.append(Violation(prop.id, (c1, c2), (margins[c1], margins[c2])))
    return SystemReport(not violations, tuple(violations))


def _cell_masses(e: Fraction):
    return {
        (PLUS, PLUS): (1 + e) / 4,
        (MINUS, MINUS): (1 + e) / 4,
        (PLUS, MINUS): (1 - e) / 4,
        (MINUS, PLUS): (1 - e) / 4,
    }


def cyclic4(e1, e2, e3, e4) -> System:
    """The four-cycle of ±1 properties with uniform marginals.

    Contexts are ``c1=(q1,q2)``, ``c2=(q2,q3)``, ``c3=(q3,q4)``, ``c4=(q4,q1)``
    and context ``ci`` has product expectation ``ei``.
    """
    es = [as_fraction(e) for e in (e1, e2, e3, e4)]
    for i, e in enumerate(es, 1):
        if abs(e) > 1:
            raise OutOfRange(f"e{i} = {e} is outside [-1, 1]")
    props = {f"q{i}": (PLUS, MINUS) for i in range(1, 5)}
    ctxs = {f"c{i}": (f"q{i}", f"q{i % 4 + 1}") for i in range(1, 5)}
    joint = {f"c{i}": _cell_masses(e) for i, e in enumerate(es, 1)}
    return System.build(props, ctxs, joint)


def system_from_realizations(properties, structure, realized) -> System:
    """Assemble a system from per-context joint distributions (e.g. ``realize`` outputs).

    ``properties`` maps pid to alphabet; when it is ``None`` the alphabets are
    the outcomes that actually occur, in order of first appearance.
    """
    if properties is None:
        seen: dict = {}
        for cid, qs in structure.items():
            for pt in realized[cid]:
                for q in qs:
                    seen.setdefault(q, {})[pt[q]] = None
        properties = {q: tuple(v) for q, v in seen.items()}
    props = [Property(q, a) for q, a in properties.items()]
    ctxs = [Context(c, qs) for c, qs in structure.items()]
    joints = {c.id: JointDist(c.properties, realized[c.id].items()) for c in ctxs}
    return System(props, ctxs, joints)


SYSTEM_SCHEMA = {
    "type": "object",
    "required": ["properties", "contexts"],
    "properties": {
        "properties": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "alphabet"],
                "properties": {
                    "id": {"type": "string"},
                    "alphabet": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                },
            },
        },
        "contexts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "properties", "distribution"],
                "properties": {
                    "id": {"type": "string"},
                    "properties": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                    "distribution": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["outcomes", "p"],
                            "properties": {
                                "outcomes": {"type": "array", "items": {"type": "string"}},
                                "p": {"type": "string", "pattern": r"^\s*\d+(\s*/\s*\d+)?\s*$"},
                            },
                        },
                    },
                },
            },
        },
    },
}


def _path(err) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)


def check_schema(doc, schema):
    """Raise :class:`SchemaError` naming the first offending JSON path."""
    errors = sorted(jsonschema.Draft202012Validator(schema).iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(f"{_path(err)}: {err.message}")


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_system(text: str) -> System:
    """Parse the JSON system format, validating structure and masses."""
    doc = load_json(text)
    check_schema(doc, SYSTEM_SCHEMA)

    props = {}
    for i, p in enumerate(doc["properties"]):
        if p["id"] in props:
            raise ValidationError(f"$.properties[{i}]: duplicate property id {p['id']!r}")
        if len(set(p["alphabet"])) != len(p["alphabet"]):
            raise ValidationError(f"$.properties[{i}].alphabet: duplicate outcome labels")
        props[p["id"]] = tuple(p["alphabet"])

    ctxs, joints = {}, {}
    for i, c in enumerate(doc["contexts"]):
        where = f"$.contexts[{i}] ({c['id']})"
        if c["id"] in ctxs:
            raise ValidationError(f"{where}: duplicate context id {c['id']!r}")
        qs = tuple(c["properties"])
        for q in qs:
            if q not in props:
                raise ValidationError(f"{where}.properties: undeclared property {q!r}")
        if len(set(qs)) != len(qs):
            raise ValidationError(f"{where}.properties: duplicate property")
        cells = {}
        for k, cell in enumerate(c["distribution"]):
            outcomes = tuple(cell["outcomes"])
            if len(outcomes) != len(qs):
                raise ValidationError(f"{where}.distribution[{k}]: expected {len(qs)} outcomes, got {len(outcomes)}")
            for q, o in zip(qs, outcomes):
                if o not in props[q]:
                    raise ValidationError(f"{where}.distribution[{k}]: outcome {o!r} not in alphabet of {q!r}")
            if outcomes in cells:
                raise ValidationError(f"{where}.distribution[{k}]: duplicate cell {list(outcomes)}")
            cells[outcomes] = as_fraction(cell["p"])
        total = sum(cells.values(), Fraction(0))
        if total != 1:
            raise ValidationError(f"{where}: probabilities sum to {total}, not 1")
        ctxs[c["id"]] = qs
        joints[c["id"]] = cells

    unused = [q for q in props if not any(q in qs for qs in ctxs.values())]
    if unused:
        raise ValidationError(f"$.properties: {unused} measured in no context")
    try:
        return System.build(props, ctxs, joints)
    except InvalidDistribution as exc:
        raise ValidationError(str(exc)) from None


def system_to_doc(s: System) -> dict:
    """JSON-ready document; cells are listed in alphabet-product order, zero cells omitted."""
    props = [{"id": p.id, "alphabet": list(p.alphabet)} for p in s.properties]
    ctxs = []
    for c in s.contexts:
        j = s.jointly[c.id]
        alphabets = [s.get_property(q).alphabet for q in c.properties]
        dist = []
        for outcomes in itertools.product(*alphabets):
            p = j.mass(Assignment(zip(c.properties, outcomes)))
            if p:
                dist.append({"outcomes": list(outcomes), "p": str(p)})
        ctxs.append({"id": c.id, "properties": list(c.properties), "distribution": dist})
    return {"properties": props, "contexts": ctxs}


def serialize_system(s: System) -> str:
    return json.dumps(system_to_doc(s), indent=2, ensure_ascii=False) + "\n"
