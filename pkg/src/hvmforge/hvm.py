"""Hidden variable models in six forms and the constructions relating them.

Every model stores its context structure (``{cid: (pid, ...)}``), hidden
distribution(s), and a deterministic response table. Response tables are
explicit dicts and need only be total on the hidden support.

=========  =======================  ===============================
form       hidden variable          response key
=========  =======================  ===============================
general    one Dist per context     ``(q, c, lambda)``
ci         one Dist per context     ``(q, lambda)``
fc         one shared Dist          ``(q, c, lambda)``
nc         one shared Dist          ``(q, lambda)``
xi         per-context JointDist    ``(q, c, lambda_q)``
           keyed by property
rho        one JointDist keyed      ``(q, lambda_q)``
           by property
=========  =======================  ===============================
"""

from __future__ import annotations

import json
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from types import MappingProxyType
from typing import ClassVar, Union

from .errors import InvalidDistribution, ResponseUndefined, SchemaError, StructureMismatch, ValidationError
from .prob import Assignment, Dist, JointDist, dist_eq, product_coupling, pushforward
from .systems import Context, System, check_schema, load_json, system_from_realizations

__all__ = [
    "CiHvm",
    "FcHvm",
    "GeneralHvm",
    "NcHvm",
    "RhoHvm",
    "XiHvm",
    "ci_to_fc",
    "embed_nc",
    "fc_to_ci",
    "fc_to_general",
    "general_to_fc",
    "models",
    "parse_hvm",
    "realize",
    "realize_all",
    "realized_system",
    "rho_to_nc",
    "serialize_hvm",
    "xi_to_general",
]

CouplingStrategy = Callable[[Mapping], JointDist]


def _freeze_contexts(contexts) -> MappingProxyType:
    out = {}
    for cid, qs in contexts.items():
        qs = tuple(qs)
        if not qs or len(set(qs)) != len(qs):
            raise ValidationError(f"context {cid!r}: property list must be nonempty without duplicates")
        out[cid] = qs
    return MappingProxyType(out)


class _Hvm:
    form: ClassVar[str]
    per_context: ClassVar[bool]

    def __post_init__(self):
        object.__setattr__(self, "contexts", _freeze_contexts(self.contexts))
        object.__setattr__(self, "response", MappingProxyType(dict(self.response)))
        if self.per_context:
            hidden = dict(self.hidden)
            if set(hidden) != set(self.contexts):
                raise ValidationError(
                    f"{self.form} model: hidden distributions for {sorted(hidden)}, contexts {sorted(self.contexts)}"
                )
            object.__setattr__(self, "hidden", MappingProxyType(hidden))
        self._check()

    def _check(self):
        pass

    @property
    def property_ids(self) -> tuple:
        seen: dict = {}
        for qs in self.contexts.values():
            seen.update(dict.fromkeys(qs))
        return tuple(seen)

    def _lookup(self, key):
        try:
            return self.response[key]
        except KeyError:
            raise ResponseUndefined(f"{self.form} response undefined at {key!r}") from None

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        hidden_eq = dict(self.hidden) == dict(other.hidden) if self.per_context else self.hidden == other.hidden
        return (
            dict(self.contexts) == dict(other.contexts)
            and hidden_eq
            and dict(self.response) == dict(other.response)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class GeneralHvm(_Hvm):
    """Per-context hidden variable, response depends on property and context."""

    contexts: Mapping
    hidden: Mapping
    response: Mapping
    form: ClassVar[str] = "general"
    per_context: ClassVar[bool] = True

    def _dist(self, cid):
        return self.hidden[cid]

    def _respond(self, q, cid, lam):
        return self._lookup((q, cid, lam))


@dataclass(frozen=True, eq=False)
class CiHvm(_Hvm):
    """Context-independent mapping: the response never sees the context."""

    contexts: Mapping
    hidden: Mapping
    response: Mapping
    form: ClassVar[str] = "ci"
    per_context: ClassVar[bool] = True

    def _dist(self, cid):
        return self.hidden[cid]

    def _respond(self, q, cid, lam):
        return self._lookup((q, lam))


@dataclass(frozen=True, eq=False)
class FcHvm(_Hvm):
    """Free choice: one hidden distribution shared by all contexts."""

    contexts: Mapping
    hidden: Dist
    response: Mapping
    form: ClassVar[str] = "fc"
    per_context: ClassVar[bool] = False

    def _dist(self, cid):
        return self.hidden

    def _respond(self, q, cid, lam):
        return self._lookup((q, cid, lam))


@dataclass(frozen=True, eq=False)
class NcHvm(_Hvm):
    """Noncontextual: shared hidden distribution and context-free response."""

    contexts: Mapping
    hidden: Dist
    response: Mapping
    form: ClassVar[str] = "nc"
    per_context: ClassVar[bool] = False

    def _dist(self, cid):
        return self.hidden

    def _respond(self, q, cid, lam):
        return self._lookup((q, lam))


@dataclass(frozen=True, eq=False)
class XiHvm(_Hvm):
    """One hidden component per (property, context), jointly distributed within a context."""

    contexts: Mapping
    hidden: Mapping
    response: Mapping
    form: ClassVar[str] = "xi"
    per_context: ClassVar[bool] = True

    def _check(self):
        for cid, qs in self.contexts.items():
            j = self.hidden[cid]
            if not isinstance(j, JointDist) or set(j.keys) != set(qs):
                raise ValidationError(f"xi model: hidden joint of {cid!r} must be keyed by {qs}")

    def _dist(self, cid):
        return self.hidden[cid]

    def _respond(self, q, cid, lam):
        return self._lookup((q, cid, lam[q]))


@dataclass(frozen=True, eq=False)
class RhoHvm(_Hvm):
    """One hidden component per property, all jointly distributed."""

    contexts: Mapping
    hidden: JointDist
    response: Mapping
    form: ClassVar[str] = "rho"
    per_context: ClassVar[bool] = False

    def _check(self):
        if not isinstance(self.hidden, JointDist) or not set(self.property_ids) <= set(self.hidden.keys):
            raise ValidationError(f"rho model: hidden joint must be keyed by every property {self.property_ids}")

    def _dist(self, cid):
        return self.hidden

    def _respond(self, q, cid, lam):
        return self._lookup((q, lam[q]))


Hvm = Union[GeneralHvm, CiHvm, FcHvm, NcHvm, XiHvm, RhoHvm]
FORMS = {cls.form: cls for cls in (GeneralHvm, CiHvm, FcHvm, NcHvm, XiHvm, RhoHvm)}


def _resolve(m: Hvm, context) -> tuple:
    if isinstance(context, Context):
        cid, qs = context.id, context.properties
    else:
        cid = context
        if cid not in m.contexts:
            raise StructureMismatch(f"{m.form} model has no context {cid!r}")
        qs = m.contexts[cid]
    if m.per_context and cid not in m.contexts:
        raise StructureMismatch(f"{m.form} model has no hidden distribution for context {cid!r}")
    return cid, qs


def realize(m: Hvm, context) -> JointDist:
    """Joint distribution of the responses in one context.

    ``context`` is a :class:`Context` or a context id known to ``m``.
    """
    cid, qs = _resolve(m, context)
    out = pushforward(m._dist(cid), lambda lam: Assignment((q, m._respond(q, cid, lam)) for q in qs))
    return JointDist(qs, out.items())


def realize_all(m: Hvm) -> dict:
    return {cid: realize(m, cid) for cid in m.contexts}


def realized_system(m: Hvm, alphabets=None) -> System:
    """The system a model generates; alphabets default to the outcomes that occur."""
    return system_from_realizations(alphabets, dict(m.contexts), realize_all(m))


def models(m: Hvm, s: System) -> bool:
    """Whether ``m`` reproduces every context distribution of ``s`` exactly."""
    for c in s.contexts:
        mine = m.contexts.get(c.id)
        if mine is None or set(mine) != set(c.properties):
            raise StructureMismatch(f"context {c.id!r}: model measures {mine}, system measures {c.properties}")
    for c in s.contexts:
        if not dist_eq(realize(m, c), s.jointly[c.id]):
            return False
    return True


def _coupled(m, strategy: CouplingStrategy) -> JointDist:
    return strategy({cid: m.hidden[cid] for cid in m.contexts})


def ci_to_fc(m: CiHvm, strategy: CouplingStrategy = product_coupling) -> FcHvm:
    """Couple the per-context hidden variables; read context c's coordinate in the response."""
    lam = _coupled(m, strategy)
    gamma = {}
    for point in lam:
        for cid, qs in m.contexts.items():
            for q in qs:
                gamma[(q, cid, point)] = m._lookup((q, point[cid]))
    return FcHvm(m.contexts, Dist(lam.items()), gamma)


def fc_to_ci(m: FcHvm) -> CiHvm:
    """Use each context's vector of responses as that context's hidden variable.

    The shared hidden alphabet is the set of partial assignments pid -> outcome,
    and the response simply reads off the requested property.
    """
    hidden, beta = {}, {}
    for cid, qs in m.contexts.items():
        hidden[cid] = pushforward(m.hidden, lambda lam: Assignment((q, m._lookup((q, cid, lam))) for q in qs))
        for a in hidden[cid]:
            for q in qs:
                beta[(q, a)] = a[q]
    return CiHvm(m.contexts, hidden, beta)


def general_to_fc(m: GeneralHvm, strategy: CouplingStrategy = product_coupling) -> FcHvm:
    """As :func:`ci_to_fc`, keeping the response's context argument."""
    lam = _coupled(m, strategy)
    gamma = {}
    for point in lam:
        for cid, qs in m.contexts.items():
            for q in qs:
                gamma[(q, cid, point)] = m._lookup((q, cid, point[cid]))
    return FcHvm(m.contexts, Dist(lam.items()), gamma)


def fc_to_general(m: FcHvm) -> GeneralHvm:
    return GeneralHvm(m.contexts, {cid: m.hidden for cid in m.contexts}, m.response)


def xi_to_general(m: XiHvm) -> GeneralHvm:
    hidden, alpha = {}, {}
    for cid, qs in m.contexts.items():
        joint = m.hidden[cid]
        hidden[cid] = Dist(joint.items())
        for point in joint:
            for q in qs:
                alpha[(q, cid, point)] = m._lookup((q, cid, point[q]))
    return GeneralHvm(m.contexts, hidden, alpha)


def rho_to_nc(m: RhoHvm) -> NcHvm:
    delta = {}
    for point in m.hidden:
        for q in m.property_ids:
            delta[(q, point)] = m._lookup((q, point[q]))
    return NcHvm(m.contexts, Dist(m.hidden.items()), delta)


def embed_nc(m: NcHvm, target: str) -> Hvm:
    """View a noncontextual model as a general, ci, or fc model."""
    if target == "ci":
        return CiHvm(m.contexts, {cid: m.hidden for cid in m.contexts}, m.response)
    if target not in ("fc", "general"):
        raise ValueError(f"cannot embed an nc model as {target!r}")
    table = {}
    for lam in m.hidden:
        for cid, qs in m.contexts.items():
            for q in qs:
                table[(q, cid, lam)] = m._lookup((q, lam))
    if target == "fc":
        return FcHvm(m.contexts, m.hidden, table)
    return GeneralHvm(m.contexts, {cid: m.hidden for cid in m.contexts}, table)


# -- serialization -------------------------------------------------------------

_DIST_ENTRIES = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["lambda", "p"],
        "properties": {"p": {"type": "string", "pattern": r"^\s*\d+(\s*/\s*\d+)?\s*$"}},
    },
}

HVM_SCHEMA = {
    "type": "object",
    "required": ["form", "contexts", "hidden", "response"],
    "properties": {
        "form": {"enum": sorted(FORMS)},
        "contexts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "properties"],
                "properties": {
                    "id": {"type": "string"},
                    "properties": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                },
            },
        },
        "hidden": {"oneOf": [_DIST_ENTRIES, {"type": "object", "additionalProperties": _DIST_ENTRIES}]},
        "response": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["q", "lambda", "outcome"],
                "properties": {"q": {"type": "string"}, "c": {"type": "string"}, "outcome": {"type": "string"}},
            },
        },
    },
}


def point_to_json(pt):
    if isinstance(pt, Assignment):
        return {str(k): point_to_json(v) for k, v in pt.items()}
    if isinstance(pt, str):
        return pt
    raise TypeError(f"cannot serialize hidden point {pt!r}")


def point_from_json(obj, where="$"):
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return Assignment((k, point_from_json(v, f"{where}.{k}")) for k, v in obj.items())
    raise SchemaError(f"{where}: hidden point must be a string or an object, got {type(obj).__name__}")


def _dist_to_json(d: Dist) -> list:
    return [{"lambda": point_to_json(pt), "p": str(p)} for pt, p in d.items()]


def _dist_from_json(entries, where, keys=None) -> Dist:
    pairs = []
    seen = set()
    for i, e in enumerate(entries):
        pt = point_from_json(e["lambda"], f"{where}[{i}].lambda")
        if pt in seen:
            raise ValidationError(f"{where}[{i}]: duplicate hidden point")
        seen.add(pt)
        pairs.append((pt, e["p"]))
    try:
        return Dist(pairs) if keys is None else JointDist(keys, pairs)
    except InvalidDistribution as exc:
        raise ValidationError(f"{where}: {exc}") from None


def hvm_to_doc(m: Hvm) -> dict:
    contexts = [{"id": cid, "properties": list(qs)} for cid, qs in m.contexts.items()]
    if m.per_context:
        hidden = {cid: _dist_to_json(m.hidden[cid]) for cid in m.contexts}
    else:
        hidden = _dist_to_json(m.hidden)
    with_c = m.form in ("general", "fc", "xi")
    response = []
    for key, outcome in m.response.items():
        entry = {"q": key[0]}
        if with_c:
            entry["c"] = key[1]
        entry["lambda"] = point_to_json(key[-1])
        entry["outcome"] = outcome
        response.append(entry)
    doc = {"form": m.form, "contexts": contexts, "hidden": hidden, "response": response}
    if m.form == "rho":
        doc["keys"] = list(m.hidden.keys)
    return doc


def serialize_hvm(m: Hvm) -> str:
    return json.dumps(hvm_to_doc(m), indent=2, ensure_ascii=False) + "\n"


def parse_hvm(text: str) -> Hvm:
    """Parse the JSON model format; the inverse of :func:`serialize_hvm`."""
    doc = load_json(text)
    check_schema(doc, HVM_SCHEMA)
    cls = FORMS[doc["form"]]
    contexts = {}
    for i, c in enumerate(doc["contexts"]):
        if c["id"] in contexts:
            raise ValidationError(f"$.contexts[{i}]: duplicate context id {c['id']!r}")
        contexts[c["id"]] = tuple(c["properties"])

    hidden_doc = doc["hidden"]
    if cls.per_context:
        if not isinstance(hidden_doc, dict):
            raise SchemaError(f"$.hidden: {cls.form} model needs one distribution per context")
        if set(hidden_doc) != set(contexts):
            raise ValidationError(f"$.hidden: keys {sorted(hidden_doc)} do not match contexts {sorted(contexts)}")
        hidden = {
            cid: _dist_from_json(hidden_doc[cid], f"$.hidden.{cid}", contexts[cid] if cls is XiHvm else None)
            for cid in contexts
        }
    else:
        if not isinstance(hidden_doc, list):
            raise SchemaError(f"$.hidden: {cls.form} model needs a single distribution")
        keys = None
        if cls is RhoHvm:
            keys = doc.get("keys")
            if keys is None:
                seen: dict = {}
                for qs in contexts.values():
                    seen.update(dict.fromkeys(qs))
                keys = list(seen)
        hidden = _dist_from_json(hidden_doc, "$.hidden", keys)

    with_c = cls.form in ("general", "fc", "xi")
    response = {}
    for i, r in enumerate(doc["response"]):
        where = f"$.response[{i}]"
        lam = point_from_json(r["lambda"], f"{where}.lambda")
        if with_c:
            if "c" not in r:
                raise SchemaError(f"{where}: 'c' is required for {cls.form} models")
            key = (r["q"], r["c"], lam)
        else:
            if "c" in r:
                raise SchemaError(f"{where}: {cls.form} responses take no context")
            key = (r["q"], lam)
        if key in response:
            raise ValidationError(f"{where}: duplicate response entry")
        response[key] = r["outcome"]
    return cls(contexts, hidden, response)
