"""``hvmforge`` command line.

Exit codes: 0 ok, 1 violation or infeasible, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import hvm as H
from .contextuality import cycle_max, find_nc_hvm
from .errors import HvmForgeError
from .prob import comonotone_coupling, product_coupling
from .systems import cyclic4, is_consistently_connected, parse_system, serialize_system, system_to_doc

SCHEMA_VERSION = "1"
EXIT = {"ok": 0, "violation": 1, "infeasible": 1, "error": 2}
COUPLINGS = {"product": product_coupling, "comonotone": comonotone_coupling}

# licensed arrows: (source form, target form) -> construction
ARROWS = {
    ("ci", "fc"): "ci_to_fc",
    ("general", "fc"): "general_to_fc",
    ("fc", "ci"): "fc_to_ci",
    ("fc", "general"): "fc_to_general",
    ("xi", "general"): "xi_to_general",
    ("rho", "nc"): "rho_to_nc",
    ("nc", "general"): "embed_nc",
    ("nc", "ci"): "embed_nc",
    ("nc", "fc"): "embed_nc",
}


@dataclass
class RunReport:
    command: list
    status: str
    payload: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "status": self.status,
            "exit_code": self.exit_code,
            "payload": self.payload,
        }
        return json.dumps(doc, indent=2, ensure_ascii=False)


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1/3" through as a value, not an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        raise InputError(f"usage: {message} (try `hvmforge --help`)")


def _dist_doc(d) -> list:
    return [{"point": H.point_to_json(pt), "p": str(p)} for pt, p in d.items()]


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_system(path):
    try:
        return parse_system(_read(path))
    except HvmForgeError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_hvm(path):
    try:
        return H.parse_hvm(_read(path))
    except HvmForgeError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def cmd_audit(args, report):
    s = _load_system(args.system)
    rep = is_consistently_connected(s)
    report.status = "ok" if rep.consistent else "violation"
    report.payload = {
        "consistent": rep.consistent,
        "violations": [
            {"property": v.property, "contexts": list(v.contexts), "marginals": [_dist_doc(d) for d in v.marginals]}
            for v in rep.violations
        ],
    }
    if rep.consistent:
        report.lines.append("consistently connected: every marginal agrees across contexts")
    for v in rep.violations:
        a, b = v.marginals
        report.lines.append(f"violation: {v.property} differs between {v.contexts[0]} {dict(a.items())} "
                            f"and {v.contexts[1]} {dict(b.items())}")


def cmd_realize(args, report):
    m = _load_hvm(args.hvm)
    if args.context not in m.contexts:
        raise InputError(f"{args.hvm}: no context {args.context!r} (have {', '.join(m.contexts)})")
    j = H.realize(m, args.context)
    report.status = "ok"
    report.payload = {"context": args.context, "properties": list(j.keys), "distribution": _dist_doc(j)}
    report.lines.append(f"context {args.context} ({', '.join(j.keys)}):")
    for pt, p in j.items():
        report.lines.append(f"  {' '.join(pt[q] for q in j.keys)}  {p}")


def cmd_verify(args, report):
    m = _load_hvm(args.hvm)
    s = _load_system(args.system)
    mismatched = []
    for c in s.contexts:
        got = m.contexts.get(c.id)
        if got is None or set(got) != set(c.properties):
            raise InputError(f"{args.hvm}: context {c.id!r} measures {got}, system measures {list(c.properties)}")
        if H.realize(m, c) != s.jointly[c.id]:
            mismatched.append(c.id)
    report.status = "violation" if mismatched else "ok"
    report.payload = {"models": not mismatched, "mismatched_contexts": mismatched}
    if mismatched:
        report.lines.append(f"model does not reproduce contexts: {', '.join(mismatched)}")
    else:
        report.lines.append(f"model reproduces all {len(s.contexts)} contexts exactly")


def cmd_transform(args, report):
    m = _load_hvm(args.hvm)
    arrow = ARROWS.get((m.form, args.to))
    if arrow is None:
        allowed = sorted(t for (f, t) in ARROWS if f == m.form)
        raise InputError(f"cannot transform {m.form} -> {args.to}; allowed targets: {allowed or 'none'}")
    fn = getattr(H, arrow)
    if arrow in ("ci_to_fc", "general_to_fc"):
        out = fn(m, COUPLINGS[args.coupling])
    elif arrow == "embed_nc":
        out = fn(m, args.to)
    else:
        out = fn(m)
    text = H.serialize_hvm(out)
    report.status = "ok"
    report.payload = {"from": m.form, "to": out.form, "construction": arrow, "hidden_points": _hidden_size(out)}
    if args.out:
        _write(args.out, text)
        report.payload["path"] = args.out
        report.lines.append(f"{arrow}: wrote {out.form} model to {args.out}")
    else:
        report.payload["hvm"] = H.hvm_to_doc(out)
        report.lines.append(text.rstrip("\n"))


def _hidden_size(m):
    if m.per_context:
        return {cid: len(d) for cid, d in m.hidden.items()}
    return len(m.hidden)


def cmd_nc_check(args, report):
    s = _load_system(args.system)
    dec = find_nc_hvm(s, cap=args.cap)
    if dec.feasible:
        report.status = "ok"
        w = dec.witness
        report.payload = {"feasible": True, "witness": H.hvm_to_doc(w)}
        report.lines.append(f"noncontextual model found over {len(w.hidden)} global assignments")
        for g, p in w.hidden.items():
            report.lines.append(f"  {p}  " + " ".join(f"{q}={g[q]}" for q in g))
        if args.out:
            _write(args.out, H.serialize_hvm(w))
            report.payload["path"] = args.out
    else:
        report.status = "infeasible"
        cert = dec.certificate
        valid = dec.certificate_valid()
        report.payload = {
            "feasible": False,
            "certificate_valid": valid,
            "certificate": [
                {"row": [cid, list(outs)], "y": str(y)} for (cid, outs), y in zip(dec.program.rows, cert) if y
            ],
        }
        report.lines.append("no noncontextual model: Farkas certificate "
                            f"({'verified' if valid else 'INVALID'}, {sum(1 for y in cert if y)} nonzero entries)")
        for (cid, outs), y in zip(dec.program.rows, cert):
            if y:
                report.lines.append(f"  {cid} {' '.join(outs) or '(normalization)'}: {y}")


def cmd_cycle_max(args, report):
    s = _load_system(args.system)
    try:
        v = cycle_max(s)
    except HvmForgeError as exc:
        raise InputError(f"{args.system}: {exc}") from None
    report.status = "ok"
    report.payload = {"cycle_max": str(v), "noncontextual_bound": str(len(s.contexts) - 2)}
    report.lines.append(f"cycle max = {v}")


def cmd_example(args, report):
    if args.name == "pr-box":
        s = cyclic4(1, 1, 1, -1)
    elif args.name == "classical":
        s = cyclic4(1, 1, 1, 1)
    else:
        if not args.e or len(args.e) != 4:
            raise InputError("usage: example cyclic4 needs --e with four rationals")
        try:
            s = cyclic4(*args.e)
        except HvmForgeError as exc:
            raise InputError(str(exc)) from None
    text = serialize_system(s)
    report.status = "ok"
    if args.out:
        _write(args.out, text)
        report.payload = {"path": args.out}
        report.lines.append(f"wrote {args.name} system to {args.out}")
    else:
        report.payload = {"system": system_to_doc(s)}
        report.lines.append(text.rstrip("\n"))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hvmforge", description="Exact hidden-variable-model toolkit.")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("audit", help="no-disturbance audit of a system")
    a.add_argument("system")
    a.set_defaults(func=cmd_audit)

    a = sub.add_parser("realize", help="distribution a model generates in one context")
    a.add_argument("hvm")
    a.add_argument("--context", required=True)
    a.set_defaults(func=cmd_realize)

    a = sub.add_parser("verify", help="check that a model reproduces a system")
    a.add_argument("hvm")
    a.add_argument("system")
    a.set_defaults(func=cmd_verify)

    a = sub.add_parser("transform", help="convert a model to another form")
    a.add_argument("--to", required=True, choices=["fc", "ci", "general", "nc"])
    a.add_argument("--coupling", choices=sorted(COUPLINGS), default="product")
    a.add_argument("--out")
    a.add_argument("hvm")
    a.set_defaults(func=cmd_transform)

    a = sub.add_parser("nc-check", help="decide whether a noncontextual model exists")
    a.add_argument("system")
    a.add_argument("--cap", type=int, default=10**6)
    a.add_argument("--out", help="write the witness model here when one exists")
    a.set_defaults(func=cmd_nc_check)

    a = sub.add_parser("cycle-max", help="largest odd-sign cyclic correlation sum")
    a.add_argument("system")
    a.set_defaults(func=cmd_cycle_max)

    a = sub.add_parser("example", help="emit a canonical system file")
    a.add_argument("name", choices=["pr-box", "classical", "cyclic4"])
    a.add_argument("--e", nargs="+")
    a.add_argument("--out")
    a.set_defaults(func=cmd_example)

    for action in (sub.choices.values()):
        action.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable report")
    return p


def run(argv=None) -> RunReport:
    argv = list(sys.argv[1:] if argv is None else argv)
    report = RunReport(command=argv, status="error")
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        args.func(args, report)
    except (InputError, HvmForgeError) as exc:
        report.status = "error"
        report.payload = {"error": str(exc)}
        report.lines = [f"error: {exc}"]
    if as_json:
        print(report.to_json())
    else:
        print("\n".join(report.lines), file=sys.stderr if report.status == "error" else sys.stdout)
    return report


def main(argv=None) -> int:
    return run(argv).exit_code


if __name__ == "__main__":
    sys.exit(main())
