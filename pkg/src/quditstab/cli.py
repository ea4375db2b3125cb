"""Command-line interface: analyze, kitaev build, oracle verify, canonicalize.

Exit codes: 0 success, 2 validation errors (machine-readable error object
on stdout), 3 oracle verdict failure.  Reports embed the tool version and
the convention flags so golden files are self-describing.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__
from .errors import QuditStabError
from .kitaev import (
    ShiftPair,
    SurfaceGraph,
    apply_shift,
    apply_twist,
    build_model,
)
from .oracle import oracle_bound, verify_report
from .stabilizer import (
    StabilizerGroup,
    StabilizerReport,
    analyze,
    canonical_conjugation,
)
from .pauli import PauliElement

CONVENTIONS = {
    "normal_form": "X-before-Z per qudit, phases as exponents of zeta",
    "module_vector": "Z exponents first, then X exponents",
    "charge_transport": "S^Z(t: s1->s2) adds +e at s1 and -e at s2",
    "face_side": "B_f applies Z where f lies on the right of the arrow",
}


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        _emit_text(obj)


def _emit_text(obj: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key in sorted(obj):
        val = obj[key]
        if isinstance(val, dict):
            print(f"{pad}{key}:")
            _emit_text(val, indent + 1)
        else:
            print(f"{pad}{key}: {val}")


def _wrap_report(payload: dict) -> dict:
    return {"tool_version": __version__, "conventions": CONVENTIONS, **payload}


def _error_exit(exc: Exception, fmt: str, kind: Optional[str] = None) -> int:
    obj = {"error": {"type": kind or type(exc).__name__, "detail": str(exc)}}
    _emit(obj, fmt)
    return 2


def _guard(fn):
    """Map library and request-schema failures to exit code 2."""

    def wrapper(args) -> int:
        try:
            return fn(args)
        except QuditStabError as exc:
            return _error_exit(exc, args.format)
        except (KeyError, TypeError, ValueError, OSError) as exc:
            return _error_exit(exc, args.format, kind="InvalidRequest")

    return wrapper


def _group_from_request(req: dict) -> StabilizerGroup:
    return StabilizerGroup.from_json_dict(req)


def _report_from_json(d: int, n: int, obj: dict) -> StabilizerReport:
    from .stabilizer import CssSplit, LogicalPair

    pairs = tuple(
        LogicalPair(
            int(p["divisor"]),
            PauliElement.from_json_dict({"d": d, "n": n, **p["z"]}),
            PauliElement.from_json_dict({"d": d, "n": n, **p["x"]}),
        )
        for p in obj.get("logical_operators", [])
    )
    css = obj.get("css")
    css_obj = None
    if css:
        css_obj = CssSplit(
            tuple(PauliElement.from_json_dict({"d": d, "n": n, **g}) for g in css["z_generators"]),
            tuple(PauliElement.from_json_dict({"d": d, "n": n, **g}) for g in css["x_generators"]),
        )
    cls = obj["classification"]
    kind = cls.split("(")[0]
    rank = int(cls.split("(")[1].rstrip(")")) if "(" in cls else None
    return StabilizerReport(
        d=d,
        n=n,
        cardinality=int(obj["cardinality"]),
        dim_protected=int(obj["dim_protected"]),
        quotient_divisors=tuple(obj["quotient_divisors"]),
        canonical_chain=tuple(obj["canonical_chain"]),
        kind=kind,
        rank=rank,
        logical_operators=pairs,
        css=css_obj,
    )


@_guard
def cmd_analyze(args) -> int:
    group = _group_from_request(_load_json(args.input))
    report = analyze(group)
    _emit(_wrap_report(report.to_json_dict()), args.format)
    return 0


@_guard
def cmd_canonicalize(args) -> int:
    group = _group_from_request(_load_json(args.input))
    conj = canonical_conjugation(group)
    payload = {
        "symplectic_map": [list(r) for r in conj.symplectic_map.entries],
        "generator_images": {
            "z": [p.to_json_dict() for p in conj.automorphism.z_images],
            "x": [p.to_json_dict() for p in conj.automorphism.x_images],
        },
        "phase_fix": conj.phase_fix.to_json_dict(),
        "conjugated_generators": [conj.apply(g).to_json_dict() for g in group.generators],
    }
    _emit(_wrap_report(payload), args.format)
    return 0


@_guard
def cmd_oracle_verify(args) -> int:
    req = _load_json(args.input)
    group = _group_from_request(req)
    report = _report_from_json(group.d, group.n, req["report"])
    verdict = verify_report(group, report, bound=args.bound)
    _emit(_wrap_report(verdict.to_json_dict()), args.format)
    return 0 if verdict.passed else 3


@_guard
def cmd_kitaev_build(args) -> int:
    graph = SurfaceGraph.from_json_dict(_load_json(args.graph))
    model = build_model(graph, args.d)
    group = model.stabilizer
    if args.shift or args.twist:
        from .kitaev import _freeze

        spec = _load_json(args.shift or args.twist)
        pairs = [ShiftPair.from_json_dict(p) for p in spec["pairs"]]
        fn = apply_shift if args.shift else apply_twist
        group = fn(model, _freeze(spec["source"]), pairs)
    report = analyze(group)
    payload = {
        "genus": graph.genus,
        "euler": graph.euler_characteristic,
        "n": model.n,
        "edge_order": [str(e.id) for e in graph.edges],
        "report": report.to_json_dict(),
    }
    if args.character:
        from .kitaev import charge_configuration
        from .stabilizer import CharacterMap

        chi = CharacterMap(tuple(int(x) for x in _load_json(args.character)["values"]))
        charges = charge_configuration(model, chi)
        payload["charges"] = {
            "electric": [
                {"vertex": str(s), "charge": c} for s, c in charges.electric.items()
            ],
            "magnetic": [
                {"face": f, "charge": c} for f, c in charges.magnetic.items()
            ],
        }
    if args.verify:
        verdict = verify_report(group, report, bound=args.bound)
        payload["oracle"] = verdict.to_json_dict()
        _emit(_wrap_report(payload), args.format)
        return 0 if verdict.passed else 3
    _emit(_wrap_report(payload), args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quditstab",
        description="Exact qudit stabiliser analysis over Z/dZ for arbitrary d.",
    )
    parser.add_argument("--version", action="version", version=f"quditstab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("analyze", help="analyse a stabiliser group from JSON")
    p.add_argument("--input", default="-", help="JSON file with {d, n, generators}; - for stdin")
    add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("canonicalize", help="conjugate a free group onto <Z_1..Z_k>")
    p.add_argument("--input", default="-")
    add_common(p)
    p.set_defaults(func=cmd_canonicalize)

    p = sub.add_parser("oracle", help="oracle subcommands")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    ov = osub.add_parser("verify", help="verify an analysis report by brute force")
    ov.add_argument("--input", default="-", help="JSON with {d, n, generators, report}")
    ov.add_argument("--bound", type=int, default=None,
                    help=f"state-space bound (default {oracle_bound()}, env QUDITSTAB_ORACLE_BOUND)")
    add_common(ov)
    ov.set_defaults(func=cmd_oracle_verify)

    p = sub.add_parser("kitaev", help="kitaev subcommands")
    ksub = p.add_subparsers(dest="kitaev_command", required=True)
    kb = ksub.add_parser("build", help="build and analyse a surface model")
    kb.add_argument("--graph", required=True, help="surface graph JSON file")
    kb.add_argument("--d", type=int, required=True)
    group = kb.add_mutually_exclusive_group()
    group.add_argument("--shift", help="shift spec JSON file")
    group.add_argument("--twist", help="twist spec JSON file")
    kb.add_argument("--verify", action="store_true", help="run the brute-force oracle")
    kb.add_argument("--bound", type=int, default=None)
    kb.add_argument(
        "--character",
        help="JSON file {values: [...]} over the plain model's generators; emits charges",
    )
    add_common(kb)
    kb.set_defaults(func=cmd_kitaev_build)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
