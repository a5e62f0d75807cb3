"""Command-line surface.

Exit codes: 0 success, 1 rejected input (domain errors), 2 usage errors,
3 oracle table mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import brauer, closure, ortho, render
from .homs import biperp, lsupp, part_of, rsupp
from .model import (
    DomainError,
    Params,
    canonical,
    format_vertex,
    parse_vertex,
)
from .oracle import WindowSpec, reproduce_frozen_counts


def _params(args) -> Params:
    if args.p is None or args.q is None:
        raise DomainError("this command needs --p and --q")
    return Params(args.p, args.q)


def _load_set(value: str):
    """A vertex set: JSON array (inline or in a file) of vertex strings, or
    an inline ';'-separated list."""
    if value.lstrip().startswith("["):
        names = json.loads(value)
    elif os.path.exists(value):
        with open(value, "r", encoding="utf-8") as fh:
            names = json.load(fh)
    else:
        names = [piece for piece in value.split(";") if piece.strip()]
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise DomainError("vertex sets are JSON arrays of vertex strings")
    return [parse_vertex(s) for s in names]


def _emit(doc, args) -> str:
    return json.dumps(doc, sort_keys=True,
                      indent=2 if getattr(args, "pretty", False) else None)


def _fmt_vertices(vs, P: Params) -> list[str]:
    return [format_vertex(canonical(v, P)) for v in vs]


def _cmd_classify(args) -> int:
    with open(args.graph, "r", encoding="utf-8") as fh:
        doc = fh.read()
    cls = brauer.classify(brauer.parse_graph(doc))
    print(json.dumps(cls.to_json(), separators=(",", ":")))
    return 0


def _cmd_algebra(args) -> int:
    with open(args.graph, "r", encoding="utf-8") as fh:
        doc = fh.read()
    qp = brauer.build_quiver(brauer.parse_graph(doc))
    if args.emit == "json":
        print(_emit({
            "vertices": list(qp.quiver_vertices),
            "arrows": [
                {"name": a.name, "source": a.source, "target": a.target,
                 "owner": a.owner}
                for a in qp.arrows
            ],
            "relations": {
                "typeI": [r.display() for r in qp.type_i],
                "typeII": [r.display() for r in qp.type_ii],
                "typeIII": [r.display() for r in qp.type_iii],
            },
        }, args))
    else:
        sys.stdout.write(brauer.emit_quiver_dot(qp))
    return 0


def _window_members(report, P: Params, periods: int) -> dict:
    w = WindowSpec.periods(P, periods)
    out: dict[str, list[str]] = {k: [] for k in ("e0", "e1", "u0", "u1", "p0", "p1")}
    for v in w.vertices():
        if report.contains(v):
            out[part_of(v)].append(format_vertex(v))
    return out


def _cmd_supports(args) -> int:
    P = _params(args)
    members = _load_set(args.set)
    rows = []
    for v in members:
        rows.append({
            "vertex": format_vertex(canonical(v, P)),
            "rsupp": rsupp(v, P).to_json(),
            "lsupp": lsupp(v, P).to_json(),
        })
    print(_emit(rows, args))
    return 0


def _cmd_biperp(args) -> int:
    P = _params(args)
    members = _load_set(args.set)
    report = biperp(members, P)
    doc = report.to_json()
    doc["set"] = _fmt_vertices(members, P)
    doc["windowMembers"] = _window_members(report, P, args.window)
    print(_emit(doc, args))
    return 0


def _cmd_enumerate_max(args) -> int:
    P = _params(args)
    seed = _load_set(args.set)
    parts = None
    if args.parts:
        parts = frozenset(args.parts.split(","))
    systems = ortho.maximal_systems_containing(seed, P, parts=parts)
    doc = ortho.enumeration_report(systems, include_systems=True)
    print(_emit(doc, args))
    return 0


def _cmd_certify_sms(args) -> int:
    P = _params(args)
    members = _load_set(args.set)
    window = None
    if args.window != 1:
        base = closure.default_window(members, P)
        pad = (args.window - 1) * (P.p + P.q)
        window = closure.ClosureWindow(
            P, base.x_lo - pad, base.x_hi + pad, base.y_lo - pad,
            base.y_hi + pad, base.tube_ht_cap + (args.window - 1) * max(P.p, P.q))
    doc = closure.certify_sms(members, P, window)
    report = ortho.maximality(members, P)
    doc["maximal"] = report.is_maximal
    if doc["certified"]:
        doc["corollary"] = ("extension closure of the certified system is "
                            "functorially finite")
    trace = doc.pop("trace")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for line in closure.trace_json_lines(trace):
                fh.write(line + "\n")
    doc.pop("window")
    print(_emit(doc, args))
    return 0


def _cmd_oracle_check(args) -> int:
    rows = reproduce_frozen_counts()
    if args.emit == "json":
        print(_emit(rows, args))
    else:
        for row in rows:
            print("%s %s (expected %r, got %r)"
                  % ("PASS" if row["pass"] else "FAIL", row["scenario"],
                     row["expected"], row["actual"]))
    return 0 if all(row["pass"] for row in rows) else 3


def _cmd_render(args) -> int:
    P = _params(args)
    w = WindowSpec.periods(P, args.window)
    highlights = {}
    if args.set:
        highlights["set"] = frozenset(
            canonical(v, P) for v in _load_set(args.set))
    spec = render.RenderSpec(P, args.part, w, highlights, args.emit)
    if args.emit == "json":
        print(_emit(render.layout_json(spec), args))
    else:
        sys.stdout.write(render.render(spec))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="arq2d",
        description="stable quiver calculator for 2-domestic "
                    "symmetric special biserial algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, window_default=2):
        sp.add_argument("--p", type=int, default=None)
        sp.add_argument("--q", type=int, default=None)
        sp.add_argument("--window", type=int, default=window_default,
                        help="window size in periods")
        sp.add_argument("--pretty", action="store_true")

    sp = sub.add_parser("classify", help="domestic type of a graph document")
    sp.add_argument("graph")
    sp.set_defaults(fn=_cmd_classify)

    sp = sub.add_parser("algebra", help="quiver presentation of a graph")
    sp.add_argument("graph")
    sp.add_argument("--emit", choices=("dot", "json"), default="dot")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(fn=_cmd_algebra)

    sp = sub.add_parser("supports", help="hom supports of vertices")
    common(sp)
    sp.add_argument("--set", required=True)
    sp.set_defaults(fn=_cmd_supports)

    sp = sub.add_parser("biperp", help="bi-perpendicular category of a set")
    common(sp)
    sp.add_argument("--set", required=True)
    sp.set_defaults(fn=_cmd_biperp)

    sp = sub.add_parser("enumerate-max",
                        help="maximal orthogonal systems through a seed")
    common(sp)
    sp.add_argument("--set", required=True)
    sp.add_argument("--parts", default=None,
                    help="comma list of parts to draw candidates from")
    sp.set_defaults(fn=_cmd_enumerate_max)

    sp = sub.add_parser("certify-sms",
                        help="extension-closure certificate for a system")
    common(sp, window_default=1)
    sp.add_argument("--set", required=True)
    sp.add_argument("--trace", default=None,
                    help="write the derivation trace to this file")
    sp.set_defaults(fn=_cmd_certify_sms)

    sp = sub.add_parser("oracle-check", help="replay the frozen count table")
    sp.add_argument("--emit", choices=("text", "json"), default="text")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(fn=_cmd_oracle_check)

    sp = sub.add_parser("render", help="draw one component part")
    common(sp)
    sp.add_argument("part", choices=render.PARTS)
    sp.add_argument("--set", default=None, help="highlight these vertices")
    sp.add_argument("--emit", choices=("dot", "svg", "tikz", "json"),
                    default="svg")
    sp.set_defaults(fn=_cmd_render)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print("error: invalid JSON input: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
