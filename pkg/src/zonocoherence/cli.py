"""Command-line interface.

Exit codes: 0 on success, 2 on invalid input, 3 when an enumeration cap is
exceeded.  Every subcommand prints text by default and a single JSON
document with ``--format json``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .census import (
    PUBLISHED_TILING_COUNT,
    SweepRow,
    count_chambers,
    discriminantal,
    enumerate_tilings,
    is_coherent_tiling,
    sweep_to_csv,
    tiling_to_json,
    tiling_to_svg,
)
from .classify import classify
from .coherence import is_all_coherent, is_coherent
from .configfile import parse_config
from .configuration import CapExceeded, Configuration, ValidationError
from .rational import format_rational, parse_vector
from .strings import (
    DEFAULT_CAP,
    CellularString,
    enumerate_cellular_strings,
    enumerate_monotone_paths,
    flip_graph,
    q_distance_polynomial,
)

__all__ = ["main", "build_parser"]

_SIGN = {1: "+", -1: "-", 0: "0"}


class _Output:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, data: dict, text: str):
        if self.fmt == "json":
            self.stream.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
        else:
            self.stream.write(text if text.endswith("\n") else text + "\n")


def _load(args) -> Configuration:
    if not args.input:
        raise ValidationError("this subcommand needs --input FILE")
    if args.input == "-":
        return parse_config(sys.stdin.read())
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_config(text)


def _order(c: Configuration, text: str) -> list[str]:
    items = [x.strip() for x in text.replace(" ", ",").split(",") if x.strip()]
    unknown = [x for x in items if x not in c.labels]
    if unknown:
        raise ValidationError(f"unknown generator labels: {', '.join(unknown)}")
    return items


def _names(c: Configuration, order) -> list[str]:
    return [c.labels[e] for e in order]


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_chirotope(args, out: _Output):
    c = _load(args)
    m = c.matroid
    entries = [(_names(c, s), v) for s, v in sorted(m.chirotope().items())]
    data = {"rank": m.rank, "chirotope": [{"basis": b, "sign": _SIGN[v]} for b, v in entries]}
    text = "\n".join(f"{' '.join(b)}: {_SIGN[v]}" for b, v in entries)
    out.emit(data, text or "(rank 0)")


def cmd_covectors(args, out: _Output):
    c = _load(args)
    cov = [str(x) for x in c.matroid.covectors()]
    if args.max_elements is not None and len(cov) > args.max_elements:
        raise CapExceeded(f"{len(cov)} covectors exceed the cap of {args.max_elements}")
    topes = [str(x) for x in c.matroid.topes()]
    out.emit({"labels": list(c.labels), "covectors": cov, "count": len(cov), "topes": len(topes)},
             "\n".join(cov))


def cmd_circuits(args, out: _Output):
    c = _load(args)
    circ = [str(x) for x in c.matroid.circuits()]
    out.emit({"labels": list(c.labels), "circuits": circ, "count": len(circ)}, "\n".join(circ) or "(none)")


def cmd_paths(args, out: _Output):
    c = _load(args)
    paths = [_names(c, p) for p in enumerate_monotone_paths(c, cap=args.max_elements)]
    out.emit({"labels": list(c.labels), "paths": paths, "count": len(paths)},
             "\n".join(" ".join(p) for p in paths))


def cmd_strings(args, out: _Output):
    c = _load(args)
    cap = args.max_elements if args.max_elements is not None else DEFAULT_CAP
    ss = enumerate_cellular_strings(c, cap=cap)
    items = [str(s) for s in ss]
    out.emit({"labels": list(c.labels), "strings": items, "count": len(items)}, "\n".join(items))


def cmd_coherent(args, out: _Output):
    c = _load(args)
    try:
        s = CellularString.parse(args.string, c.labels)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    v = is_coherent(c, s)
    data = {"string": str(s), **v.to_json()}
    text = f"{s}: {'COHERENT' if v.coherent else 'INCOHERENT'}"
    if v.witness is not None:
        text += "\npsi = (" + ", ".join(format_rational(x) for x in v.witness) + ")"
    out.emit(data, text)


def cmd_all_coherent(args, out: _Output):
    c = _load(args)
    cap = args.max_elements if args.max_elements is not None else DEFAULT_CAP
    res = is_all_coherent(c, exhaustive=args.exhaustive, cap=cap)
    data = {"all_coherent": res.all_coherent, "checked": res.checked,
            "witness": None if res.witness is None else str(res.witness)}
    text = "ALL_COHERENT" if res.all_coherent else f"NOT_ALL_COHERENT\nwitness: {res.witness}"
    out.emit(data, text)


def cmd_classify(args, out: _Output):
    c = _load(args)
    cl = classify(c)
    text = str(cl)
    if not cl.all_coherent:
        if cl.witness is not None:
            text += f"\nwitness: {cl.witness} ({cl.witness_method})"
        elif cl.witness_omitted:
            text += "\nwitness omitted: too many monotone paths"
    out.emit(cl.to_json(), text)


def cmd_qcount(args, out: _Output):
    c = _load(args)
    base = _order(c, args.base)
    coeffs = q_distance_polynomial(c, base)
    out.emit({"base": base, "coefficients": coeffs}, "[" + ",".join(str(x) for x in coeffs) + "]")


def cmd_flip_graph(args, out: _Output):
    c = _load(args)
    g = flip_graph(c, enumerate_monotone_paths(c, cap=args.max_elements))
    if args.dot:
        out.stream.write(g.to_dot())
        return
    data = {
        "nodes": [_names(c, p) for p in g.nodes],
        "edges": [list(e) for e in g.edges],
        "is_cycle": g.is_cycle(),
    }
    text = [f"{len(g.nodes)} paths, {len(g.edges)} flips, single cycle: {g.is_cycle()}"]
    text += [f"{g.node_name(a)} -- {g.node_name(b)}" for a, b in g.edges]
    out.emit(data, "\n".join(text))


def cmd_chambers(args, out: _Output):
    samples = [parse_vector(v) for v in args.a]
    rows = [SweepRow(arr.a, count_chambers(arr)) for arr in map(discriminantal, samples)]
    if args.format == "csv":
        out.stream.write(sweep_to_csv(rows))
        return
    data = [{"a": [format_rational(x) for x in r.a], "chambers": r.chambers} for r in rows]
    out.emit({"results": data}, "\n".join(str(r.chambers) for r in rows))


def cmd_tilings(args, out: _Output):
    a = parse_vector(args.a) if args.a else tuple(range(1, args.n + 1))
    if len(a) != args.n:
        raise ValidationError(f"--a has {len(a)} entries but --n is {args.n}")
    tilings = enumerate_tilings(a)
    if args.max_elements is not None and len(tilings) > args.max_elements:
        raise CapExceeded(f"{len(tilings)} tilings exceed the cap of {args.max_elements}")
    coherent = [t for t in tilings if is_coherent_tiling(t)] if (args.coherent_only or args.n <= 6) else None
    chosen = coherent if args.coherent_only else tilings
    if args.svg:
        os.makedirs(args.svg, exist_ok=True)
        for k, t in enumerate(chosen):
            with open(os.path.join(args.svg, f"tiling_{k:04d}.svg"), "w", encoding="utf-8") as fh:
                fh.write(tiling_to_svg(t))
    data = {
        "n": args.n,
        "a": [format_rational(x) for x in a],
        "tilings": len(tilings),
        "coherent": None if coherent is None else len(coherent),
        "published_total": PUBLISHED_TILING_COUNT if args.n == 6 else None,
        "cells": [tiling_to_json(t)["cells"] for t in chosen],
    }
    text = [f"tilings: {len(tilings)}"]
    if coherent is not None:
        text.append(f"coherent: {len(coherent)}")
    if args.n == 6 and len(tilings) != PUBLISHED_TILING_COUNT:
        text.append(f"note: differs from the published total of {PUBLISHED_TILING_COUNT}")
    out.emit(data, "\n".join(text))


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE", help="configuration file ('-' for stdin)")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--max-elements", type=int, metavar="N", default=None,
                        help="cap on enumerated elements")

    parser = argparse.ArgumentParser(prog="zonocoherence",
                                     description="Monotone paths, cellular strings and coherence of zonotopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("chirotope", cmd_chirotope, "chirotope signs on the bases")
    add("covectors", cmd_covectors, "all covectors")
    add("circuits", cmd_circuits, "signed circuits")
    add("paths", cmd_paths, "monotone paths")
    add("strings", cmd_strings, "cellular strings")
    p = add("coherent", cmd_coherent, "coherence of one cellular string")
    p.add_argument("--string", required=True, help="blocks such as '{a,d}|{b,c}'")
    p = add("all-coherent", cmd_all_coherent, "decide all-coherence")
    p.add_argument("--exhaustive", action="store_true", help="also check every cellular string")
    add("classify", cmd_classify, "family classification")
    p = add("qcount", cmd_qcount, "q-polynomial of L2-distances from a base path")
    p.add_argument("--base", required=True, help="comma-separated generator labels")
    p = add("flip-graph", cmd_flip_graph, "flip graph of monotone paths")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    p = add("chambers", cmd_chambers, "chambers of a discriminantal arrangement")
    p.add_argument("--a", action="append", required=True, help="strictly increasing vector, e.g. 1,2,3,4,5,6")
    p = add("tilings", cmd_tilings, "rhombic tilings of a zonogon")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", default=None)
    p.add_argument("--coherent-only", action="store_true")
    p.add_argument("--svg", metavar="DIR", default=None, help="write one SVG per tiling")
    return parser


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    fmt = args.format
    if fmt == "csv" and args.command != "chambers":
        stderr.write("error: --format csv is only available for 'chambers'\n")
        return 2
    out = _Output(fmt, stdout)
    try:
        args.func(args, out)
    except CapExceeded as exc:
        stderr.write(f"error: {exc}\n")
        return 3
    except (ValidationError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        stderr.write(f"error: {msg}\n")
        return 2
    return 0


def run() -> None:
    sys.exit(main())
