"""Command line interface.

Exit status is 0 on success, 1 when a checked property fails, and 2 for
usage errors and unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .constructions import (
    TRIFORCE,
    TRIVIAL,
    RefinementError,
    cone,
    join,
    random_iterated,
    segment_family,
    triforce,
    trivial,
)
from .decomposition import DecompositionError, decompose, verify_certificate
from .graph import (
    PreconditionError,
    check_component_edge_bound,
    check_components_are_trees,
    check_no_other_components,
    component_reports,
    internal_edge_graph,
    is_connected_dim2,
    pyramid_facets,
)
from .harness import HARNESSES, run_harness
from .local_h import LocalHMismatch, f_vector, flag_counts, h_polynomial, local_h

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load(path, validate=True):
    try:
        return io.load(path, validate=validate)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_validate(args) -> int:
    t = _load(args.file, validate=False)
    report = t.validate()
    _emit(args, {"valid": report.ok, "violations": report.violations},
          "valid" if report.ok else "\n".join(["invalid"] + report.violations))
    return OK if report.ok else FAILED


def cmd_fvector(args) -> int:
    f = f_vector(_load(args.file))
    _emit(args, {"f_vector": list(f)}, " ".join(map(str, f)))
    return OK


def cmd_hpoly(args) -> int:
    h = h_polynomial(_load(args.file))
    _emit(args, {"h": h.to_json()}, str(h))
    return OK


def cmd_localh(args) -> int:
    t = _load(args.file)
    try:
        ell = local_h(t, args.method)
    except LocalHMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    _emit(args, {"local_h": ell.to_json(), "method": args.method}, str(ell))
    return OK


def cmd_flags(args) -> int:
    t = _load(args.file)
    fc = flag_counts(t)
    rows = fc.as_rows()
    lines = ["i\\j " + " ".join(f"{j:>4}" for j in range(-1, t.d))]
    for i, row in zip(range(-1, t.d), rows):
        lines.append(f"{i:>3} " + " ".join(f"{v:>4}" for v in row))
    _emit(args, {"d": t.d, "rows": rows}, "\n".join(lines))
    return OK


def cmd_graph(args) -> int:
    t = _load(args.file)
    g = internal_edge_graph(t)
    if args.dot:
        dot = g.to_dot(t)
        if args.dot == "-":
            sys.stdout.write(dot)
        else:
            with open(args.dot, "w") as fh:
                fh.write(dot)
    reports = component_reports(g, t)
    text = [f"vertices: {len(g.vertices)}", f"edges: {len(g.edges)}",
            f"components: {len(reports)}"]
    for r in reports:
        text.append(f"  component {r.component_id}: {r.vertex_count} vertices, "
                    f"{r.edge_count} edges, euler characteristic {r.euler_characteristic}")
    if not (args.dot == "-" and not args.json):
        _emit(args, {"vertices": g.vertices, "edges": [list(e) for e in g.edges],
                     "excess": {str(v): e for v, e in sorted(g.excess.items())},
                     "components": [r.to_json() for r in reports]}, "\n".join(text))
    return OK


def cmd_classify(args) -> int:
    t = _load(args.file)
    g = internal_edge_graph(t)
    reports = component_reports(g, t)
    checks = {}
    for name, fn in (("no_other_components", check_no_other_components),
                     ("components_are_trees", check_components_are_trees),
                     ("component_edge_bound", check_component_edge_bound),
                     ("connected", is_connected_dim2)):
        try:
            c = fn(t)
        except PreconditionError as exc:
            checks[name] = {"applicable": False, "reason": str(exc)}
            continue
        witness = c.witness.to_json() if hasattr(c.witness, "to_json") else c.witness
        checks[name] = {"applicable": True, "ok": c.ok, "witness": witness}
    lines = [f"component {r.component_id}: {r.classification}" for r in reports] or ["no interior edges"]
    for name, c in checks.items():
        if not c["applicable"]:
            lines.append(f"{name}: not applicable ({c['reason']})")
        else:
            lines.append(f"{name}: {'true' if c['ok'] else 'FALSE'}"
                         + ("" if c["ok"] else f" witness={c['witness']}"))
    _emit(args, {"components": [r.to_json() for r in reports], "checks": checks},
          "\n".join(lines))
    failed = any(c["applicable"] and not c["ok"] for c in checks.values())
    return FAILED if failed else OK


def cmd_pyramids(args) -> int:
    reps = pyramid_facets(_load(args.file))
    lines = []
    for r in reps:
        if r.is_pyramid:
            lines.append(f"{list(r.cell)}: pyramid over face {list(r.face)} with apex {r.apex}")
        else:
            lines.append(f"{list(r.cell)}: not a pyramid")
    n = sum(1 for r in reps if not r.is_pyramid)
    lines.append(f"non-pyramid cells: {n}")
    _emit(args, {"non_pyramid": n, "cells": [
        {"cell": list(r.cell), "is_pyramid": r.is_pyramid,
         "face": None if r.face is None else list(r.face), "apex": r.apex} for r in reps]},
        "\n".join(lines))
    return OK


def cmd_generate(args) -> int:
    kind, rest = args.what[0], args.what[1:]
    cert = None

    def need(n):
        if len(rest) != n:
            raise UsageError(f"generate {kind} takes {n} argument(s)")

    def as_int(s):
        try:
            return int(s)
        except ValueError as exc:
            raise UsageError(f"expected an integer, got {s!r}") from exc

    if kind == "trivial":
        need(1)
        t = trivial(as_int(rest[0]))
    elif kind == "triforce":
        need(0)
        t = triforce()
    elif kind == "segment":
        need(1)
        t = segment_family(as_int(rest[0]))
    elif kind == "cone":
        need(1)
        t = cone(_load(rest[0]))
    elif kind == "join":
        need(2)
        t = join(_load(rest[0]), _load(rest[1]))
    elif kind == "random":
        need(3)
        base = rest[0]
        if base not in (TRIVIAL, TRIFORCE):
            raise UsageError(f"unknown base {base!r}")
        t, cert = random_iterated(base, as_int(rest[1]), as_int(rest[2]), d=args.dim)
    else:
        raise UsageError(f"unknown generator {kind!r}")
    io.save(t, args.output)
    if args.cert:
        if cert is None:
            raise UsageError("--cert is only available for random generation")
        io.save_certificate(cert, args.cert)
    _emit(args, {"output": args.output, "d": t.d, "points": len(t.points),
                 "cells": len(t.cells)},
          f"wrote {args.output}: d={t.d}, {len(t.points)} points, {len(t.cells)} cells")
    return OK


def cmd_decompose(args) -> int:
    t = _load(args.file)
    try:
        cert = decompose(t)
    except DecompositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    io.save_certificate(cert, args.output)
    _emit(args, {"output": args.output, "base": cert.base, "num_steps": len(cert.steps)},
          f"wrote {args.output}: base {cert.base}, {len(cert.steps)} steps")
    return OK


def cmd_verify(args) -> int:
    cert = io.load_certificate(args.cert)
    t = _load(args.file)
    res = verify_certificate(cert, t)
    text = "verified" if res.ok else "\n".join(
        ["FAILED" + ("" if res.failed_step is None else f" at step {res.failed_step}")]
        + res.diff)
    _emit(args, {"ok": res.ok, "failed_step": res.failed_step, "diff": res.diff}, text)
    return OK if res.ok else FAILED


def cmd_harness(args) -> int:
    res = run_harness(args.name, args.trials, args.seed)
    lines = [res.summary()] + [f"  {k}: {m}" for k, m in res.failures[:20]]
    _emit(args, res.to_json(), "\n".join(lines))
    return OK if res.ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="localh", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, file=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if file:
            sp.add_argument("file", help="triangulation JSON document")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check all triangulation invariants")
    add("fvector", cmd_fvector, "face counts f_-1, ..., f_{d-1}")
    add("hpoly", cmd_hpoly, "h-polynomial")
    sp = add("localh", cmd_localh, "local h-polynomial")
    sp.add_argument("--method", choices=("mobius", "excess", "both"), default="both")
    add("flags", cmd_flags, "face counts by carrier dimension")
    sp = add("graph", cmd_graph, "internal edge graph")
    sp.add_argument("--dot", metavar="PATH", help="write DOT export ('-' for stdout)")
    add("classify", cmd_classify, "component classification and structural checks")
    add("pyramids", cmd_pyramids, "pyramid report per cell")
    sp = add("generate", cmd_generate, "build a triangulation", file=False)
    sp.add_argument("what", nargs="+", metavar="KIND [ARGS]",
                    help="trivial D | triforce | segment N | cone FILE | join FILE FILE "
                         "| random BASE STEPS SEED")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--cert", metavar="PATH", help="also write the generating certificate")
    sp.add_argument("--dim", type=int, default=3,
                    help="number of reference vertices for 'random trivial' (default 3)")
    sp = add("decompose", cmd_decompose, "certificate for a triangulation with zero local h")
    sp.add_argument("-o", "--output", required=True)
    sp = add("verify", cmd_verify, "replay a certificate against a triangulation", file=False)
    sp.add_argument("cert")
    sp.add_argument("file")
    sp = add("harness", cmd_harness, "run a property harness", file=False)
    sp.add_argument("name", choices=sorted(HARNESSES))
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (UsageError, io.ParseError, io.ValidationError, RefinementError,
            PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
