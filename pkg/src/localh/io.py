"""JSON documents for triangulations and certificates.

Coordinates are written as rational strings such as ``"1/2"``; no floats
appear anywhere in either format.
"""

from __future__ import annotations

import json
from pathlib import Path

from .constructions import Certificate, RefinementStep
from .exact import format_rational, parse_rational
from .triangulation import ReferenceSimplex, Triangulation

FORMAT_VERSION = 1


class ParseError(ValueError):
    """A document is malformed; ``where`` names the offending field or line."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


class ValidationError(ValueError):
    """A document parsed but does not describe a valid triangulation."""

    def __init__(self, report):
        super().__init__("invalid triangulation: " + "; ".join(report.violations))
        self.report = report


def _point_out(p) -> list:
    return [format_rational(x) for x in p]


def _point_in(value, where: str) -> tuple:
    if not isinstance(value, list) or not value:
        raise ParseError(where, "expected a nonempty list of rational strings")
    out = []
    for k, x in enumerate(value):
        if not isinstance(x, str):
            raise ParseError(f"{where}[{k}]", f"expected a rational string, got {x!r}")
        try:
            out.append(parse_rational(x))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}[{k}]", f"malformed rational {x!r}") from exc
    return tuple(out)


def _points_in(value, where: str, dim: int | None = None) -> list:
    if not isinstance(value, list):
        raise ParseError(where, "expected a list of points")
    pts = [_point_in(p, f"{where}[{i}]") for i, p in enumerate(value)]
    for i, p in enumerate(pts):
        if dim is not None and len(p) != dim:
            raise ParseError(f"{where}[{i}]", f"expected {dim} coordinates, got {len(p)}")
    return pts


def _int_in(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(where, f"expected an integer, got {value!r}")
    return value


def _index_lists_in(value, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(where, "expected a list of index lists")
    out = []
    for i, c in enumerate(value):
        if not isinstance(c, list):
            raise ParseError(f"{where}[{i}]", "expected a list of indices")
        out.append([_int_in(v, f"{where}[{i}][{k}]") for k, v in enumerate(c)])
    return out


def _field(doc: dict, name: str, where: str = ""):
    if name not in doc:
        raise ParseError(where + name, "missing field")
    return doc[name]


def _check_version(doc, where=""):
    version = _int_in(_field(doc, "format_version", where), where + "format_version")
    if version != FORMAT_VERSION:
        raise ParseError(where + "format_version", f"unsupported version {version}")


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc


# --- triangulations -----------------------------------------------------------------


def triangulation_to_dict(t: Triangulation) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "ambient_dim": t.reference.ambient_dim,
        "reference": [_point_out(v) for v in t.reference.vertices],
        "points": [_point_out(p) for p in t.points],
        "cells": [list(c) for c in t.cells],
    }


def triangulation_from_dict(doc, *, validate: bool = True) -> Triangulation:
    """Build a triangulation from a parsed document.

    Raises ParseError for malformed content and ValidationError when the
    geometry is wrong.
    """
    if not isinstance(doc, dict):
        raise ParseError("document", "expected a JSON object")
    _check_version(doc)
    dim = _int_in(_field(doc, "ambient_dim"), "ambient_dim")
    ref = _points_in(_field(doc, "reference"), "reference", dim)
    pts = _points_in(_field(doc, "points"), "points", dim)
    cells = _index_lists_in(_field(doc, "cells"), "cells")
    try:
        t = Triangulation(ReferenceSimplex(ref), pts, cells)
    except ValueError as exc:
        raise ParseError("document", str(exc)) from exc
    if validate:
        report = t.validate()
        if not report:
            raise ValidationError(report)
    return t


def dumps(t: Triangulation) -> str:
    return json.dumps(triangulation_to_dict(t), indent=1) + "\n"


def loads(text: str, *, validate: bool = True) -> Triangulation:
    return triangulation_from_dict(_loads(text), validate=validate)


def save(t: Triangulation, path) -> None:
    Path(path).write_text(dumps(t))


def load(path, *, validate: bool = True) -> Triangulation:
    return loads(Path(path).read_text(), validate=validate)


# --- certificates -------------------------------------------------------------------


def certificate_to_dict(cert: Certificate) -> dict:
    tri = cert.triforce_points
    return {
        "format_version": FORMAT_VERSION,
        "base": cert.base,
        "reference": [_point_out(v) for v in cert.reference.vertices],
        "triforce_points": None if tri is None else [_point_out(p) for p in tri],
        "seed": cert.seed,
        "num_steps": len(cert.steps),
        "steps": [{
            "target_cell": list(s.target_cell),
            "apex": s.apex,
            "new_points": [_point_out(p) for p in s.new_points],
            "base_cells": [list(c) for c in s.base_cells],
        } for s in cert.steps],
    }


def certificate_from_dict(doc) -> Certificate:
    if not isinstance(doc, dict):
        raise ParseError("document", "expected a JSON object")
    _check_version(doc)
    base = _field(doc, "base")
    ref = _points_in(_field(doc, "reference"), "reference")
    tri = doc.get("triforce_points")
    if tri is not None:
        tri = _points_in(tri, "triforce_points", len(ref[0]) if ref else None)
        if len(tri) != 3:
            raise ParseError("triforce_points", "expected three points")
    seed = doc.get("seed")
    if seed is not None:
        seed = _int_in(seed, "seed")
    raw_steps = _field(doc, "steps")
    if not isinstance(raw_steps, list):
        raise ParseError("steps", "expected a list")
    steps = []
    for i, s in enumerate(raw_steps):
        where = f"steps[{i}]."
        if not isinstance(s, dict):
            raise ParseError(f"steps[{i}]", "expected an object")
        cell = _index_lists_in([_field(s, "target_cell", where)], where + "target_cell")[0]
        apex = _int_in(_field(s, "apex", where), where + "apex")
        new = _points_in(_field(s, "new_points", where), where + "new_points")
        cells = _index_lists_in(_field(s, "base_cells", where), where + "base_cells")
        steps.append(RefinementStep(tuple(cell), apex, tuple(new), tuple(map(tuple, cells))))
    if "num_steps" in doc and _int_in(doc["num_steps"], "num_steps") != len(steps):
        raise ParseError("num_steps", f"says {doc['num_steps']} but {len(steps)} steps are listed")
    try:
        return Certificate(base, ReferenceSimplex(ref), steps, tri, seed)
    except ValueError as exc:
        raise ParseError("document", str(exc)) from exc


def dumps_certificate(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=1) + "\n"


def loads_certificate(text: str) -> Certificate:
    return certificate_from_dict(_loads(text))


def save_certificate(cert: Certificate, path) -> None:
    Path(path).write_text(dumps_certificate(cert))


def load_certificate(path) -> Certificate:
    return loads_certificate(Path(path).read_text())
