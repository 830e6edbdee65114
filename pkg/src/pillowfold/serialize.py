"""Serialization: curve spec documents (JSON), result documents, Wavefront OBJ
meshes, and SVG crease patterns."""

from __future__ import annotations

import datetime
import json
import math
import os
import tempfile

import numpy as np

from . import __version__
from .curves import (CreaseCurve, SheetSpec, make_curve, sample_arrays)
from .errors import DomainError, InvalidCurveError, ParseError
from .fold import FoldedMesh, validate

_SPEC_FIELDS = {"family", "params", "sheet", "metadata"}
_SHEET_FIELDS = {"width", "length"}


def curve_spec_document(curve: CreaseCurve, sheet: SheetSpec,
                        metadata: dict | None = None) -> dict:
    doc = {
        "family": curve.family,
        "params": curve.params(),
        "sheet": {"width": sheet.width, "length": sheet.length},
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def write_curve_spec(curve: CreaseCurve, sheet: SheetSpec,
                     metadata: dict | None = None) -> str:
    """JSON text; floats serialize via repr so parse(write(doc)) round-trips
    exactly."""
    return json.dumps(curve_spec_document(curve, sheet, metadata), indent=2)


def parse_curve_spec(text: str):
    """Parse and validate a curve spec document -> (CreaseCurve, SheetSpec, metadata).

    Unknown fields are rejected; family parameter domains are enforced by the
    curve constructors (DomainError).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("curve spec must be a JSON object")
    unknown = set(doc) - _SPEC_FIELDS
    if unknown:
        raise ParseError(f"unknown fields in curve spec: {sorted(unknown)}")
    if "family" not in doc:
        raise ParseError("curve spec missing 'family'")
    sheet_doc = doc.get("sheet", {})
    if not isinstance(sheet_doc, dict):
        raise ParseError("'sheet' must be an object")
    unknown = set(sheet_doc) - _SHEET_FIELDS
    if unknown:
        raise ParseError(f"unknown fields in sheet: {sorted(unknown)}")
    sheet = SheetSpec(width=float(sheet_doc.get("width", 1.0)),
                      length=float(sheet_doc.get("length", math.sqrt(2.0))))
    curve = make_curve(doc["family"], doc.get("params", {}))
    return curve, sheet, doc.get("metadata", {})


def result_document(operation: str, spec_doc: dict, result: dict,
                    timestamp: str | None = None) -> dict:
    """Self-describing result record; identical inputs reproduce identical
    documents modulo the timestamp field."""
    return {
        "operation": operation,
        "input": spec_doc,
        "result": result,
        "tool_version": __version__,
        "timestamp": timestamp if timestamp is not None
        else datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def write_obj(mesh: FoldedMesh) -> str:
    """Wavefront OBJ text: `v x y z` (9 significant digits) then 1-based
    `f i j k` lines in construction order."""
    lines = ["# pillowfold mesh"]
    if mesh.is_empty:
        lines.append("# empty mesh (flat sheet encloses no volume)")
        return "\n".join(lines) + "\n"
    for x, y, z in mesh.vertices:
        lines.append(f"v {x:.9g} {y:.9g} {z:.9g}")
    for a, b, c in mesh.triangles:
        lines.append(f"f {a + 1} {b + 1} {c + 1}")
    return "\n".join(lines) + "\n"


def parse_obj(text: str) -> FoldedMesh:
    """Inverse of write_obj (triangles only), used for round-trip checks."""
    vertices, triangles = [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            vertices.append([float(p) for p in parts[1:4]])
        elif parts[0] == "f":
            triangles.append([int(p.split("/")[0]) - 1 for p in parts[1:4]])
    verts = np.asarray(vertices, dtype=float).reshape(-1, 3)
    tris = np.asarray(triangles, dtype=int).reshape(-1, 3)
    from .fold import check_watertight
    return FoldedMesh(verts, tris, ["unknown"] * len(tris),
                      check_watertight(verts, tris) if len(tris) else False)


def _svg_path(points, scale, x_off=0.0):
    return " ".join(
        ("M" if i == 0 else "L") + f" {(x + x_off) * scale:.6f} {y * scale:.6f}"
        for i, (x, y) in enumerate(points))


def write_svg_pattern(curve: CreaseCurve, sheet: SheetSpec, scale_mm: float,
                      layout: str = "fig7", n_samples: int = 200) -> str:
    """Crease pattern SVG: the unwrapped envelope rectangle with the four
    crease curves, cut boundary solid and creases dashed, units mm.

    The default layout lays the two width-halves of the wrapped envelope side
    by side (2w x L); each half carries the creases v = f(u) and v = L - f(u).
    layout="fig1" emits the same pattern rotated 90 degrees (glue tabs
    omitted).
    """
    if scale_mm <= 0.0:
        raise DomainError(f"scale_mm must be > 0, got {scale_mm}")
    if layout not in ("fig7", "fig1"):
        raise DomainError(f"layout must be 'fig7' or 'fig1', got {layout!r}")
    report = validate(curve, 2000)
    if not report.valid:
        raise InvalidCurveError("cannot draw pattern for a non-developable curve")
    u, f, _ = sample_arrays(curve, n_samples)
    w, L = sheet.width, sheet.normalized_length * sheet.width
    u = u * w
    f = f * w
    creases = []
    for x_off in (0.0, w):
        creases.append([(x + x_off, y) for x, y in zip(u, f)])
        creases.append([(x + x_off, y) for x, y in zip(u, L - f)])
    rect = [(0.0, 0.0), (2.0 * w, 0.0), (2.0 * w, L), (0.0, L), (0.0, 0.0)]
    if layout == "fig1":
        rect = [(y, x) for x, y in rect]
        creases = [[(y, x) for x, y in path] for path in creases]
    width_mm = max(p[0] for p in rect) * scale_mm
    height_mm = max(p[1] for p in rect) * scale_mm
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_mm:.6f}mm" '
        f'height="{height_mm:.6f}mm" '
        f'viewBox="0 0 {width_mm:.6f} {height_mm:.6f}">',
        f'<path d="{_svg_path(rect, scale_mm)}" fill="none" stroke="black" '
        f'stroke-width="0.5" class="cut"/>',
    ]
    for path in creases:
        parts.append(
            f'<path d="{_svg_path(path, scale_mm)}" fill="none" stroke="red" '
            f'stroke-width="0.3" stroke-dasharray="2 2" class="crease"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def atomic_write_text(path: str, text: str):
    """Write-temp-then-rename so partially written files are never observed."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
