"""Stateless HTTP facade over validate / profile / fold / volume / optimize.

Every route recomputes from the posted curve spec with the same functions the
CLI uses, so numeric outputs match the CLI exactly.  Malformed JSON is 400,
domain or validation failures are 422 with a machine-readable reason, and
unexpected errors are an opaque 500.
"""

from __future__ import annotations

import dataclasses
import json
import math
import threading

import numpy as np
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import __version__
from .curves import SheetSpec, family_names, make_curve
from .errors import (DomainError, GeometryError, InvalidCurveError,
                     NonMonotoneError, NotWatertightError, ParseError,
                     PillowfoldError)
from .fold import (AsymmetricParams, build_asymmetric_mesh, build_mesh,
                   compute_profile, validate)
from .optimize import (SolverConfig, cubic_bezier_problem, maximize_volume,
                       polyline_problem, quad_bezier_problem)
from .serialize import parse_curve_spec, write_obj, write_svg_pattern
from .volume import (circle_volume, rectangle_volume, rhombus_volume,
                     volume_mesh, volume_quadrature)

_FAMILY_CATALOG = {
    "sine-arc": {},
    "rectangle": {"h": {"min": 0.0, "max": 0.5}},
    "rhombus": {"h": {"min": 0.0, "max": 0.5}},
    "arc": {"theta": {"min": 0.0, "max": math.pi / 2.0, "exclusive_min": True}},
    "quad-bezier": {"a": {"min": 0.0, "max": 0.5, "exclusive": True},
                    "b": {"min": 0.0}, "h": {"min": 0.0}},
    "cubic-bezier": {"a": {}, "b": {"min": 0.0}, "c": {}, "d": {"min": 0.0},
                     "h": {"min": 0.0}},
    "polyline": {"heights": {"type": "array", "item_min": 0.0},
                 "symmetric": {"type": "boolean"}},
}


_SPEC_KEYS = ("family", "params", "sheet", "metadata")


def _spec_from_body(body: dict, options: tuple = ()):
    unknown = set(body) - set(_SPEC_KEYS) - set(options)
    if unknown:
        raise ParseError(f"unknown request fields: {sorted(unknown)}")
    spec = {k: body[k] for k in _SPEC_KEYS if k in body}
    return parse_curve_spec(json.dumps(spec))


def create_app(cors_origin: str | None = None,
               max_optimize_seconds: float = 20.0,
               max_concurrent_optimize: int = 2) -> FastAPI:
    app = FastAPI(title="pillowfold", version=__version__)
    if cors_origin:
        app.add_middleware(CORSMiddleware, allow_origins=[cors_origin],
                           allow_methods=["*"], allow_headers=["*"])
    optimize_slots = threading.BoundedSemaphore(max_concurrent_optimize)
    app.state.optimize_slots = optimize_slots

    @app.exception_handler(Exception)
    async def _unexpected(request, exc):
        return JSONResponse(status_code=500,
                            content={"error": "internal error"})

    async def _read_body(request: Request) -> dict:
        try:
            body = json.loads(await request.body())
        except json.JSONDecodeError:
            raise _BadRequest("request body is not valid JSON")
        if not isinstance(body, dict):
            raise _BadRequest("request body must be a JSON object")
        return body

    class _BadRequest(Exception):
        def __init__(self, reason):
            self.reason = reason

    @app.exception_handler(_BadRequest)
    async def _bad_request(request, exc):
        return JSONResponse(status_code=400, content={"error": exc.reason})

    for cls in (DomainError, InvalidCurveError, GeometryError, ParseError,
                NonMonotoneError, NotWatertightError):
        @app.exception_handler(cls)
        async def _domain(request, exc):
            return JSONResponse(status_code=422,
                                content={"error": type(exc).__name__,
                                         "reason": str(exc)})

    @app.get("/healthz")
    async def healthz():
        return JSONResponse(content="ok")

    @app.get("/api/families")
    async def families():
        return {"families": [
            {"name": name, "params": _FAMILY_CATALOG[name]}
            for name in family_names()
        ], "version": __version__}

    @app.post("/api/validate")
    async def api_validate(request: Request):
        body = await _read_body(request)
        curve, sheet, _ = _spec_from_body(body, options=("samples",))
        report = validate(curve, int(body.get("samples", 10000)))
        return {"operation": "validate", "version": __version__,
                **report.to_dict()}

    @app.post("/api/profile")
    async def api_profile(request: Request):
        body = await _read_body(request)
        curve, sheet, _ = _spec_from_body(body, options=("n",))
        profile = compute_profile(curve, int(body.get("n", 2000)))
        pts = profile.points * sheet.width
        return {"operation": "profile", "version": __version__,
                "x": [float(v) for v in pts[:, 0]],
                "z": [float(v) for v in pts[:, 1]],
                "width": profile.width * sheet.width,
                "height": profile.height * sheet.width}

    @app.post("/api/fold")
    async def api_fold(request: Request):
        body = await _read_body(request)
        curve, sheet, _ = _spec_from_body(
            body, options=("resolution", "theta1", "wall_depth"))
        resolution = int(body.get("resolution", 1000))
        if "theta1" in body and body["theta1"] is not None:
            params = AsymmetricParams.from_theta1(
                float(body["theta1"]), float(body.get("wall_depth", 0.0)))
            mesh = build_asymmetric_mesh(curve, sheet, params, resolution)
        else:
            mesh = build_mesh(curve, sheet, resolution)
        return {"operation": "fold", "version": __version__,
                "vertices": [float(v) for v in mesh.vertices.ravel()],
                "triangles": [int(t) for t in mesh.triangles.ravel()],
                "part_labels": list(mesh.part_labels),
                "watertight": mesh.watertight}

    @app.post("/api/volume")
    async def api_volume(request: Request):
        body = await _read_body(request)
        curve, sheet, _ = _spec_from_body(body, options=("method", "n"))
        method = body.get("method", "quadrature")
        n = int(body.get("n", 2000))
        if method == "quadrature":
            result = volume_quadrature(curve, sheet, n)
        elif method == "mesh":
            result = volume_mesh(build_mesh(curve, sheet, n))
        elif method == "closed-form":
            result = _closed_form(curve, sheet)
        else:
            raise _BadRequest(f"unknown method {method!r}")
        return {"operation": "volume", "version": __version__,
                **result.to_dict()}

    @app.post("/api/export/obj")
    async def api_export_obj(request: Request):
        body = await _read_body(request)
        curve, sheet, _ = _spec_from_body(
            body, options=("resolution", "theta1", "wall_depth"))
        resolution = int(body.get("resolution", 1000))
        if "theta1" in body and body["theta1"] is not None:
            params = AsymmetricParams.from_theta1(
                float(body["theta1"]), float(body.get("wall_depth", 0.0)))
            mesh = build_asymmetric_mesh(curve, sheet, params, resolution)
        else:
            mesh = build_mesh(curve, sheet, resolution)
        return PlainTextResponse(write_obj(mesh), media_type="text/plain")

    @app.post("/api/export/pattern")
    async def api_export_pattern(request: Request):
        body = await _read_body(request)
        curve, sheet, _ = _spec_from_body(body, options=("scale_mm", "layout"))
        svg = write_svg_pattern(curve, sheet,
                                float(body.get("scale_mm", 100.0)),
                                layout=body.get("layout", "fig7"))
        return PlainTextResponse(svg, media_type="image/svg+xml")

    @app.post("/api/optimize")
    async def api_optimize(request: Request):
        body = await _read_body(request)
        family = body.get("family")
        sheet_doc = body.get("sheet", {})
        sheet = SheetSpec(width=float(sheet_doc.get("width", 1.0)),
                          length=float(sheet_doc.get("length", math.sqrt(2.0))))
        budget = min(float(body.get("budget_seconds", max_optimize_seconds)),
                     max_optimize_seconds)
        if family == "quad-bezier":
            problem = quad_bezier_problem(sheet)
        elif family == "cubic-bezier":
            problem = cubic_bezier_problem(sheet)
        elif family == "polyline":
            problem = polyline_problem(int(body.get("segments", 100)), sheet,
                                       initial=body.get("initial"))
        else:
            raise _BadRequest(f"family {family!r} is not optimizable")
        if "initial" in body and body["initial"] is not None \
                and family in ("quad-bezier", "cubic-bezier"):
            problem = dataclasses.replace(
                problem, initial=np.asarray(body["initial"], dtype=float))
        if not optimize_slots.acquire(blocking=False):
            return JSONResponse(status_code=429,
                                content={"error": "too many optimize runs"})
        try:
            result = maximize_volume(problem, SolverConfig(time_budget=budget))
        finally:
            optimize_slots.release()
        payload = {"operation": "optimize", "version": __version__,
                   **result.to_dict()}
        if result.budget_exceeded:
            return JSONResponse(status_code=408, content=payload)
        return payload

    return app


def _closed_form(curve, sheet):
    family = curve.family
    if family == "sine-arc":
        return circle_volume(sheet)
    if family == "rectangle":
        return rectangle_volume(curve.h, sheet)
    if family == "rhombus":
        if abs(sheet.normalized_length - math.sqrt(2.0)) > 1e-12:
            raise DomainError(
                "rhombus closed form is defined for the sqrt(2) sheet only")
        return rhombus_volume(curve.h)
    raise DomainError(f"no closed-form volume for family {family!r}")
