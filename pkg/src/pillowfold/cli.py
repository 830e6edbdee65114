"""Command-line interface.

Exit codes: 0 on success, 2 on a domain/validation failure, 1 on any other
error.  The PILLOWFOLD_THREADS environment variable caps internal (BLAS)
parallelism and is applied before numerical modules load.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys


def _apply_thread_cap():
    cap = os.environ.get("PILLOWFOLD_THREADS")
    if cap:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                    "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
            os.environ.setdefault(var, cap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pillowfold",
        description="Design, validate, fold and volume-optimize pillow boxes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the developability bound")
    p.add_argument("--spec", required=True)
    p.add_argument("--samples", type=int, default=10000)

    p = sub.add_parser("profile", help="cross-section profile as CSV")
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--out", required=True)

    p = sub.add_parser("fold", help="folded 3D mesh as Wavefront OBJ")
    p.add_argument("--spec", required=True)
    p.add_argument("--resolution", type=int, default=1000)
    p.add_argument("--theta1", type=float, default=None,
                   help="wall angle in degrees for the asymmetric variant")
    p.add_argument("--wall-depth", type=float, default=0.0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("volume", help="box volume")
    p.add_argument("--spec", required=True)
    p.add_argument("--method", choices=["quadrature", "mesh", "closed-form"],
                   default="quadrature")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--out", help="write a full-precision result document")

    p = sub.add_parser("optimize", help="maximize volume over a family")
    p.add_argument("--family", required=True,
                   choices=["quad-bezier", "cubic-bezier", "polyline"])
    p.add_argument("--segments", type=int, default=1000,
                   help="polyline segment count")
    p.add_argument("--sheet-length", type=float, default=math.sqrt(2.0))
    p.add_argument("--config", help="JSON file with solver settings")
    p.add_argument("--out", required=True)

    p = sub.add_parser("arc-max", help="best circular-arc profile")
    p.add_argument("--sheet-length", type=float, required=True)
    p.add_argument("--out")

    p = sub.add_parser("bag-volume", help="sealed-bag reference volume")
    p.add_argument("--width", type=float, required=True)
    p.add_argument("--height", type=float, required=True)
    p.add_argument("--out")

    p = sub.add_parser("pattern", help="crease pattern as SVG")
    p.add_argument("--spec", required=True)
    p.add_argument("--scale-mm", type=float, required=True)
    p.add_argument("--layout", choices=["fig7", "fig1"], default="fig7")
    p.add_argument("--out", required=True)

    p = sub.add_parser("table1", help="maximum volumes for every family")
    p.add_argument("--segments", type=int, default=1000)
    p.add_argument("--no-square", action="store_true",
                   help="skip the square-sheet polyline run")

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--port", type=int, default=8731)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--cors-origin", default=None)
    p.add_argument("--max-optimize-seconds", type=float, default=20.0)
    return parser


def _load_spec(path):
    from .serialize import parse_curve_spec
    with open(path, encoding="utf-8") as fh:
        return parse_curve_spec(fh.read())


def _emit_result(args, operation, spec_doc, result):
    from .serialize import atomic_write_text, result_document
    if getattr(args, "out", None):
        doc = result_document(operation, spec_doc, result)
        atomic_write_text(args.out, json.dumps(doc, indent=2) + "\n")


def _run(args) -> int:
    from .curves import SheetSpec
    from .serialize import (atomic_write_text, curve_spec_document,
                            result_document, write_obj, write_svg_pattern)
    from .fold import (AsymmetricParams, build_asymmetric_mesh, build_mesh,
                       compute_profile, validate)
    from .volume import (arc_max, paper_bag_volume, volume_mesh,
                         volume_quadrature)
    from .service import _closed_form

    if args.command == "validate":
        curve, sheet, _ = _load_spec(args.spec)
        report = validate(curve, args.samples)
        print(json.dumps(report.to_dict(), indent=2))
        return 0 if report.valid else 2

    if args.command == "profile":
        curve, sheet, _ = _load_spec(args.spec)
        profile = compute_profile(curve, args.n)
        pts = profile.points * sheet.width
        lines = ["x,z"] + [f"{x:.17g},{z:.17g}" for x, z in pts]
        atomic_write_text(args.out, "\n".join(lines) + "\n")
        print(f"profile: width = {profile.width * sheet.width:.6f}, "
              f"height = {profile.height * sheet.width:.6f} -> {args.out}")
        return 0

    if args.command == "fold":
        curve, sheet, _ = _load_spec(args.spec)
        if args.theta1 is not None:
            params = AsymmetricParams.from_theta1(
                math.radians(args.theta1), args.wall_depth)
            mesh = build_asymmetric_mesh(curve, sheet, params, args.resolution)
        else:
            mesh = build_mesh(curve, sheet, args.resolution)
        atomic_write_text(args.out, write_obj(mesh))
        print(f"mesh: {len(mesh.vertices)} vertices, {len(mesh.triangles)} "
              f"triangles, watertight={mesh.watertight} -> {args.out}")
        return 0

    if args.command == "volume":
        curve, sheet, _ = _load_spec(args.spec)
        if args.method == "quadrature":
            result = volume_quadrature(curve, sheet, args.n)
        elif args.method == "mesh":
            result = volume_mesh(build_mesh(curve, sheet, args.n))
        else:
            result = _closed_form(curve, sheet)
        print(f"volume = {result.value:.6f} ({result.method}, n={result.n})")
        _emit_result(args, "volume", curve_spec_document(curve, sheet),
                     result.to_dict())
        return 0

    if args.command == "optimize":
        from .optimize import (SolverConfig, cubic_bezier_problem,
                               maximize_volume, polyline_problem,
                               quad_bezier_problem)
        sheet = SheetSpec(1.0, args.sheet_length)
        if args.family == "quad-bezier":
            problem = quad_bezier_problem(sheet)
        elif args.family == "cubic-bezier":
            problem = cubic_bezier_problem(sheet)
        else:
            problem = polyline_problem(args.segments, sheet)
        settings = {}
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                settings = json.load(fh)
        result = maximize_volume(problem, SolverConfig(**settings))
        print(f"optimized {args.family}: volume = {result.volume:.6f} "
              f"(converged={result.converged}, iterations={result.iterations})")
        doc = result_document(
            "optimize",
            {"family": args.family, "sheet": {"width": 1.0,
                                              "length": args.sheet_length}},
            result.to_dict())
        atomic_write_text(args.out, json.dumps(doc, indent=2) + "\n")
        return 0

    if args.command == "arc-max":
        sheet = SheetSpec(1.0, args.sheet_length)
        theta, result = arc_max(sheet)
        print(f"arc maximum: volume = {result.value:.6f} at theta = {theta:.6f}")
        _emit_result(args, "arc-max",
                     {"family": "arc", "sheet": {"width": 1.0,
                                                 "length": args.sheet_length}},
                     {"theta": theta, **result.to_dict()})
        return 0

    if args.command == "bag-volume":
        result = paper_bag_volume(args.width, args.height)
        print(f"bag volume = {result.value:.6f}")
        _emit_result(args, "bag-volume",
                     {"width": args.width, "height": args.height},
                     result.to_dict())
        return 0

    if args.command == "pattern":
        curve, sheet, _ = _load_spec(args.spec)
        svg = write_svg_pattern(curve, sheet, args.scale_mm, layout=args.layout)
        atomic_write_text(args.out, svg)
        print(f"pattern -> {args.out}")
        return 0

    if args.command == "table1":
        from .report import format_markdown, table_rows
        rows = table_rows(args.segments, include_square=not args.no_square)
        print(format_markdown(rows), end="")
        return 0

    if args.command == "serve":
        import uvicorn
        from .service import create_app
        app = create_app(cors_origin=args.cors_origin,
                         max_optimize_seconds=args.max_optimize_seconds)
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    _apply_thread_cap()
    args = build_parser().parse_args(argv)
    from .errors import PillowfoldError
    try:
        return _run(args)
    except PillowfoldError as exc:
        print(json.dumps({"error": type(exc).__name__, "reason": str(exc)}),
              file=sys.stderr)
        return 2
    except OSError as exc:
        print(json.dumps({"error": "OSError", "reason": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
