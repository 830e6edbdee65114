"""Summary table of maximum volumes per cross-section family."""

from __future__ import annotations

import math

from .curves import SheetSpec
from .optimize import (SolverConfig, cubic_bezier_problem, maximize_volume,
                       polyline_problem, quad_bezier_problem)
from .volume import circle_volume, rectangle_max, rhombus_max

SQRT2 = math.sqrt(2.0)


def table_rows(segments: int = 1000, include_square: bool = True,
               config: SolverConfig | None = None):
    """Maximum volumes for every family on the 1 x sqrt(2) sheet, in
    increasing order of volume; optionally appends the square-sheet polyline
    optimum (the starred table entry)."""
    config = config or SolverConfig()
    sheet = SheetSpec(1.0, SQRT2)
    h_rh, v_rh = rhombus_max()
    h_re, v_re = rectangle_max(sheet)
    rows = [
        {"shape": "rhombus", "volume": v_rh.value, "params": {"h": h_rh}},
        {"shape": "rectangle", "volume": v_re.value, "params": {"h": h_re}},
        {"shape": "circle", "volume": circle_volume(sheet).value, "params": {}},
    ]
    quad = maximize_volume(quad_bezier_problem(sheet), config)
    rows.append({"shape": "arch (quad-Bezier)", "volume": quad.volume,
                 "params": dict(zip(("a", "b", "h"), map(float, quad.params)))})
    cubic = maximize_volume(cubic_bezier_problem(sheet), config)
    rows.append({"shape": "arch (cubic-Bezier)", "volume": cubic.volume,
                 "params": dict(zip(("a", "b", "c", "d", "h"),
                                    map(float, cubic.params)))})
    poly = maximize_volume(polyline_problem(segments, sheet), config)
    row = {"shape": f"arch (polyline with {segments} segments)",
           "volume": poly.volume, "params": {"segments": segments}}
    if include_square:
        square = maximize_volume(polyline_problem(segments, SheetSpec(1.0, 1.0)),
                                 config)
        row["square_sheet_volume"] = square.volume
    rows.append(row)
    return rows


def format_markdown(rows) -> str:
    lines = [
        "| Cross-sectional shape | Maximum volume |",
        "|---|---|",
    ]
    for row in rows:
        volume = f"{row['volume']:.6f}"
        if "square_sheet_volume" in row:
            volume += f" ({row['square_sheet_volume']:.6f} *)"
        lines.append(f"| {row['shape']} | {volume} |")
    if any("square_sheet_volume" in row for row in rows):
        lines.append("")
        lines.append("\\* value for a square sheet of side 1.")
    return "\n".join(lines) + "\n"
