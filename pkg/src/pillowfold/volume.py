"""Pillow-box volume: closed forms, quadrature of the volume functional, and
watertight-mesh integration.

The unified functional for a unit-width sheet of normalized length L is

    V[f] = 2 * integral_0^1 f(u) (L - 2 f(u)) sqrt(1 - f'(u)^2) du

which agrees exactly with the circle, rectangle and rhombus closed forms.
Physical volumes for width-w sheets scale by w^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import ArcCurve, CreaseCurve, PolylineCurve, SheetSpec, _BezierCurve
from .errors import DomainError, GeometryError, InvalidCurveError, NotWatertightError
from .fold import FoldedMesh, validate

SQRT2 = math.sqrt(2.0)
DEFAULT_N = 2000

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class VolumeResult:
    value: float
    method: str           # closed_form | quadrature | mesh
    n: int = 0

    def to_dict(self):
        return {"value": self.value, "method": self.method, "n": self.n}


def golden_section_max(fun, a: float, b: float, tol: float = 1e-10):
    """Golden-section maximization of a unimodal function on [a, b].

    Returns (x*, fun(x*)) with the bracket narrowed to tol.
    """
    h = b - a
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    yc, yd = fun(c), fun(d)
    while h > tol:
        h *= _INV_PHI
        if yc > yd:
            b, d, yd = d, c, yc
            c = a + _INV_PHI2 * h
            yc = fun(c)
        else:
            a, c, yc = c, d, yd
            d = a + _INV_PHI * h
            yd = fun(d)
    x = c if yc > yd else d
    return x, fun(x)


def _check_fits(curve: CreaseCurve, L: float):
    if L <= 2.0 * curve.max_height():
        raise GeometryError(
            f"normalized length {L:.6g} <= 2 * max crease height "
            f"{curve.max_height():.6g}; ends collide")


def _functional_midpoint(curve: CreaseCurve, L: float, n: int) -> float:
    """Composite-midpoint quadrature of the volume functional (unit width).

    Subinterval edges are the uniform n-grid plus the curve's slope
    breakpoints, so piecewise-linear families integrate without kink error.
    Bezier families integrate in t over the half-curve:
    V = 4 * integral_0^1 v (L - 2v) sqrt(u'^2 - v'^2) dt.
    """
    if isinstance(curve, _BezierCurve):
        curve.check_monotone()
        t = (np.arange(n) + 0.5) / n
        _, v = curve.point(t)
        du, dv = curve.derivative(t)
        rad = np.clip(du * du - dv * dv, 0.0, None)
        return float(4.0 * np.sum(v * (L - 2.0 * v) * np.sqrt(rad)) / n)
    edges = np.linspace(0.0, 1.0, n + 1)
    bps = curve.breakpoints()
    if bps:
        edges = np.union1d(edges, np.asarray(bps, dtype=float))
    widths = np.diff(edges)
    um = 0.5 * (edges[:-1] + edges[1:])
    f = np.asarray(curve.f(um), dtype=float)
    fp = np.asarray(curve.fprime(um), dtype=float)
    rad = np.clip(1.0 - fp * fp, 0.0, None)
    return float(2.0 * np.sum(f * (L - 2.0 * f) * np.sqrt(rad) * widths))


def volume_quadrature(curve: CreaseCurve, sheet: SheetSpec = SheetSpec(),
                      n: int = DEFAULT_N) -> VolumeResult:
    """Volume of the symmetric box folded from `curve` on `sheet`."""
    if n < 10:
        raise DomainError(f"need n >= 10 quadrature cells, got {n}")
    report = validate(curve, max(n, 2000))
    if not report.valid:
        raise InvalidCurveError(
            f"curve violates |f'| <= 1 (max slope {report.max_abs_slope:.6g})")
    L = sheet.normalized_length
    _check_fits(curve, L)
    value = _functional_midpoint(curve, L, n) * sheet.width**3
    return VolumeResult(value, "quadrature", n)


def _signed_volume(vertices: np.ndarray, triangles: np.ndarray) -> float:
    p0 = vertices[triangles[:, 0]]
    p1 = vertices[triangles[:, 1]]
    p2 = vertices[triangles[:, 2]]
    return float(np.einsum("ij,ij->i", p0, np.cross(p1, p2)).sum() / 6.0)


def volume_mesh(mesh: FoldedMesh) -> VolumeResult:
    """Enclosed volume by the divergence-theorem signed-tetrahedron sum.

    Requires a watertight, outward-oriented mesh; an empty (degenerate) mesh
    encloses volume 0.  Translation invariance of the sum is asserted as a
    leak check.
    """
    if mesh.is_empty:
        return VolumeResult(0.0, "mesh", 0)
    if not mesh.watertight:
        raise NotWatertightError("mesh is not watertight; volume undefined")
    v = _signed_volume(mesh.vertices, mesh.triangles)
    shifted = mesh.vertices + np.array([0.731201, -1.467829, 0.352818])
    v2 = _signed_volume(shifted, mesh.triangles)
    if abs(v - v2) > 1e-8 * max(1.0, abs(v)):
        raise NotWatertightError(
            f"volume changes under translation ({v:.3e} vs {v2:.3e}); mesh leaks")
    return VolumeResult(v, "mesh", len(mesh.triangles))


def circle_volume(sheet: SheetSpec = SheetSpec()) -> VolumeResult:
    """Closed form for the circular cross-section: L/pi - 16/(3 pi^3) at unit
    width (the sine-arc crease, profile radius 1/pi)."""
    L = sheet.normalized_length
    if L < 2.0 / math.pi:
        raise GeometryError(
            f"normalized length {L:.6g} < profile diameter 2/pi; ends collide")
    value = (L / math.pi - 16.0 / (3.0 * math.pi**3)) * sheet.width**3
    return VolumeResult(value, "closed_form")


def rectangle_volume(h: float, sheet: SheetSpec = SheetSpec()) -> VolumeResult:
    """Caramel-box prism of height 2h, width 1-2h, depth L-2h (unit width)."""
    L = sheet.normalized_length
    if not (0.0 <= h <= min(0.5, L / 2.0)):
        raise DomainError(
            f"rectangle h must lie in [0, min(1/2, L/2)], got {h}")
    value = 2.0 * h * (1.0 - 2.0 * h) * (L - 2.0 * h) * sheet.width**3
    return VolumeResult(value, "closed_form")


def rectangle_max(sheet: SheetSpec = SheetSpec()):
    """Maximizing plateau height (width units) and volume for the rectangle
    family.

    The stationary point of the cubic 2h(1-2h)(L-2h) solves
    12h^2 - 4(1+L)h + L = 0; for the sqrt(2) sheet this reduces to
    h* = 1/6 + 1/(3 sqrt(2)) - sqrt(3 - sqrt(2))/6.
    """
    L = sheet.normalized_length
    h_star = ((1.0 + L) - math.sqrt((1.0 + L) ** 2 - 3.0 * L)) / 6.0
    return h_star, rectangle_volume(h_star, sheet)


def rhombus_volume(h: float) -> VolumeResult:
    """Rhombic cross-section on the 1 x sqrt(2) sheet:
    V = 4 (sqrt(2)/2 w h - 2/3 h^2 w) with w = sqrt(1/4 - h^2)."""
    if not (0.0 <= h <= 0.5):
        raise DomainError(f"rhombus h must lie in [0, 1/2], got {h}")
    w = math.sqrt(max(0.25 - h * h, 0.0))
    value = 4.0 * (0.5 * SQRT2 * w * h - (2.0 / 3.0) * h * h * w)
    return VolumeResult(value, "closed_form")


def rhombus_max():
    """Numerical 1D maximization (golden section to 1e-10); there is no known
    closed form for the maximizer."""
    h_star, v_star = golden_section_max(lambda h: rhombus_volume(h).value, 0.0, 0.5)
    return h_star, VolumeResult(v_star, "closed_form")


def arc_volume(theta: float, sheet: SheetSpec = SheetSpec(),
               n: int = DEFAULT_N) -> VolumeResult:
    """Volume of the circular-arc profile family at half-angle theta."""
    return volume_quadrature(ArcCurve(theta), sheet, n)


def arc_max(sheet: SheetSpec = SheetSpec(), n: int = 20000):
    """Best arc half-angle and volume (golden section over (0, pi/2])."""
    theta_star, v_star = golden_section_max(
        lambda t: _functional_midpoint(ArcCurve(t), sheet.normalized_length, n),
        1e-9, math.pi / 2.0)
    return theta_star, VolumeResult(v_star * sheet.width**3, "quadrature", n)


def paper_bag_volume(w: float, h: float) -> VolumeResult:
    """Approximate maximal volume of a sealed w x h bag (teabag problem):
    V = w^3 (h/(pi w) - 0.142 (1 - 10^(-h/w)))."""
    if w <= 0.0 or h <= 0.0:
        raise DomainError(f"bag dimensions must be positive, got w={w}, h={h}")
    value = w**3 * (h / (math.pi * w) - 0.142 * (1.0 - 10.0 ** (-h / w)))
    return VolumeResult(value, "closed_form")


def _segment_integral(va, vb, du, L):
    """Exact integral of f(L - 2f) sqrt(1 - f'^2) over one linear segment."""
    slope = (vb - va) / du
    c = math.sqrt(max(1.0 - slope * slope, 0.0))
    return c * du * (L * (va + vb) / 2.0 - 2.0 * (va * va + va * vb + vb * vb) / 3.0)


def _polyline_half_volumes(nodes, values, L):
    """Exact (V_left, V_right) of 2*int f(L-2f)sqrt(1-f'^2) du split at u=1/2."""
    if 0.5 not in nodes:
        raise ValueError("node grid must contain u = 1/2")
    left = right = 0.0
    for a, b, va, vb in zip(nodes[:-1], nodes[1:], values[:-1], values[1:]):
        piece = 2.0 * _segment_integral(va, vb, b - a, L)
        if b <= 0.5:
            left += piece
        else:
            right += piece
    return left, right


def symmetrize_best_half(curve: CreaseCurve, sheet: SheetSpec = SheetSpec(),
                         resample: int = 2000) -> CreaseCurve:
    """Mirror the half of the curve that encloses more volume.

    An asymmetric crease can never beat its best half mirrored, so the output
    volume is >= the input volume.  Polyline inputs are handled exactly on a
    refined uniform grid; other families are first resampled to a polyline
    with `resample` segments.  An input whose halves already agree (to 1e-12)
    is returned unchanged.
    """
    report = validate(curve, 10000)
    if not report.valid:
        raise InvalidCurveError(
            f"curve violates |f'| <= 1 (max slope {report.max_abs_slope:.6g})")
    L = sheet.normalized_length
    if isinstance(curve, PolylineCurve):
        nodes, values = curve.node_arrays()
        n_seg = len(nodes) - 1
    else:
        n_seg = resample
        nodes = np.linspace(0.0, 1.0, n_seg + 1)
        values = np.asarray(curve.f(nodes), dtype=float)
    # refine to a uniform grid that contains the old nodes and u = 1/2
    fine = np.arange(2 * n_seg + 1) / (2.0 * n_seg)
    fine_values = np.interp(fine, nodes, values)
    v_left, v_right = _polyline_half_volumes(fine, fine_values, L)
    if abs(v_left - v_right) <= 1e-12:
        return curve
    half = fine_values[:n_seg + 1] if v_left >= v_right else fine_values[:n_seg - 1:-1]
    return PolylineCurve(list(half[1:]), symmetric=True)
