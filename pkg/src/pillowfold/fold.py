"""Developability validation, cross-section profiles, and folded 3D meshes.

The folded pillow box is built by mirror reflection: the top surface is a
cylinder z = f(u) swept along y, and each end wall is the mirror image of the
sheet material beyond a planar crease.  For the symmetric box the crease plane
is inclined at 45 degrees (y + z = L/2 at the near end); the asymmetric
variant reflects twice, across planes R1 and R2 whose section traces sit at
angles alpha1 and alpha2 to the horizontal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import CreaseCurve, SheetSpec, sample_arrays, _BezierCurve
from .errors import (DomainError, GeometryError, InvalidCurveError,
                     NonMonotoneError)

TOL_SLOPE = 1e-9
_RADICAND_FLOOR = -1e-8
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    max_abs_slope: float
    max_tangent_angle: float
    violations: list
    n_samples: int
    reason: str | None = None

    def to_dict(self):
        return {
            "valid": self.valid,
            "max_abs_slope": self.max_abs_slope,
            "max_tangent_angle": self.max_tangent_angle,
            "violations": [list(v) for v in self.violations],
            "n_samples": self.n_samples,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class CrossSectionProfile:
    points: np.ndarray  # (n+1, 2) of (x, z)
    width: float
    height: float


@dataclass
class FoldedMesh:
    vertices: np.ndarray          # (V, 3) float
    triangles: np.ndarray         # (T, 3) int, counterclockwise outward
    part_labels: list             # per-triangle: top|bottom|end_wall_near|end_wall_far
    watertight: bool

    @property
    def is_empty(self):
        return len(self.triangles) == 0


@dataclass(frozen=True)
class CreaseCurve3D:
    points: np.ndarray                       # (n+1, 3)
    plane: tuple                              # (point, unit normal)

    def planarity_residual(self) -> float:
        p0, n = self.plane
        return float(np.max(np.abs((self.points - np.asarray(p0)) @ np.asarray(n))))


@dataclass(frozen=True)
class AsymmetricParams:
    """Angles of the two reflection planes; theta1 + theta2 = pi,
    alpha1 = theta2/2, alpha2 = theta1/2 hold exactly by construction."""

    theta1: float
    theta2: float
    alpha1: float
    alpha2: float
    wall_depth: float = 0.0

    @classmethod
    def from_theta1(cls, theta1: float, wall_depth: float = 0.0):
        if not (0.0 < theta1 < math.pi):
            raise DomainError(f"theta1 must lie in (0, pi), got {theta1}")
        theta2 = math.pi - theta1
        return cls(theta1, theta2, theta2 / 2.0, theta1 / 2.0, wall_depth)


def _violation_intervals(grid, offending):
    """Maximal runs of offending samples as (u_lo, u_hi) intervals."""
    intervals = []
    start = None
    for i, bad in enumerate(offending):
        if bad and start is None:
            start = i
        elif not bad and start is not None:
            intervals.append((float(grid[start]), float(grid[i - 1])))
            start = None
    if start is not None:
        intervals.append((float(grid[start]), float(grid[-1])))
    return intervals


def validate(curve: CreaseCurve, n_samples: int = 10000) -> ValidationReport:
    """Check the developability bound |f'(u)| <= 1 (tangent within 45 degrees).

    Samples a uniform grid plus all polyline/ramp breakpoints.  A Bezier curve
    whose u(t) is not strictly increasing is reported invalid, not raised.
    """
    if n_samples < 2:
        raise DomainError(f"n_samples must be >= 2, got {n_samples}")
    grid = np.union1d(np.linspace(0.0, 1.0, n_samples),
                      np.asarray(curve.breakpoints(), dtype=float))
    try:
        slopes = np.abs(curve.fprime(grid))
    except NonMonotoneError as exc:
        return ValidationReport(False, math.inf, math.pi / 2.0,
                                [(0.0, 1.0)], len(grid), reason=str(exc))
    max_slope = float(np.max(slopes))
    offending = slopes > 1.0 + TOL_SLOPE
    return ValidationReport(
        valid=not bool(offending.any()),
        max_abs_slope=max_slope,
        max_tangent_angle=math.atan(max_slope),
        violations=_violation_intervals(grid, offending),
        n_samples=len(grid),
    )


def discrete_triangle_check(curve: CreaseCurve, delta_w: float) -> ValidationReport:
    """Stepped-rectangle developability test: per step, SQ^2 = dw^2 - df^2 >= 0.

    This is the Pythagorean form of the tangent bound on the discrete model;
    as delta_w -> 0 its verdict agrees with validate().
    """
    if not (0.0 < delta_w <= 0.5):
        raise DomainError(f"delta_w must lie in (0, 1/2], got {delta_w}")
    n = max(2, round(1.0 / delta_w))
    grid = np.linspace(0.0, 1.0, n + 1)
    f = np.asarray(curve.f(grid), dtype=float)
    df = np.diff(f)
    dw = 1.0 / n
    sq2 = dw * dw - df * df
    offending = sq2 < -1e-12
    max_chord = float(np.max(np.abs(df)) / dw)
    return ValidationReport(
        valid=not bool(offending.any()),
        max_abs_slope=max_chord,
        max_tangent_angle=math.atan(max_chord),
        violations=_violation_intervals(grid[:-1], offending),
        n_samples=n,
    )


def _require_valid(curve: CreaseCurve, n: int):
    report = validate(curve, max(n, 2000))
    if not report.valid:
        raise InvalidCurveError(
            f"curve violates |f'| <= 1 (max slope {report.max_abs_slope:.6g}"
            + (f"; {report.reason}" if report.reason else "") + ")")


def _clamped_sqrt(radicand):
    if np.min(radicand) < _RADICAND_FLOOR:
        raise InvalidCurveError(
            f"slope radicand {float(np.min(radicand)):.3g} below tolerance")
    return np.sqrt(np.clip(radicand, 0.0, None))


def _profile_x(curve: CreaseCurve, n: int):
    """Cumulative x(u) = integral of sqrt(1 - f'^2) du by the composite midpoint
    rule on the sampling grid (t-space midpoints for Bezier families).

    Cells are split at slope breakpoints so ramp/plateau families accumulate
    exact widths; the returned array still has one x per grid point.
    """
    if isinstance(curve, _BezierCurve):
        m = n // 2
        dx_parts = []
        for steps in (m, n - m):
            tm = (np.arange(steps) + 0.5) / steps
            du, dv = curve.derivative(tm)
            dx_parts.append(_clamped_sqrt(du * du - dv * dv) / steps)
        dx = np.concatenate([dx_parts[0], dx_parts[1][::-1]])
        return np.concatenate([[0.0], np.cumsum(dx)])
    grid = np.linspace(0.0, 1.0, n + 1)
    edges = grid
    bps = curve.breakpoints()
    if bps:
        edges = np.union1d(grid, np.asarray(bps, dtype=float))
    um = 0.5 * (edges[:-1] + edges[1:])
    fp = np.asarray(curve.fprime(um), dtype=float)
    fine_dx = _clamped_sqrt(1.0 - fp * fp) * np.diff(edges)
    dx = np.zeros(n)
    np.add.at(dx, np.clip(np.searchsorted(grid, um) - 1, 0, n - 1), fine_dx)
    return np.concatenate([[0.0], np.cumsum(dx)])


def compute_profile(curve: CreaseCurve, n: int = 2000) -> CrossSectionProfile:
    """Cross-section (x, z) profile of the folded top surface.

    Where |f'| = 1 (rectangle ramps) the profile is locally vertical and the
    strip contributes zero width, so a rectangle curve of plateau h yields
    width exactly 1 - 2h.
    """
    _require_valid(curve, n)
    u, f, _ = sample_arrays(curve, n)
    x = _profile_x(curve, n)
    points = np.column_stack([x, f])
    return CrossSectionProfile(points, float(x[-1]), float(np.max(f)))


class _MeshBuilder:
    """Accumulates triangles, fusing vertices by exact coordinate match."""

    def __init__(self):
        self._index = {}
        self.vertices = []
        self.triangles = []
        self.part_labels = []

    def vertex(self, x, y, z):
        key = (float(x) + 0.0, float(y) + 0.0, float(z) + 0.0)
        i = self._index.get(key)
        if i is None:
            i = len(self.vertices)
            self._index[key] = i
            self.vertices.append(key)
        return i

    def triangle(self, a, b, c, label):
        if a == b or b == c or a == c:
            return
        self.triangles.append((a, b, c))
        self.part_labels.append(label)

    def quad(self, p0, p1, p2, p3, label):
        """Two triangles (p0,p1,p2) and (p0,p2,p3); degenerate ones dropped."""
        i0, i1, i2, i3 = (self.vertex(*p) for p in (p0, p1, p2, p3))
        self.triangle(i0, i1, i2, label)
        self.triangle(i0, i2, i3, label)

    def build(self, scale=1.0) -> FoldedMesh:
        if not self.triangles:
            return FoldedMesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=int), [], False)
        verts = np.asarray(self.vertices, dtype=float) * scale
        tris = np.asarray(self.triangles, dtype=int)
        return FoldedMesh(verts, tris, list(self.part_labels),
                          check_watertight(verts, tris))


def check_watertight(vertices: np.ndarray, triangles: np.ndarray) -> bool:
    """Edge-manifold and orientation check: every directed edge appears exactly
    once with its reverse present, and V - E + F = 2."""
    if len(triangles) == 0:
        return False
    if not np.all(np.isfinite(vertices)):
        return False
    directed = {}
    for a, b, c in triangles:
        for e in ((a, b), (b, c), (c, a)):
            if e in directed:
                return False
            directed[e] = True
    for a, b in directed:
        if (b, a) not in directed:
            return False
    n_vertices = len(np.unique(triangles))
    n_edges = len(directed) // 2
    return n_vertices - n_edges + len(triangles) == 2


def _chord_x(u, f):
    """Discrete development isometry: dx_k = sqrt(du^2 - df^2) per strip."""
    du = np.diff(u)
    df = np.diff(f)
    return np.concatenate([[0.0], np.cumsum(np.sqrt(np.clip(du * du - df * df,
                                                            0.0, None)))])


def mesh_samples(curve: CreaseCurve, resolution: int):
    """(u, f) strip boundaries for mesh construction: the uniform sample grid
    with the curve's slope breakpoints inserted, so piecewise-linear creases
    fold to exact prisms."""
    if isinstance(curve, _BezierCurve):
        u, f, _ = sample_arrays(curve, resolution)
        return u, f
    grid = np.linspace(0.0, 1.0, resolution + 1)
    bps = curve.breakpoints()
    if bps:
        grid = np.union1d(grid, np.asarray(bps, dtype=float))
    return grid, np.asarray(curve.f(grid), dtype=float)


def build_mesh(curve: CreaseCurve, sheet: SheetSpec, resolution: int = 1000) -> FoldedMesh:
    """Watertight symmetric pillow box.

    Top surface (x(u), y, f(u)) for |y| <= L/2 - f(u), bottom its z-mirror,
    end walls (x(u), +-(L/2 - f(u)), z) for |z| <= f(u).  Strip x-steps use the
    chord rule sqrt(du^2 - df^2) so every mesh edge has exactly its
    development length.
    """
    if resolution < 4:
        raise DomainError(f"resolution must be >= 4, got {resolution}")
    _require_valid(curve, resolution)
    L = sheet.normalized_length
    fmax = curve.max_height()
    if fmax == 0.0:
        return FoldedMesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=int), [], False)
    if L <= 2.0 * fmax:
        raise GeometryError(
            f"sheet length {sheet.length} <= 2 * max crease height; ends collide")
    u, f = mesh_samples(curve, resolution)
    x = _chord_x(u, f)
    w = L / 2.0 - f

    b = _MeshBuilder()
    for k in range(len(u) - 1):
        x0, x1 = x[k], x[k + 1]
        f0, f1 = f[k], f[k + 1]
        w0, w1 = w[k], w[k + 1]
        # top: outward +z
        b.quad((x0, -w0, f0), (x1, -w1, f1), (x1, w1, f1), (x0, w0, f0), "top")
        # bottom: z-mirror, winding flipped
        b.quad((x0, -w0, -f0), (x0, w0, -f0), (x1, w1, -f1), (x1, -w1, -f1), "bottom")
        # near wall (y > 0): outward +y
        b.quad((x0, w0, -f0), (x0, w0, f0), (x1, w1, f1), (x1, w1, -f1),
               "end_wall_near")
        # far wall: y-mirror, winding flipped
        b.quad((x0, -w0, -f0), (x1, -w1, -f1), (x1, -w1, f1), (x0, -w0, f0),
               "end_wall_far")
    return b.build(scale=sheet.width)


def extract_crease_3d(curve: CreaseCurve, sheet: SheetSpec, n: int = 200) -> CreaseCurve3D:
    """Near-end top crease (x(u), L/2 - f(u), f(u)); lies in the 45-degree
    plane y + z = L/2 with normal (0, 1, 1)/sqrt(2)."""
    _require_valid(curve, n)
    u, f, _ = sample_arrays(curve, n)
    x = _profile_x(curve, n)
    L = sheet.normalized_length
    pts = np.column_stack([x, L / 2.0 - f, f]) * sheet.width
    plane = ((0.0, sheet.length / 2.0, 0.0),
             (0.0, 1.0 / _SQRT2, 1.0 / _SQRT2))
    return CreaseCurve3D(pts, plane)


def build_asymmetric_mesh(curve: CreaseCurve, sheet: SheetSpec,
                          params: AsymmetricParams,
                          resolution: int = 1000) -> FoldedMesh:
    """Open surface model of a box not symmetric about the horizontal plane.

    The top cylinder is reflected across crease plane R1 (section trace at
    angle alpha1 = theta2/2) into a slanted wall; wall material beyond plane
    R2 (trace at angle alpha2 = theta1/2) reflects again into a bottom piece
    whose rulings are horizontal.  The available material is the sheet end
    flap; wall_depth positions R2 so the bottom ruling at section u sits at
    z = wall_depth - f(u).  With theta1 = pi/2 and wall_depth 0 the output is
    the top sheet of the symmetric box (seam at z = 0).
    """
    if resolution < 4:
        raise DomainError(f"resolution must be >= 4, got {resolution}")
    _require_valid(curve, resolution)
    L = sheet.normalized_length
    fmax = curve.max_height()
    if fmax == 0.0:
        return FoldedMesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=int), [], False)
    a1 = params.alpha1
    sin1, cos1 = math.sin(a1), math.cos(a1)
    cot1 = cos1 / sin1
    sin2a1 = math.sin(2.0 * a1)
    if L / 2.0 <= fmax * cot1:
        raise GeometryError(
            f"crease planes meet: need length > 2 * max_f * cot(alpha1) "
            f"= {2.0 * fmax * cot1:.6g}")
    wd = params.wall_depth
    if wd < 0.0:
        raise GeometryError(f"wall_depth must be >= 0, got {wd}")
    if wd > 2.0 * fmax:
        raise GeometryError(
            f"wall_depth {wd} exceeds available surface (max wall z-extent "
            f"{2.0 * fmax:.6g}); reflections would self-intersect")

    u, f = mesh_samples(curve, resolution)
    x = _chord_x(u, f)
    y1 = L / 2.0 - f * cot1          # crease 1 (top -> wall)
    flap = f * cot1                  # developable length beyond crease 1
    s2 = (2.0 * f - wd) / sin2a1     # ruling length from crease 1 to plane R2
    engaged = (s2 >= 0.0) & (s2 < flap)
    cut = np.where(engaged, s2, flap)
    yq = y1 + cut * math.cos(2.0 * a1)
    zq = f - cut * sin2a1
    yb_end = np.maximum(yq - (flap - cut), 0.0)   # bottom capped at the midline

    b = _MeshBuilder()
    for k in range(len(u) - 1):
        x0, x1 = x[k], x[k + 1]
        f0, f1 = f[k], f[k + 1]
        # top: outward +z
        b.quad((x0, -y1[k], f0), (x1, -y1[k + 1], f1),
               (x1, y1[k + 1], f1), (x0, y1[k], f0), "top")
        # near wall between crease 1 and the cut (R2 or flap end)
        b.quad((x0, yq[k], zq[k]), (x0, y1[k], f0),
               (x1, y1[k + 1], f1), (x1, yq[k + 1], zq[k + 1]), "end_wall_near")
        # far wall: y-mirror, winding flipped
        b.quad((x0, -yq[k], zq[k]), (x1, -yq[k + 1], zq[k + 1]),
               (x1, -y1[k + 1], f1), (x0, -y1[k], f0), "end_wall_far")
        if engaged[k] and engaged[k + 1]:
            # bottom (double reflection): horizontal rulings, outward -z
            b.quad((x0, yq[k], zq[k]), (x1, yq[k + 1], zq[k + 1]),
                   (x1, yb_end[k + 1], zq[k + 1]), (x0, yb_end[k], zq[k]), "bottom")
            b.quad((x0, -yq[k], zq[k]), (x0, -yb_end[k], zq[k]),
                   (x1, -yb_end[k + 1], zq[k + 1]), (x1, -yq[k + 1], zq[k + 1]),
                   "bottom")
    return b.build(scale=sheet.width)
