"""Crease-curve families for pillow boxes.

Every family defines a crease height function f(u) on the normalized
development coordinate u in [0, 1] with f(0) = f(1) = 0.  Heights are stored
in sheet-width units (width 1); a non-unit sheet width rescales the physical
curve as F(U) = width * f(U / width).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NonMonotoneError

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SheetSpec:
    """Rectangular sheet: width (crease direction) by length (ruling direction)."""

    width: float = 1.0
    length: float = SQRT2

    def __post_init__(self):
        if not (self.width > 0.0):
            raise DomainError(f"sheet width must be > 0, got {self.width}")
        if not (self.length > 0.0):
            raise DomainError(f"sheet length must be > 0, got {self.length}")

    @property
    def normalized_length(self) -> float:
        """Length in width units; the paper's canonical sheets are 1 x sqrt(2) and 1 x 1."""
        return self.length / self.width


@dataclass(frozen=True)
class CurveSample:
    u: float
    f: float
    fprime: float


@dataclass(frozen=True)
class BezierState:
    """Position and parametric derivative of a Bezier half-curve at parameter t."""

    t: float
    u: float
    v: float
    du: float
    dv: float


class CreaseCurve:
    """Base class; subclasses implement vectorized f(u) and fprime(u)."""

    family: str = ""
    symmetric: bool = True

    def f(self, u):
        raise NotImplementedError

    def fprime(self, u):
        raise NotImplementedError

    def max_height(self) -> float:
        raise NotImplementedError

    def breakpoints(self):
        """Interior u where f' jumps (empty for smooth families)."""
        return []

    def params(self) -> dict:
        return {}

    def sample_at(self, u: float) -> CurveSample:
        if not (0.0 <= u <= 1.0):
            raise DomainError(f"u must lie in [0, 1], got {u}")
        return CurveSample(u, float(self.f(u)), float(self.fprime(u)))

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in self.params().items())
        return f"{type(self).__name__}({inner})"


def _zero_at_ends(u, values):
    """f(0) = f(1) = 0 must hold exactly, not to roundoff (mesh seams fuse
    vertices by exact coordinate match)."""
    return np.where((u == 0.0) | (u == 1.0), 0.0, values)


class SineArc(CreaseCurve):
    """f(u) = sin(pi u)/pi; folds to a circular cross-section of radius 1/pi."""

    family = "sine-arc"

    def f(self, u):
        u = np.asarray(u, dtype=float)
        return _zero_at_ends(u, np.sin(np.pi * u) / np.pi)

    def fprime(self, u):
        return np.cos(np.pi * np.asarray(u, dtype=float))

    def max_height(self):
        return 1.0 / math.pi


class RectangleCurve(CreaseCurve):
    """Ramp-plateau-ramp curve f(u) = min(u, h, 1-u); folds to a caramel-box prism.

    The slope-1 ramps carry the 45-degree fold lines and contribute zero
    cross-section width.
    """

    family = "rectangle"

    def __init__(self, h: float):
        if not (0.0 <= h <= 0.5):
            raise DomainError(f"rectangle h must lie in [0, 1/2], got {h}")
        self.h = float(h)

    def f(self, u):
        u = np.asarray(u, dtype=float)
        return np.minimum(np.minimum(u, 1.0 - u), self.h)

    def fprime(self, u):
        u = np.asarray(u, dtype=float)
        if self.h == 0.0:
            return np.zeros_like(u)
        return np.where(u < self.h, 1.0, np.where(u < 1.0 - self.h, 0.0, -1.0))

    def max_height(self):
        return self.h

    def breakpoints(self):
        if self.h in (0.0, 0.5):
            return [0.5]
        return [self.h, 1.0 - self.h]

    def params(self):
        return {"h": self.h}


class RhombusCurve(CreaseCurve):
    """Triangle curve of apex height h; folds to a rhombic cross-section."""

    family = "rhombus"

    def __init__(self, h: float):
        # h <= 1/2 keeps the half-diagonal w = sqrt(1/4 - h^2) real.
        if not (0.0 <= h <= 0.5):
            raise DomainError(f"rhombus h must lie in [0, 1/2], got {h}")
        self.h = float(h)

    def f(self, u):
        u = np.asarray(u, dtype=float)
        return 2.0 * self.h * np.minimum(u, 1.0 - u)

    def fprime(self, u):
        u = np.asarray(u, dtype=float)
        return np.where(u < 0.5, 2.0 * self.h, -2.0 * self.h)

    def max_height(self):
        return self.h

    def breakpoints(self):
        return [0.5]

    def params(self):
        return {"h": self.h}


class ArcCurve(CreaseCurve):
    """Circular-arc profile of half-angle theta, arc length 1 per half-perimeter.

    f(u) = (cos(theta (2u - 1)) - cos theta) / (2 theta)
    """

    family = "arc"

    def __init__(self, theta: float):
        if not (0.0 < theta <= math.pi / 2.0):
            raise DomainError(f"arc theta must lie in (0, pi/2], got {theta}")
        self.theta = float(theta)

    def f(self, u):
        u = np.asarray(u, dtype=float)
        th = self.theta
        return _zero_at_ends(
            u, (np.cos(th * (2.0 * u - 1.0)) - math.cos(th)) / (2.0 * th))

    def fprime(self, u):
        u = np.asarray(u, dtype=float)
        return -np.sin(self.theta * (2.0 * u - 1.0))

    def max_height(self):
        return (1.0 - math.cos(self.theta)) / (2.0 * self.theta)

    def params(self):
        return {"theta": self.theta}


class _BezierCurve(CreaseCurve):
    """Shared machinery for the parametric half-curve families.

    The half-curve (u(t), v(t)) with t in [0, 1] covers u in [0, 1/2] and is
    mirrored about u = 1/2.  Evaluation at a given u inverts the monotone u(t)
    by bisection.
    """

    def point(self, t):
        raise NotImplementedError

    def derivative(self, t):
        raise NotImplementedError

    def state(self, t: float) -> BezierState:
        u, v = self.point(t)
        du, dv = self.derivative(t)
        return BezierState(float(t), float(u), float(v), float(du), float(dv))

    def _uprime_min(self) -> float:
        raise NotImplementedError

    def check_monotone(self):
        if self._uprime_min() <= 0.0:
            raise NonMonotoneError(
                f"{self.family} u(t) is not strictly increasing "
                f"(min u'(t) = {self._uprime_min():.3g})")

    def _t_of_u(self, ubar):
        """Invert u(t) on the half-domain by bisection to 1e-14."""
        self.check_monotone()
        ubar = np.asarray(ubar, dtype=float)
        lo = np.zeros_like(ubar)
        hi = np.ones_like(ubar)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            below = self.point(mid)[0] < ubar
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)

    def f(self, u):
        u = np.asarray(u, dtype=float)
        ubar = np.minimum(u, 1.0 - u)
        t = self._t_of_u(ubar)
        return _zero_at_ends(u, self.point(t)[1])

    def fprime(self, u):
        u = np.asarray(u, dtype=float)
        ubar = np.minimum(u, 1.0 - u)
        t = self._t_of_u(ubar)
        du, dv = self.derivative(t)
        slope = dv / du
        return np.where(u > 0.5, -slope, slope)

    def max_height(self):
        t = np.linspace(0.0, 1.0, 2001)
        return float(np.max(self.point(t)[1]))

    def breakpoints(self):
        # the mirrored halves meet at an angle when v'(1) != 0
        return [0.5]


class QuadBezierCurve(_BezierCurve):
    """Quadratic Bezier half-curve with control points (0,0), (a,b), (1/2,h)."""

    family = "quad-bezier"

    def __init__(self, a: float, b: float, h: float):
        # 0 < a < 1/2 makes u'(t) = 2a(1-2t) + t positive on [0,1].
        if not (0.0 < a < 0.5):
            raise DomainError(f"quad-bezier a must lie in (0, 1/2), got {a}")
        if b < 0.0 or h < 0.0:
            raise DomainError("quad-bezier b and h must be >= 0 (crease height f >= 0)")
        self.a, self.b, self.h = float(a), float(b), float(h)

    def point(self, t):
        t = np.asarray(t, dtype=float)
        u = 2.0 * self.a * (1.0 - t) * t + 0.5 * t * t
        v = 2.0 * self.b * (1.0 - t) * t + self.h * t * t
        return u, v

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        du = 2.0 * self.a * (1.0 - 2.0 * t) + t
        dv = 2.0 * self.b * (1.0 - 2.0 * t) + 2.0 * self.h * t
        return du, dv

    def _uprime_min(self):
        # u'(t) is linear in t.
        return min(2.0 * self.a, 1.0 - 2.0 * self.a)

    def params(self):
        return {"a": self.a, "b": self.b, "h": self.h}


class CubicBezierCurve(_BezierCurve):
    """Cubic Bezier half-curve with control points (0,0), (a,b), (c,d), (1/2,h).

    u(t) monotonicity is not implied by any simple parameter box, so it is
    checked at evaluation time (NonMonotoneError).
    """

    family = "cubic-bezier"

    def __init__(self, a: float, b: float, c: float, d: float, h: float):
        if b < 0.0 or d < 0.0 or h < 0.0:
            raise DomainError("cubic-bezier b, d, h must be >= 0 (crease height f >= 0)")
        self.a, self.b, self.c, self.d, self.h = (
            float(a), float(b), float(c), float(d), float(h))

    def point(self, t):
        t = np.asarray(t, dtype=float)
        mt = 1.0 - t
        u = 3.0 * mt * mt * t * self.a + 3.0 * mt * t * t * self.c + 0.5 * t**3
        v = 3.0 * mt * mt * t * self.b + 3.0 * mt * t * t * self.d + t**3 * self.h
        return u, v

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        mt = 1.0 - t
        du = 3.0 * (mt * mt * self.a + 2.0 * mt * t * (self.c - self.a)
                    + t * t * (0.5 - self.c))
        dv = 3.0 * (mt * mt * self.b + 2.0 * mt * t * (self.d - self.b)
                    + t * t * (self.h - self.d))
        return du, dv

    def _uprime_min(self):
        # u'(t)/3 = A t^2 + B t + C, exact minimum over [0, 1].
        A = 3.0 * self.a - 3.0 * self.c + 0.5
        B = 2.0 * self.c - 4.0 * self.a
        C = self.a
        candidates = [C, A + B + C]
        if abs(A) > 0.0:
            tstar = -B / (2.0 * A)
            if 0.0 < tstar < 1.0:
                candidates.append(A * tstar * tstar + B * tstar + C)
        return 3.0 * min(candidates)

    def params(self):
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "h": self.h}


class PolylineCurve(CreaseCurve):
    """Piecewise-linear crease heights on a uniform node grid.

    symmetric=True stores the half-curve: N = len(heights) segments with nodes
    at u_i = i/(2N), f(u_i) = heights[i-1], mirrored about u = 1/2.
    symmetric=False stores the full curve: nodes at u_i = i/(M+1) for
    M = len(heights) interior heights, with implicit zeros at u = 0 and u = 1.
    """

    family = "polyline"

    def __init__(self, heights, symmetric: bool = True):
        heights = [float(v) for v in np.atleast_1d(np.asarray(heights, dtype=float))]
        if len(heights) == 0:
            raise DomainError("polyline needs at least one height")
        if any(v < 0.0 for v in heights):
            raise DomainError("polyline heights must be nonnegative")
        self.heights = heights
        self.symmetric = bool(symmetric)
        if self.symmetric:
            self._nodes = np.arange(len(heights) + 1) / (2.0 * len(heights))
            self._values = np.concatenate([[0.0], heights])
        else:
            self._nodes = np.arange(len(heights) + 2) / (len(heights) + 1.0)
            self._values = np.concatenate([[0.0], heights, [0.0]])
        self._slopes = np.diff(self._values) / np.diff(self._nodes)

    def f(self, u):
        u = np.asarray(u, dtype=float)
        if self.symmetric:
            return np.interp(np.minimum(u, 1.0 - u), self._nodes, self._values)
        return np.interp(u, self._nodes, self._values)

    def fprime(self, u):
        """Right-continuous segment slope; the far half of a symmetric curve
        mirrors the sign."""
        u = np.asarray(u, dtype=float)
        nseg = len(self._slopes)
        if self.symmetric:
            ubar = np.minimum(u, 1.0 - u)
            idx = np.clip((ubar * 2.0 * len(self.heights)).astype(int), 0, nseg - 1)
            return np.where(u > 0.5, -self._slopes[idx], self._slopes[idx])
        idx = np.clip((u * (len(self.heights) + 1)).astype(int), 0, nseg - 1)
        return self._slopes[idx]

    def max_height(self):
        return float(np.max(self._values))

    def breakpoints(self):
        if self.symmetric:
            half = list(self._nodes[1:])
            return sorted(set(half + [1.0 - x for x in half]) - {0.0, 1.0})
        return list(self._nodes[1:-1])

    def params(self):
        return {"heights": list(self.heights), "symmetric": self.symmetric}

    def node_arrays(self):
        """Full-domain node grid and values (mirrored when symmetric)."""
        if self.symmetric:
            nodes = np.concatenate([self._nodes, 1.0 - self._nodes[-2::-1]])
            values = np.concatenate([self._values, self._values[-2::-1]])
            return nodes, values
        return self._nodes.copy(), self._values.copy()


_FAMILIES = {
    "sine-arc": (SineArc, ()),
    "rectangle": (RectangleCurve, ("h",)),
    "rhombus": (RhombusCurve, ("h",)),
    "arc": (ArcCurve, ("theta",)),
    "quad-bezier": (QuadBezierCurve, ("a", "b", "h")),
    "cubic-bezier": (CubicBezierCurve, ("a", "b", "c", "d", "h")),
    "polyline": (PolylineCurve, ("heights", "symmetric")),
}


def family_names():
    return list(_FAMILIES)


def make_curve(family_id: str, params: dict | None = None) -> CreaseCurve:
    """Construct a crease curve, enforcing the family's parameter domain."""
    if family_id not in _FAMILIES:
        raise DomainError(
            f"unknown family {family_id!r}; known: {', '.join(_FAMILIES)}")
    cls, names = _FAMILIES[family_id]
    params = dict(params or {})
    unknown = set(params) - set(names)
    if unknown:
        raise DomainError(f"{family_id} got unknown parameters {sorted(unknown)}")
    if family_id == "polyline":
        if "heights" not in params:
            raise DomainError("polyline requires a heights list")
        return PolylineCurve(params["heights"], params.get("symmetric", True))
    missing = [n for n in names if n not in params]
    if missing:
        raise DomainError(f"{family_id} missing parameters {missing}")
    return cls(**{n: params[n] for n in names})


def eval_curve(curve: CreaseCurve, u: float) -> CurveSample:
    """f(u) and df/du at a single u in [0, 1]."""
    return curve.sample_at(u)


def sample_arrays(curve: CreaseCurve, n: int):
    """(u, f, fprime) arrays at n+1 strictly increasing samples from 0 to 1.

    Bezier families are sampled in t (half-curve plus mirror) so no inversion
    of u(t) is needed; other families sample u_k = k/n directly.
    """
    if n < 2:
        raise DomainError(f"need n >= 2 samples, got {n}")
    if isinstance(curve, _BezierCurve):
        curve.check_monotone()
        m = n // 2
        t1 = np.linspace(0.0, 1.0, m + 1)
        u1, f1 = curve.point(t1)
        du1, dv1 = curve.derivative(t1)
        t2 = np.linspace(0.0, 1.0, n - m + 1)
        u2, f2 = curve.point(t2)
        du2, dv2 = curve.derivative(t2)
        u = np.concatenate([u1, (1.0 - u2[::-1])[1:]])
        f = np.concatenate([f1, f2[::-1][1:]])
        fp = np.concatenate([dv1 / du1, (-dv2 / du2)[::-1][1:]])
        return u, f, fp
    u = np.linspace(0.0, 1.0, n + 1)
    return u, curve.f(u), curve.fprime(u)


def sample_uniform(curve: CreaseCurve, n: int):
    """n+1 CurveSamples along the full domain (see sample_arrays)."""
    u, f, fp = sample_arrays(curve, n)
    return [CurveSample(float(a), float(b), float(c)) for a, b, c in zip(u, f, fp)]
