"""Constrained volume maximization over crease-curve families.

The solver is scipy's SLSQP.  Bezier families are optimized directly in their
control-point parameters with sampled slope and monotonicity constraints.
Polyline problems substitute segment slopes s_i = sin(phi_i), which makes the
developability bound |s_i| <= 1 a box bound on phi, removes the square-root
gradient singularity at active constraints, and keeps every iterate exactly
feasible; results are reported back in node heights.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .curves import (CreaseCurve, CubicBezierCurve, PolylineCurve,
                     QuadBezierCurve, SheetSpec)
from .errors import (DomainError, EvaluationError, InfeasibleStartError,
                     MaxIterationsError)
from .volume import volume_quadrature

MONOTONE_MARGIN = 1e-6


@dataclass(frozen=True)
class SolverConfig:
    ftol: float = 1e-9
    constraint_tol: float = 1e-6
    max_iter: int = 500
    multistart: int = 1
    time_budget: float | None = None   # seconds; best-so-far on expiry
    strict: bool = False               # raise MaxIterationsError instead of
                                       # returning converged=False


@dataclass(frozen=True)
class OptimizationProblem:
    family: str                        # quad-bezier | cubic-bezier | polyline
    sheet: SheetSpec
    initial: np.ndarray
    bounds: list
    n_quadrature: int = 2000
    n_constraint_samples: int = 200
    n_segments: int = 0                # polyline only


@dataclass
class OptResult:
    family: str
    params: np.ndarray
    volume: float
    iterations: int
    converged: bool
    max_violation: float
    trace: list = field(default_factory=list)
    budget_exceeded: bool = False

    def to_dict(self):
        return {
            "family": self.family,
            "params": [float(p) for p in self.params],
            "volume": self.volume,
            "iterations": self.iterations,
            "converged": self.converged,
            "max_violation": self.max_violation,
            "trace": [[int(i), float(v)] for i, v in self.trace],
            "budget_exceeded": self.budget_exceeded,
        }


def curve_from_params(family: str, params) -> CreaseCurve:
    params = np.asarray(params, dtype=float)
    if family == "quad-bezier":
        return QuadBezierCurve(*params)
    if family == "cubic-bezier":
        return CubicBezierCurve(*params)
    if family == "polyline":
        return PolylineCurve(list(params), symmetric=True)
    raise DomainError(f"no optimizable family named {family!r}")


def quad_bezier_problem(sheet: SheetSpec = SheetSpec(), n_quadrature: int = 2000,
                        n_constraint_samples: int = 200) -> OptimizationProblem:
    return OptimizationProblem(
        family="quad-bezier", sheet=sheet,
        initial=np.array([0.2, 0.15, 0.2]),
        bounds=[(1e-6, 0.5 - 1e-6), (0.0, 0.5), (0.0, 0.5)],
        n_quadrature=n_quadrature, n_constraint_samples=n_constraint_samples)


def cubic_bezier_problem(sheet: SheetSpec = SheetSpec(), n_quadrature: int = 2000,
                         n_constraint_samples: int = 200) -> OptimizationProblem:
    return OptimizationProblem(
        family="cubic-bezier", sheet=sheet,
        initial=np.array([0.1, 0.08, 0.25, 0.2, 0.2]),
        bounds=[(1e-6, 0.5 - 1e-6), (0.0, 0.5),
                (1e-6, 0.5 - 1e-6), (0.0, 0.5), (0.0, 0.5)],
        n_quadrature=n_quadrature, n_constraint_samples=n_constraint_samples)


def polyline_problem(n_segments: int, sheet: SheetSpec = SheetSpec(),
                     initial=None) -> OptimizationProblem:
    """N node heights at u_i = i/(2N); default start is the strictly feasible
    scaled sine 0.8 sin(pi u)/pi sampled at the nodes."""
    if n_segments < 1:
        raise DomainError("polyline needs at least one segment")
    if initial is None:
        u = np.arange(1, n_segments + 1) / (2.0 * n_segments)
        initial = 0.8 * np.sin(np.pi * u) / np.pi
    initial = np.asarray(initial, dtype=float)
    if initial.size != n_segments:
        raise DomainError(
            f"initial has {initial.size} heights, expected {n_segments}")
    return OptimizationProblem(
        family="polyline", sheet=sheet, initial=initial,
        bounds=[(0.0, 0.5)] * n_segments,
        n_quadrature=2 * n_segments, n_segments=n_segments)


def constraint_vector(family: str, params, n_constraint_samples: int = 200):
    """Inequality constraints g >= 0 expressing developability.

    Polyline: per-segment 1 - slope^2 (exact, no sampling gap).
    Bezier: u'(t)^2 - v'(t)^2 at uniform t samples (slope bound) plus
    u'(t) - 1e-6 (monotonicity).
    """
    params = np.asarray(params, dtype=float)
    if family == "polyline":
        n = params.size
        vv = np.concatenate([[0.0], params])
        s = np.diff(vv) * (2.0 * n)
        return 1.0 - s * s
    if family in ("quad-bezier", "cubic-bezier"):
        t = np.linspace(0.0, 1.0, n_constraint_samples)
        if family == "quad-bezier":
            a, b, h = params
            du = 2.0 * a * (1.0 - 2.0 * t) + t
            dv = 2.0 * b * (1.0 - 2.0 * t) + 2.0 * h * t
        else:
            a, b, c, d, h = params
            mt = 1.0 - t
            du = 3.0 * (mt * mt * a + 2.0 * mt * t * (c - a) + t * t * (0.5 - c))
            dv = 3.0 * (mt * mt * b + 2.0 * mt * t * (d - b) + t * t * (h - d))
        return np.concatenate([du * du - dv * dv, du - MONOTONE_MARGIN])
    raise DomainError(f"no constraint structure for family {family!r}")


def gradient_fd(objective, params, step: float | None = None, bounds=None):
    """Central-difference gradient, default step 1e-6 * max(1, |p_i|).

    Probe points are projected inside the bounds; a probe that raises
    EvaluationError is shifted inward (halved step) before giving up.
    """
    params = np.asarray(params, dtype=float)
    grad = np.zeros_like(params)
    for i in range(params.size):
        h = step if step is not None else 1e-6 * max(1.0, abs(params[i]))
        for attempt in range(4):
            hi = params.copy()
            lo = params.copy()
            hi[i] += h
            lo[i] -= h
            if bounds is not None:
                lb, ub = bounds[i]
                if lb is not None:
                    lo[i] = max(lo[i], lb)
                if ub is not None:
                    hi[i] = min(hi[i], ub)
            if hi[i] == lo[i]:
                grad[i] = 0.0
                break
            try:
                grad[i] = (objective(hi) - objective(lo)) / (hi[i] - lo[i])
                break
            except EvaluationError:
                h *= 0.5
        else:
            raise EvaluationError(
                f"objective not evaluable near parameter {i} = {params[i]}")
    return grad


def _bezier_soft_volume(family: str, params, L: float, n: int) -> float:
    """Objective used inside the solver: the t-space midpoint quadrature with
    the radicand clipped at 0, so transiently infeasible iterates stay finite."""
    params = np.asarray(params, dtype=float)
    t = (np.arange(n) + 0.5) / n
    if family == "quad-bezier":
        a, b, h = params
        v = 2.0 * b * (1.0 - t) * t + h * t * t
        du = 2.0 * a * (1.0 - 2.0 * t) + t
        dv = 2.0 * b * (1.0 - 2.0 * t) + 2.0 * h * t
    else:
        a, b, c, d, h = params
        mt = 1.0 - t
        v = 3.0 * mt * mt * t * b + 3.0 * mt * t * t * d + t**3 * h
        du = 3.0 * (mt * mt * a + 2.0 * mt * t * (c - a) + t * t * (0.5 - c))
        dv = 3.0 * (mt * mt * b + 2.0 * mt * t * (d - b) + t * t * (h - d))
    rad = np.clip(du * du - dv * dv, 0.0, None)
    return float(4.0 * np.sum(v * (L - 2.0 * v) * np.sqrt(rad)) / n)


def _poly_volume_phi(phi, L):
    """Volume and gradient in slope-angle variables (see module docstring)."""
    n = phi.size
    delta = 1.0 / (2.0 * n)
    sp = np.sin(phi)
    cp = np.cos(phi)
    v = delta * np.cumsum(sp)
    vv = np.concatenate([[0.0], v])
    m = 0.5 * (vv[:-1] + vv[1:])
    q = 2.0 * m * (L - 2.0 * m)
    value = float(np.dot(q, cp) / n)
    w = 2.0 * (L - 4.0 * m) * cp
    suffix = np.concatenate([np.cumsum(w[::-1])[::-1][1:], [0.0]])
    grad = (-q * sp + delta * cp * (suffix + 0.5 * w)) / n
    return value, grad


class _Budget(Exception):
    pass


class _Tracker:
    """Wraps an objective: keeps best-so-far and enforces the time budget."""

    def __init__(self, fun, budget):
        self.fun = fun
        self.budget = budget
        self.t0 = time.monotonic()
        self.best_x = None
        self.best_v = -math.inf

    def __call__(self, x):
        if self.budget is not None and time.monotonic() - self.t0 > self.budget:
            raise _Budget()
        v = self.fun(x)
        if v > self.best_v:
            self.best_v = v
            self.best_x = np.array(x)
        return -v


_MULTISTART_SHIFTS = (0.0, 0.01, -0.01, 0.02, -0.02)


def maximize_volume(problem: OptimizationProblem,
                    config: SolverConfig = SolverConfig()) -> OptResult:
    """Maximize box volume over the family's parameters subject to
    developability; deterministic for a fixed problem and config."""
    if config.max_iter < 1:
        raise DomainError("config.max_iter must be >= 1")
    g0 = constraint_vector(problem.family, problem.initial,
                           problem.n_constraint_samples)
    if np.min(g0) < -1e-9:
        raise InfeasibleStartError(
            f"initial point violates constraints by {-float(np.min(g0)):.3g}")

    starts = [np.asarray(problem.initial, dtype=float)]
    for shift in _MULTISTART_SHIFTS[1:config.multistart]:
        perturbed = starts[0] + shift
        lo = np.array([b[0] for b in problem.bounds])
        hi = np.array([b[1] for b in problem.bounds])
        perturbed = np.clip(perturbed, lo, hi)
        if np.min(constraint_vector(problem.family, perturbed,
                                    problem.n_constraint_samples)) >= 0.0:
            starts.append(perturbed)

    best = None
    for x0 in starts:
        result = _solve_single(problem, config, x0)
        if best is None or result.volume > best.volume:
            best = result

    v_init = _objective_value(problem, problem.initial)
    if best.volume < v_init:
        best = OptResult(problem.family, np.asarray(problem.initial, dtype=float),
                         v_init, best.iterations, False,
                         float(max(0.0, -np.min(g0))), best.trace,
                         best.budget_exceeded)
    if config.strict and not best.converged:
        raise MaxIterationsError(
            f"solver stopped after {best.iterations} iterations without "
            f"converging (volume {best.volume:.6f})")
    return best


def _objective_value(problem, params) -> float:
    L = problem.sheet.normalized_length
    w3 = problem.sheet.width**3
    if problem.family == "polyline":
        curve = PolylineCurve(list(np.asarray(params, dtype=float)), symmetric=True)
        return volume_quadrature(curve, problem.sheet, problem.n_quadrature).value
    return _bezier_soft_volume(problem.family, params, L, problem.n_quadrature) * w3


def _solve_single(problem, config, x0) -> OptResult:
    if problem.family == "polyline":
        return _solve_polyline(problem, config, x0)
    return _solve_bezier(problem, config, x0)


def _solve_bezier(problem, config, x0) -> OptResult:
    L = problem.sheet.normalized_length
    w3 = problem.sheet.width**3

    def objective(p):
        return _bezier_soft_volume(problem.family, p, L, problem.n_quadrature) * w3

    tracker = _Tracker(objective, config.time_budget)
    trace = []

    def callback(xk):
        trace.append((len(trace) + 1, objective(xk)))

    def neg_jac(p):
        return -gradient_fd(objective, p, bounds=problem.bounds)

    def cons(p):
        return constraint_vector(problem.family, p, problem.n_constraint_samples)

    budget_hit = False
    try:
        res = minimize(tracker, x0, jac=neg_jac, method="SLSQP",
                       bounds=problem.bounds,
                       constraints=[{"type": "ineq", "fun": cons}],
                       callback=callback,
                       options={"ftol": config.ftol, "maxiter": config.max_iter})
        params = np.asarray(res.x, dtype=float)
        iters = res.nit
        success = bool(res.success)
    except _Budget:
        params = tracker.best_x if tracker.best_x is not None else np.array(x0)
        iters = len(trace)
        success = False
        budget_hit = True
    violation = float(max(0.0, -np.min(cons(params))))
    volume = objective(params)
    converged = success and violation <= config.constraint_tol
    return OptResult(problem.family, params, volume, iters, converged,
                     violation, trace, budget_hit)


def _solve_polyline(problem, config, x0) -> OptResult:
    N = problem.n_segments
    L = problem.sheet.normalized_length
    w3 = problem.sheet.width**3
    delta = 1.0 / (2.0 * N)
    slopes = np.diff(np.concatenate([[0.0], x0])) / delta
    phi0 = np.arcsin(np.clip(slopes, -1.0, 1.0))

    def value_grad(phi):
        v, g = _poly_volume_phi(phi, L)
        return v * w3, g * w3

    tracker = _Tracker(lambda p: value_grad(p)[0], config.time_budget)
    trace = []

    def callback(pk):
        trace.append((len(trace) + 1, value_grad(pk)[0]))

    budget_hit = False
    try:
        res = minimize(tracker, phi0, jac=lambda p: -value_grad(p)[1],
                       method="SLSQP",
                       bounds=[(-math.pi / 2.0, math.pi / 2.0)] * N,
                       callback=callback,
                       options={"ftol": config.ftol, "maxiter": config.max_iter})
        phi = np.asarray(res.x, dtype=float)
        iters = res.nit
        success = bool(res.success)
    except _Budget:
        phi = tracker.best_x if tracker.best_x is not None else phi0
        iters = len(trace)
        success = False
        budget_hit = True
    heights = np.cumsum(np.sin(phi)) * delta
    # the substitution keeps slopes in [-1, 1]; heights must come out >= 0
    if np.min(heights) < 0.0:
        heights = np.clip(heights, 0.0, None)
        success = False
    heights = np.minimum(heights, 0.5)
    violation = float(max(0.0, -np.min(constraint_vector("polyline", heights))))
    volume = _objective_value(problem, heights)
    converged = success and violation <= config.constraint_tol
    return OptResult("polyline", heights, volume, iters, converged,
                     violation, trace, budget_hit)


def upsample_heights(heights, n_new: int):
    """Linearly resample a symmetric half-polyline onto a finer node grid
    (seeding a larger-N problem from a smaller optimum)."""
    heights = np.asarray(heights, dtype=float)
    n_old = heights.size
    old_nodes = np.arange(n_old + 1) / (2.0 * n_old)
    new_nodes = np.arange(1, n_new + 1) / (2.0 * n_new)
    return np.interp(new_nodes, old_nodes, np.concatenate([[0.0], heights]))
