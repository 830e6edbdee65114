import math

import numpy as np
import pytest

from pillowfold import (ArcCurve, AsymmetricParams, CubicBezierCurve,
                        DomainError, GeometryError, InvalidCurveError,
                        PolylineCurve, QuadBezierCurve, RectangleCurve,
                        RhombusCurve, SheetSpec, SineArc, build_asymmetric_mesh,
                        build_mesh, check_watertight, compute_profile,
                        discrete_triangle_check, extract_crease_3d, validate)
from pillowfold.fold import _chord_x, mesh_samples

from conftest import random_polyline, random_valid_polyline

SQRT2 = math.sqrt(2.0)


# --- validate -------------------------------------------------------------

def test_validate_sine_boundary_feasible():
    report = validate(SineArc(), 10000)
    assert report.valid
    assert report.max_abs_slope == pytest.approx(1.0, abs=1e-12)
    assert report.max_tangent_angle == pytest.approx(math.pi / 4.0, abs=1e-9)
    assert report.violations == []


def test_validate_steep_quad_bezier_invalid():
    report = validate(QuadBezierCurve(0.1, 0.3, 0.2), 5000)
    assert not report.valid
    assert report.max_abs_slope > 2.0  # slope at the origin is b/a = 3
    assert len(report.violations) >= 1
    assert report.violations[0][0] == 0.0


def test_validate_rhombus_constant_slope():
    report = validate(RhombusCurve(0.4), 1000)
    assert report.valid
    assert report.max_abs_slope == pytest.approx(0.8, abs=1e-12)


def test_validate_single_segment_polyline():
    report = validate(PolylineCurve([0.3], symmetric=True), 1000)
    assert report.valid
    assert report.max_abs_slope == pytest.approx(0.6, abs=1e-12)


def test_validate_non_monotone_bezier_reported_not_raised():
    report = validate(CubicBezierCurve(0.3, 0.1, -0.2, 0.1, 0.2), 100)
    assert not report.valid
    assert report.reason is not None
    assert report.violations == [(0.0, 1.0)]


def test_validate_violation_intervals_localized():
    # slope +-1.2 on the first and (mirrored) last quarter
    curve = PolylineCurve([0.3, 0.3], symmetric=True)
    report = validate(curve, 4001)
    assert not report.valid
    assert len(report.violations) == 2
    (lo1, hi1), (lo2, hi2) = report.violations
    assert lo1 == 0.0 and hi2 == 1.0
    assert hi1 == pytest.approx(0.25, abs=1e-3)
    assert lo2 == pytest.approx(0.75, abs=1e-3)


# --- discrete_triangle_check ------------------------------------------------

def test_triangle_check_flat_sheet():
    report = discrete_triangle_check(RectangleCurve(0.0), 0.25)
    assert report.valid
    assert report.n_samples == 4
    assert report.max_abs_slope == 0.0


def test_triangle_check_sine_agrees_with_validate():
    report = discrete_triangle_check(SineArc(), 0.01)
    assert report.valid == validate(SineArc(), 10000).valid


def test_triangle_check_steep_triangle_invalid():
    # peak 0.6 at u = 1/2 means slope +-1.2: SQ^2 = 0.01 - 0.0144 < 0
    report = discrete_triangle_check(PolylineCurve([0.6], symmetric=True), 0.1)
    assert not report.valid
    assert report.max_abs_slope == pytest.approx(1.2, abs=1e-12)


def test_triangle_check_domain():
    with pytest.raises(DomainError):
        discrete_triangle_check(SineArc(), 0.6)
    with pytest.raises(DomainError):
        discrete_triangle_check(SineArc(), 0.0)


def test_constraint_equivalence_on_random_polylines(rng):
    # validity verdicts agree between the sampled-slope and stepped checks
    for _ in range(100):
        n_seg = int(rng.choice([4, 10, 20, 25, 50]))
        curve = random_polyline(rng, n_seg, symmetric=bool(rng.integers(2)))
        a = validate(curve, 10000).valid
        b = discrete_triangle_check(curve, 1e-4).valid
        assert a == b


# --- compute_profile --------------------------------------------------------

def test_profile_sine_circle():
    profile = compute_profile(SineArc(), 2000)
    assert profile.width == pytest.approx(2.0 / math.pi, abs=1e-6)
    assert profile.height == pytest.approx(1.0 / math.pi, abs=1e-12)
    # the profile traces a semicircle of radius 1/pi centered at (1/pi, 0)
    x, z = profile.points[:, 0], profile.points[:, 1]
    r = np.hypot(x - 1.0 / math.pi, z)
    assert np.max(np.abs(r - 1.0 / math.pi)) <= 1e-5


def test_profile_flat_sheet():
    profile = compute_profile(RectangleCurve(0.0), 1000)
    assert profile.width == pytest.approx(1.0, abs=1e-12)
    assert np.all(profile.points[:, 1] == 0.0)


def test_profile_rectangle_width_exact():
    h = 0.192489
    profile = compute_profile(RectangleCurve(h), 2000)
    assert profile.width == pytest.approx(1.0 - 2.0 * h, abs=1e-9)


def test_profile_arc_length_consistency():
    for curve in (SineArc(), ArcCurve(1.2), RhombusCurve(0.3)):
        profile = compute_profile(curve, 2000)
        seg = np.diff(profile.points, axis=0)
        total = float(np.sum(np.hypot(seg[:, 0], seg[:, 1])))
        assert total == pytest.approx(1.0, abs=1e-4)


def test_profile_x_nondecreasing_and_bounded():
    for curve in (SineArc(), RectangleCurve(0.25), RhombusCurve(0.3)):
        profile = compute_profile(curve, 500)
        x = profile.points[:, 0]
        assert np.all(np.diff(x) >= 0.0)
        assert 0.0 <= profile.width <= 1.0
        assert x[0] == 0.0


def test_profile_invalid_curve_raises():
    with pytest.raises(InvalidCurveError):
        compute_profile(PolylineCurve([0.6], symmetric=True), 100)


# --- build_mesh ---------------------------------------------------------------

def test_mesh_sine_watertight_euler():
    mesh = build_mesh(SineArc(), SheetSpec(), 200)
    assert mesh.watertight
    tris = mesh.triangles
    n_v = len(np.unique(tris))
    edges = set()
    for a, b, c in tris:
        edges.update({frozenset((a, b)), frozenset((b, c)), frozenset((c, a))})
    assert n_v - len(edges) + len(tris) == 2


def test_mesh_flat_sheet_is_empty():
    mesh = build_mesh(RectangleCurve(0.0), SheetSpec(), 100)
    assert mesh.is_empty
    assert not mesh.watertight


def test_mesh_ends_collide():
    with pytest.raises(GeometryError):
        build_mesh(RectangleCurve(0.45), SheetSpec(1.0, 0.8), 100)


def test_mesh_parts_cover_box():
    mesh = build_mesh(SineArc(), SheetSpec(), 50)
    labels = set(mesh.part_labels)
    assert labels == {"top", "bottom", "end_wall_near", "end_wall_far"}
    # top triangles sit at z = +f >= 0, bottom at z <= 0
    for tri, label in zip(mesh.triangles, mesh.part_labels):
        z = mesh.vertices[tri][:, 2]
        if label == "top":
            assert np.all(z >= -1e-15)
        if label == "bottom":
            assert np.all(z <= 1e-15)


def test_mesh_isometry_edge_lengths():
    """Every strip edge has exactly its development length."""
    resolution = 64
    curve = SineArc()
    sheet = SheetSpec()
    L = sheet.normalized_length
    u, f = mesh_samples(curve, resolution)
    x = _chord_x(u, f)
    w = L / 2.0 - f
    du = np.diff(u)
    df = np.diff(f)
    for k in range(len(u) - 1):
        a3 = np.array([x[k], -w[k], f[k]])
        b3 = np.array([x[k + 1], -w[k + 1], f[k + 1]])
        # top surface edge between rulings, development length sqrt(du^2+df^2)
        assert np.linalg.norm(b3 - a3) == pytest.approx(
            math.hypot(du[k], df[k]), abs=1e-9)
        # crease edge (top/wall shared), same development length
        c3 = np.array([x[k], w[k], f[k]])
        d3 = np.array([x[k + 1], w[k + 1], f[k + 1]])
        assert np.linalg.norm(d3 - c3) == pytest.approx(
            math.hypot(du[k], df[k]), abs=1e-9)
        # wall ruling spans the two flap depths
        e3 = np.array([x[k], w[k], -f[k]])
        assert np.linalg.norm(c3 - e3) == pytest.approx(2.0 * f[k], abs=1e-9)
        # wall diagonal: flap development distance
        assert np.linalg.norm(d3 - e3) == pytest.approx(
            math.hypot(du[k], f[k] + f[k + 1]), abs=1e-9)


def test_mesh_mirror_fold_property():
    """Reflecting wall vertices across the crease plane lands on the top
    cylinder extension: z_reflected = f(u)."""
    resolution = 50
    mesh = build_mesh(PolylineCurve([0.12, 0.2, 0.24], symmetric=True),
                      SheetSpec(), resolution)
    L = SheetSpec().length
    curve = PolylineCurve([0.12, 0.2, 0.24], symmetric=True)
    u, f = mesh_samples(curve, resolution)
    x = _chord_x(u, f)
    x_to_f = dict(zip(np.round(x, 14), f))
    near = [tri for tri, label in zip(mesh.triangles, mesh.part_labels)
            if label == "end_wall_near"]
    for tri in near:
        for vi in tri:
            px, py, pz = mesh.vertices[vi]
            z_reflected = L / 2.0 - py
            assert abs(z_reflected - x_to_f[round(px, 14)]) <= 1e-12


def test_mesh_watertight_random_curves(rng):
    for _ in range(10):
        curve = random_valid_polyline(rng, int(rng.integers(3, 12)))
        if curve.max_height() == 0.0:
            continue
        mesh = build_mesh(curve, SheetSpec(), 40)
        assert mesh.watertight


def test_mesh_rectangle_prism():
    h = 0.192489
    mesh = build_mesh(RectangleCurve(h), SheetSpec(), 2000)
    assert mesh.watertight
    lo = mesh.vertices.min(axis=0)
    hi = mesh.vertices.max(axis=0)
    assert hi[0] - lo[0] == pytest.approx(1.0 - 2.0 * h, abs=1e-9)
    assert hi[2] - lo[2] == pytest.approx(2.0 * h, abs=1e-12)
    assert hi[1] - lo[1] == pytest.approx(SQRT2, abs=1e-12)


def test_mesh_width_scaling():
    mesh1 = build_mesh(SineArc(), SheetSpec(1.0, SQRT2), 50)
    mesh2 = build_mesh(SineArc(), SheetSpec(2.0, 2.0 * SQRT2), 50)
    assert np.allclose(mesh2.vertices, 2.0 * mesh1.vertices, atol=1e-14)


def test_check_watertight_rejects_open_mesh():
    mesh = build_mesh(SineArc(), SheetSpec(), 30)
    assert not check_watertight(mesh.vertices, mesh.triangles[:-1])


# --- extract_crease_3d -------------------------------------------------------

def test_crease_sine_planarity():
    crease = extract_crease_3d(SineArc(), SheetSpec(), 200)
    y_plus_z = crease.points[:, 1] + crease.points[:, 2]
    assert np.max(np.abs(y_plus_z - SQRT2 / 2.0)) <= 1e-12
    assert crease.planarity_residual() <= 1e-12


def test_crease_rectangle_plateau_straight():
    h = 0.25
    crease = extract_crease_3d(RectangleCurve(h), SheetSpec(), 400)
    pts = crease.points
    plateau = pts[np.abs(pts[:, 2] - h) < 1e-12]
    assert len(plateau) > 10
    assert np.max(np.abs(plateau[:, 1] - (SQRT2 / 2.0 - h))) <= 1e-12


def test_crease_plane_normal():
    for curve in (SineArc(), RhombusCurve(0.3)):
        crease = extract_crease_3d(curve, SheetSpec(), 100)
        _, normal = crease.plane
        assert np.allclose(normal, (0.0, 1.0 / SQRT2, 1.0 / SQRT2))
        assert crease.planarity_residual() <= 1e-12


# --- asymmetric construction --------------------------------------------------

def test_asymmetric_params_relations():
    p = AsymmetricParams.from_theta1(2.0 * math.pi / 3.0, 0.3)
    assert p.theta1 + p.theta2 == math.pi
    assert p.alpha1 == p.theta2 / 2.0
    assert p.alpha2 == p.theta1 / 2.0
    assert p.alpha1 == pytest.approx(math.pi / 6.0, abs=1e-15)
    assert p.alpha2 == pytest.approx(math.pi / 3.0, abs=1e-15)
    with pytest.raises(DomainError):
        AsymmetricParams.from_theta1(0.0)
    with pytest.raises(DomainError):
        AsymmetricParams.from_theta1(math.pi)


def test_asymmetric_identity_matches_symmetric_half_box():
    """theta1 = pi/2, wall_depth 0: exactly the top sheet of the symmetric box
    (top surface plus walls down to the z = 0 seam)."""
    resolution = 64
    curve = SineArc()
    sheet = SheetSpec()
    params = AsymmetricParams.from_theta1(math.pi / 2.0, 0.0)
    mesh = build_asymmetric_mesh(curve, sheet, params, resolution)
    assert "bottom" not in set(mesh.part_labels)

    u, f = mesh_samples(curve, resolution)
    x = _chord_x(u, f)
    w = sheet.normalized_length / 2.0 - f
    expected = set()
    for k in range(len(u)):
        for sy in (+1.0, -1.0):
            expected.add((x[k], sy * w[k], f[k]))
            expected.add((x[k], sy * w[k], 0.0))
    got = {tuple(v) for v in np.round(mesh.vertices, 12)}
    expected = {tuple(np.round(p, 12)) for p in expected}
    assert got == expected


def test_asymmetric_identity_vertices_on_symmetric_mesh():
    resolution = 32
    curve = RhombusCurve(0.3)
    sheet = SheetSpec()
    sym = build_mesh(curve, sheet, resolution)
    asym = build_asymmetric_mesh(curve, sheet,
                                 AsymmetricParams.from_theta1(math.pi / 2.0, 0.0),
                                 resolution)
    sym_v = {tuple(v) for v in np.round(sym.vertices, 12)}
    # every asymmetric top/crease vertex is a symmetric-box vertex
    asym_top = {tuple(v) for v in np.round(asym.vertices, 12) if v[2] > 1e-9}
    assert asym_top <= sym_v


def test_asymmetric_flat_bottom_normals():
    # plateau curve: the engaged bottom is a flat horizontal rectangle
    params = AsymmetricParams.from_theta1(2.0 * math.pi / 3.0, 0.3)
    mesh = build_asymmetric_mesh(RectangleCurve(0.25), SheetSpec(), params, 8)
    bottom = [tri for tri, label in zip(mesh.triangles, mesh.part_labels)
              if label == "bottom"]
    assert len(bottom) > 0
    for tri in bottom:
        v = mesh.vertices[tri]
        n = np.cross(v[1] - v[0], v[2] - v[0])
        n /= np.linalg.norm(n)
        assert abs(abs(n[2]) - 1.0) <= 1e-9
        # z = wall_depth - f on the plateau
        assert np.max(np.abs(v[:, 2] - (0.3 - 0.25))) <= 1e-12


def test_asymmetric_bottom_rulings_horizontal():
    # for any curve the double-reflected rulings stay horizontal:
    # triangle normals are perpendicular to the ruling direction y
    params = AsymmetricParams.from_theta1(2.0 * math.pi / 3.0, 0.4)
    mesh = build_asymmetric_mesh(SineArc(), SheetSpec(), params, 200)
    bottom = [tri for tri, label in zip(mesh.triangles, mesh.part_labels)
              if label == "bottom"]
    assert len(bottom) > 0
    for tri in bottom:
        v = mesh.vertices[tri]
        n = np.cross(v[1] - v[0], v[2] - v[0])
        norm = np.linalg.norm(n)
        if norm < 1e-15:
            continue
        assert abs(n[1] / norm) <= 1e-9


def test_asymmetric_wall_depth_errors():
    with pytest.raises(GeometryError):
        build_asymmetric_mesh(SineArc(), SheetSpec(),
                              AsymmetricParams.from_theta1(math.pi / 2.0, -0.1),
                              50)
    with pytest.raises(GeometryError):
        # deeper than any wall can reach: 2 * max f = 2/pi
        build_asymmetric_mesh(SineArc(), SheetSpec(),
                              AsymmetricParams.from_theta1(math.pi / 2.0, 0.7),
                              50)


def test_asymmetric_slanted_creases_collide():
    # alpha1 -> shallow: crease 1 runs past the midline for long flaps
    params = AsymmetricParams.from_theta1(2.9, 0.0)  # alpha1 ~ 0.12
    with pytest.raises(GeometryError):
        build_asymmetric_mesh(SineArc(), SheetSpec(1.0, 1.0), params, 50)
