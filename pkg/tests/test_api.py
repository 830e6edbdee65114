import json
import math

import numpy as np
import pytest
from fastapi.testclient import TestClient

from pillowfold import (SheetSpec, SineArc, build_mesh, compute_profile,
                        volume_quadrature, write_obj)
from pillowfold.service import create_app

SQRT2 = math.sqrt(2.0)

SINE = {"family": "sine-arc", "sheet": {"width": 1.0, "length": SQRT2}}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=False)


def test_healthz(client):
    resp = client.get("/healthz")
    assert resp.status_code == 200
    assert resp.json() == "ok"


def test_families_catalog(client):
    resp = client.get("/api/families")
    assert resp.status_code == 200
    families = resp.json()["families"]
    assert len(families) == 7
    names = {f["name"] for f in families}
    assert names == {"sine-arc", "rectangle", "rhombus", "arc", "quad-bezier",
                     "cubic-bezier", "polyline"}


def test_validate_sine(client):
    resp = client.post("/api/validate", json=SINE)
    assert resp.status_code == 200
    body = resp.json()
    assert body["valid"] is True
    assert body["max_abs_slope"] == pytest.approx(1.0, abs=1e-9)


def test_validate_steep_reports_invalid(client):
    resp = client.post("/api/validate", json={
        "family": "quad-bezier", "params": {"a": 0.1, "b": 0.3, "h": 0.2}})
    assert resp.status_code == 200
    assert resp.json()["valid"] is False


def test_volume_sine(client):
    resp = client.post("/api/volume", json=SINE)
    assert resp.status_code == 200
    assert resp.json()["value"] == pytest.approx(0.278150, abs=1e-5)


def test_volume_parity_with_library(client):
    resp = client.post("/api/volume", json={**SINE, "n": 500})
    direct = volume_quadrature(SineArc(), SheetSpec(), 500).value
    assert resp.json()["value"] == direct


def test_profile_endpoint(client):
    resp = client.post("/api/profile", json={**SINE, "n": 200})
    assert resp.status_code == 200
    body = resp.json()
    assert body["width"] == pytest.approx(2.0 / math.pi, abs=1e-4)
    assert len(body["x"]) == 201
    direct = compute_profile(SineArc(), 200)
    assert body["x"][-1] == direct.width


def test_profile_invalid_curve_422(client):
    resp = client.post("/api/profile", json={
        "family": "polyline", "params": {"heights": [0.6]}})
    assert resp.status_code == 422
    assert "reason" in resp.json()


def test_fold_payload_matches_library(client):
    resp = client.post("/api/fold", json={**SINE, "resolution": 50})
    assert resp.status_code == 200
    body = resp.json()
    mesh = build_mesh(SineArc(), SheetSpec(), 50)
    assert body["watertight"] is True
    assert np.allclose(np.asarray(body["vertices"]).reshape(-1, 3),
                       mesh.vertices, atol=0.0)
    assert body["triangles"] == [int(t) for t in mesh.triangles.ravel()]
    assert set(body["part_labels"]) == set(mesh.part_labels)


def test_fold_asymmetric_option(client):
    resp = client.post("/api/fold", json={
        "family": "rectangle", "params": {"h": 0.25},
        "resolution": 8, "theta1": 2.0 * math.pi / 3.0, "wall_depth": 0.3})
    assert resp.status_code == 200
    assert "bottom" in resp.json()["part_labels"]


def test_malformed_body_400(client):
    resp = client.post("/api/volume", content=b"{not json",
                       headers={"content-type": "application/json"})
    assert resp.status_code == 400
    resp = client.post("/api/volume", json=[1, 2, 3])
    assert resp.status_code == 400


def test_unknown_family_422(client):
    resp = client.post("/api/volume", json={"family": "moebius"})
    assert resp.status_code == 422
    body = resp.json()
    assert body["error"] == "DomainError"


def test_domain_violation_422(client):
    resp = client.post("/api/volume", json={
        "family": "rhombus", "params": {"h": 0.6}})
    assert resp.status_code == 422


def test_unknown_spec_field_422(client):
    resp = client.post("/api/validate", json={**SINE, "color": "red"})
    assert resp.status_code == 422


def test_optimize_quad(client):
    resp = client.post("/api/optimize", json={
        "family": "quad-bezier", "budget_seconds": 15})
    assert resp.status_code == 200
    body = resp.json()
    assert body["converged"] is True
    assert body["volume"] == pytest.approx(0.294436, abs=5e-4)


def test_optimize_polyline_custom_start(client):
    resp = client.post("/api/optimize", json={
        "family": "polyline", "segments": 40, "budget_seconds": 15})
    assert resp.status_code == 200
    assert resp.json()["volume"] >= 0.29


def test_optimize_budget_exhausted_408(client):
    resp = client.post("/api/optimize", json={
        "family": "polyline", "segments": 60, "budget_seconds": 0.0})
    assert resp.status_code == 408
    body = resp.json()
    assert body["budget_exceeded"] is True
    assert body["volume"] > 0.0   # best-so-far included


def test_optimize_concurrency_limit_429():
    app = create_app(max_concurrent_optimize=1)
    client = TestClient(app, raise_server_exceptions=False)
    app.state.optimize_slots.acquire()
    try:
        resp = client.post("/api/optimize", json={
            "family": "quad-bezier", "budget_seconds": 1})
        assert resp.status_code == 429
    finally:
        app.state.optimize_slots.release()


def test_stateless_repeatability(client):
    specs = [SINE,
             {"family": "rhombus", "params": {"h": 0.3}},
             {"family": "arc", "params": {"theta": 1.0},
              "sheet": {"width": 1.0, "length": 1.0}}]
    first = [client.post("/api/volume", json=s).json() for s in specs]
    second = [client.post("/api/volume", json=s).json() for s in reversed(specs)]
    assert first == list(reversed(second))


def test_internal_errors_opaque(client, monkeypatch):
    import pillowfold.service as service_module
    monkeypatch.setattr(service_module, "volume_quadrature",
                        lambda *a, **k: 1 / 0)
    resp = client.post("/api/volume", json=SINE)
    assert resp.status_code == 500
    assert resp.json() == {"error": "internal error"}


def test_export_obj_matches_write_obj(client):
    resp = client.post("/api/export/obj", json={**SINE, "resolution": 50})
    assert resp.status_code == 200
    expected = write_obj(build_mesh(SineArc(), SheetSpec(), 50))
    assert resp.text == expected


def test_export_pattern_matches_write_svg(client):
    from pillowfold import write_svg_pattern
    resp = client.post("/api/export/pattern", json={**SINE, "scale_mm": 80.0})
    assert resp.status_code == 200
    assert resp.text == write_svg_pattern(SineArc(), SheetSpec(), 80.0)
