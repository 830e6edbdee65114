import json
import math
import re
import subprocess
import sys

import numpy as np
import pytest

from pillowfold import (CubicBezierCurve, DomainError, ParseError,
                        PolylineCurve, RectangleCurve, SheetSpec, SineArc,
                        build_mesh, curve_spec_document, make_curve,
                        parse_curve_spec, parse_obj, result_document,
                        volume_mesh, write_curve_spec, write_obj,
                        write_svg_pattern)
from pillowfold.fold import FoldedMesh

SQRT2 = math.sqrt(2.0)

ALL_CURVES = [
    (SineArc(), SheetSpec()),
    (RectangleCurve(0.192489), SheetSpec(1.0, SQRT2)),
    (make_curve("rhombus", {"h": 0.30547}), SheetSpec(2.0, 3.0)),
    (make_curve("arc", {"theta": 1.047}), SheetSpec(1.0, 1.0)),
    (make_curve("quad-bezier", {"a": 0.2731, "b": 0.2731, "h": 0.2544}),
     SheetSpec()),
    (CubicBezierCurve(0.1125, 0.1125, 0.2526, 0.2526, 0.2543), SheetSpec()),
    (PolylineCurve([0.1, 0.2, 0.15], symmetric=False), SheetSpec()),
]


# --- curve spec documents ------------------------------------------------------

@pytest.mark.parametrize("curve,sheet", ALL_CURVES,
                         ids=lambda v: getattr(v, "family", None) or "sheet")
def test_spec_round_trip_exact(curve, sheet):
    text = write_curve_spec(curve, sheet, metadata={"note": "round-trip"})
    curve2, sheet2, meta = parse_curve_spec(text)
    assert curve2.family == curve.family
    assert curve2.params() == curve.params()
    assert (sheet2.width, sheet2.length) == (sheet.width, sheet.length)
    assert meta == {"note": "round-trip"}
    assert write_curve_spec(curve2, sheet2, meta) == text


def test_parse_minimal_sine_spec():
    curve, sheet, _ = parse_curve_spec(
        '{"family":"sine-arc","sheet":{"width":1,"length":1.4142135623730951}}')
    assert curve.family == "sine-arc"
    assert sheet.length == 1.4142135623730951


def test_parse_rejects_domain_violation():
    with pytest.raises(DomainError):
        parse_curve_spec('{"family":"rhombus","params":{"h":0.6}}')


def test_parse_optimal_cubic():
    curve, _, _ = parse_curve_spec(json.dumps({
        "family": "cubic-bezier",
        "params": {"a": 0.1125, "b": 0.1125, "c": 0.2526, "d": 0.2526,
                   "h": 0.2543}}))
    assert curve.f(0.5) == pytest.approx(0.2543, abs=1e-12)


def test_parse_rejects_unknown_fields():
    with pytest.raises(ParseError):
        parse_curve_spec('{"family":"sine-arc","color":"red"}')
    with pytest.raises(ParseError):
        parse_curve_spec('{"family":"sine-arc","sheet":{"width":1,"area":2}}')
    with pytest.raises(ParseError):
        parse_curve_spec('not json')
    with pytest.raises(ParseError):
        parse_curve_spec('[1,2]')


def test_result_document_shape():
    doc = result_document("volume", {"family": "sine-arc"}, {"value": 0.278},
                          timestamp="2024-01-01T00:00:00+00:00")
    assert doc["operation"] == "volume"
    assert doc["tool_version"]
    assert doc["timestamp"] == "2024-01-01T00:00:00+00:00"


# --- OBJ -------------------------------------------------------------------------

def test_obj_single_triangle():
    mesh = FoldedMesh(np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0],
                                [0.0, 1.0, 0.0]]),
                      np.array([[0, 1, 2]]), ["top"], False)
    text = write_obj(mesh)
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    assert sum(l.startswith("v ") for l in lines) == 3
    assert sum(l.startswith("f ") for l in lines) == 1
    assert lines[-1] == "f 1 2 3"


def test_obj_round_trip_volume():
    mesh = build_mesh(SineArc(), SheetSpec(), 100)
    v1 = volume_mesh(mesh).value
    mesh2 = parse_obj(write_obj(mesh))
    assert mesh2.watertight
    assert volume_mesh(mesh2).value == pytest.approx(v1, abs=1e-9)


def test_obj_empty_mesh():
    mesh = build_mesh(RectangleCurve(0.0), SheetSpec(), 100)
    text = write_obj(mesh)
    assert text.startswith("#")
    assert "\nv " not in text and "\nf " not in text


# --- SVG ----------------------------------------------------------------------------

def _svg_paths(svg, cls):
    return re.findall(rf'<path d="([^"]+)"[^>]*class="{cls}"', svg)


def test_svg_structure():
    svg = write_svg_pattern(SineArc(), SheetSpec(), 100.0)
    assert svg.startswith("<svg")
    assert len(_svg_paths(svg, "crease")) == 4
    assert len(_svg_paths(svg, "cut")) == 1
    assert 'stroke-dasharray' in svg


def test_svg_flat_curve_degenerate():
    svg = write_svg_pattern(RectangleCurve(0.0), SheetSpec(), 50.0)
    assert len(_svg_paths(svg, "crease")) == 4


def test_svg_crease_endpoints_on_rectangle_edges():
    scale = 100.0
    sheet = SheetSpec()
    svg = write_svg_pattern(SineArc(), sheet, scale)
    length_mm = sheet.length * scale
    for path in _svg_paths(svg, "crease"):
        coords = re.findall(r"[ML] ([0-9.e+-]+) ([0-9.e+-]+)", path)
        y0 = float(coords[0][1])
        y1 = float(coords[-1][1])
        assert min(abs(y0 - 0.0), abs(y0 - length_mm)) <= 1e-6
        assert min(abs(y1 - 0.0), abs(y1 - length_mm)) <= 1e-6


def test_svg_fig1_layout_rotated():
    svg7 = write_svg_pattern(SineArc(), SheetSpec(), 10.0, layout="fig7")
    svg1 = write_svg_pattern(SineArc(), SheetSpec(), 10.0, layout="fig1")
    w7 = float(re.search(r'width="([0-9.]+)mm"', svg7).group(1))
    h7 = float(re.search(r'height="([0-9.]+)mm"', svg7).group(1))
    w1 = float(re.search(r'width="([0-9.]+)mm"', svg1).group(1))
    h1 = float(re.search(r'height="([0-9.]+)mm"', svg1).group(1))
    assert (w7, h7) == (h1, w1)


def test_svg_rejects_invalid():
    from pillowfold import InvalidCurveError
    with pytest.raises(InvalidCurveError):
        write_svg_pattern(PolylineCurve([0.6], symmetric=True), SheetSpec(), 10.0)
    with pytest.raises(DomainError):
        write_svg_pattern(SineArc(), SheetSpec(), -5.0)


# --- CLI -------------------------------------------------------------------------------

SINE_SPEC = json.dumps({"family": "sine-arc",
                        "sheet": {"width": 1.0, "length": SQRT2}})
STEEP_SPEC = json.dumps({"family": "polyline",
                         "params": {"heights": [0.6], "symmetric": True}})


def run_cli(*args, expect=0):
    proc = subprocess.run([sys.executable, "-m", "pillowfold.cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode == expect, proc.stderr or proc.stdout
    return proc


def test_cli_validate_exit_codes(tmp_path):
    spec = tmp_path / "sine.json"
    spec.write_text(SINE_SPEC)
    proc = run_cli("validate", "--spec", str(spec))
    report = json.loads(proc.stdout)
    assert report["valid"] is True

    bad = tmp_path / "steep.json"
    bad.write_text(STEEP_SPEC)
    proc = run_cli("validate", "--spec", str(bad), expect=2)
    assert json.loads(proc.stdout)["valid"] is False


def test_cli_domain_error_exit_2(tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text('{"family":"rhombus","params":{"h":0.6}}')
    proc = run_cli("validate", "--spec", str(spec), expect=2)
    assert "DomainError" in proc.stderr


def test_cli_volume_and_determinism(tmp_path):
    spec = tmp_path / "sine.json"
    spec.write_text(SINE_SPEC)
    out1 = tmp_path / "v1.json"
    out2 = tmp_path / "v2.json"
    p1 = run_cli("volume", "--spec", str(spec), "--out", str(out1))
    p2 = run_cli("volume", "--spec", str(spec), "--out", str(out2))
    assert "volume = 0.278150" in p1.stdout
    assert p1.stdout == p2.stdout
    d1 = json.loads(out1.read_text())
    d2 = json.loads(out2.read_text())
    d1.pop("timestamp"), d2.pop("timestamp")
    assert d1 == d2
    assert d1["result"]["value"] == pytest.approx(0.27815, abs=1e-5)


def test_cli_volume_methods(tmp_path):
    spec = tmp_path / "rect.json"
    spec.write_text(json.dumps({"family": "rectangle",
                                "params": {"h": 0.192489}}))
    p = run_cli("volume", "--spec", str(spec), "--method", "closed-form")
    assert "0.243692" in p.stdout
    p = run_cli("volume", "--spec", str(spec), "--method", "mesh", "--n", "500")
    assert "0.243692" in p.stdout


def test_cli_profile(tmp_path):
    spec = tmp_path / "sine.json"
    spec.write_text(SINE_SPEC)
    out = tmp_path / "profile.csv"
    run_cli("profile", "--spec", str(spec), "--n", "100", "--out", str(out))
    rows = out.read_text().splitlines()
    assert rows[0] == "x,z"
    assert len(rows) == 102
    x_last = float(rows[-1].split(",")[0])
    assert x_last == pytest.approx(2.0 / math.pi, abs=1e-3)


def test_cli_fold_obj(tmp_path):
    spec = tmp_path / "sine.json"
    spec.write_text(SINE_SPEC)
    out = tmp_path / "box.obj"
    run_cli("fold", "--spec", str(spec), "--resolution", "100",
            "--out", str(out))
    mesh = parse_obj(out.read_text())
    assert mesh.watertight
    assert volume_mesh(mesh).value == pytest.approx(0.27815, abs=1e-3)


def test_cli_fold_asymmetric(tmp_path):
    spec = tmp_path / "rect.json"
    spec.write_text(json.dumps({"family": "rectangle", "params": {"h": 0.25}}))
    out = tmp_path / "asym.obj"
    proc = run_cli("fold", "--spec", str(spec), "--resolution", "8",
                   "--theta1", "120", "--wall-depth", "0.3", "--out", str(out))
    assert "watertight=False" in proc.stdout
    mesh = parse_obj(out.read_text())
    assert len(mesh.triangles) > 0


def test_cli_pattern(tmp_path):
    spec = tmp_path / "sine.json"
    spec.write_text(SINE_SPEC)
    out = tmp_path / "pattern.svg"
    run_cli("pattern", "--spec", str(spec), "--scale-mm", "80", "--out",
            str(out))
    svg = out.read_text()
    assert svg.startswith("<svg")
    assert len(_svg_paths(svg, "crease")) == 4


def test_cli_bag_volume():
    proc = run_cli("bag-volume", "--width", "1", "--height",
                   str(SQRT2))
    assert "0.313629" in proc.stdout


def test_cli_arc_max():
    proc = run_cli("arc-max", "--sheet-length", "1")
    assert "0.170384" in proc.stdout


def test_cli_optimize_quad(tmp_path):
    out = tmp_path / "opt.json"
    proc = run_cli("optimize", "--family", "quad-bezier", "--out", str(out))
    assert "0.2944" in proc.stdout
    doc = json.loads(out.read_text())
    assert doc["result"]["converged"] is True
    assert doc["result"]["volume"] == pytest.approx(0.294436, abs=5e-4)


def test_cli_table1_small():
    proc = run_cli("table1", "--segments", "20", "--no-square")
    lines = proc.stdout.splitlines()
    assert lines[0].startswith("| Cross-sectional shape")
    assert any("rhombus" in l for l in lines)
    assert any("0.2435" in l for l in lines)
    assert any("polyline" in l for l in lines)


def test_cli_serve_and_thread_cap(tmp_path):
    import os
    import socket
    import time
    import urllib.request

    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        port = s.getsockname()[1]
    env = dict(os.environ, PILLOWFOLD_THREADS="1")
    proc = subprocess.Popen(
        [sys.executable, "-m", "pillowfold.cli", "serve", "--port", str(port)],
        env=env, stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    try:
        deadline = time.time() + 20.0
        body = None
        while time.time() < deadline:
            try:
                with urllib.request.urlopen(
                        f"http://127.0.0.1:{port}/healthz", timeout=1) as resp:
                    body = resp.read()
                    break
            except OSError:
                time.sleep(0.2)
        assert body == b'"ok"'
        req = urllib.request.Request(
            f"http://127.0.0.1:{port}/api/volume",
            data=SINE_SPEC.encode(), headers={"content-type": "application/json"})
        with urllib.request.urlopen(req, timeout=10) as resp:
            payload = json.loads(resp.read())
        assert payload["value"] == pytest.approx(0.27815, abs=1e-5)
    finally:
        proc.terminate()
        proc.wait(timeout=10)
