import numpy as np
import pytest

from pillowfold import PolylineCurve


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_polyline(rng, n_segments, symmetric=True, slope_scale=1.3):
    """Random nonnegative-height polyline; slopes roughly in +-slope_scale,
    so some curves violate the developability bound."""
    if symmetric:
        delta = 1.0 / (2.0 * n_segments)
        steps = rng.uniform(-slope_scale, slope_scale, n_segments) * delta
        heights = np.abs(np.cumsum(steps))
        return PolylineCurve(list(heights), symmetric=True)
    delta = 1.0 / (n_segments + 1.0)
    steps = rng.uniform(-slope_scale, slope_scale, n_segments) * delta
    heights = np.abs(np.cumsum(steps))
    return PolylineCurve(list(heights), symmetric=False)


def random_valid_polyline(rng, n_segments, symmetric=True, max_slope=0.95):
    """Random polyline rescaled so every segment slope is within +-max_slope."""
    curve = random_polyline(rng, n_segments, symmetric)
    nodes, values = curve.node_arrays()
    worst = np.max(np.abs(np.diff(values) / np.diff(nodes)))
    if worst > max_slope:
        scale = max_slope / worst
        curve = PolylineCurve([h * scale for h in curve.heights],
                              symmetric=symmetric)
    return curve
