"""Backend parity: the compiled kernels must match the numpy reference bit for bit."""
import numpy as np
import pytest

from draftkit import _kernels
from draftkit.geometry import Arc, Circle, Line, Point, Sketch
from draftkit.metrics import chamfer
from draftkit.raster import render, sample_points

HAS_NATIVE = "native" in _kernels.available_backends()

needs_native = pytest.mark.skipif(not HAS_NATIVE, reason="compiled backend not built")


def coverage_sketch():
    # Exercises every kernel entry point, including both arc sweep branches.
    return Sketch(
        primitives=(
            Point(120, 840),
            Line(50, 50, 900, 120, 1),
            Line(100, 700, 600, 700, 0),
            Line(300, 50, 300, 950, 1),
            Circle(500, 500, 220),
            Circle(80, 80, 40),
            Arc(700, 300, 150, 20, 160),  # minor sweep
            Arc(300, 300, 90, 300, 80),  # crosses 0 degrees
            Arc(650, 750, 120, 10, 350),  # major sweep
        )
    )


def test_backend_registry():
    assert "reference" in _kernels.available_backends()
    assert _kernels.get_backend("reference").name == "reference"
    assert _kernels.get_backend(None).name == _kernels.backend_name()
    with pytest.raises(ValueError):
        _kernels.get_backend("vulkan")


@needs_native
def test_native_backend_resolves():
    assert _kernels.get_backend("native").name == "native"


@needs_native
@pytest.mark.parametrize("size,stroke", [(64, 1.0), (128, 2.0), (256, 3.5)])
def test_render_parity_is_bitwise(size, stroke):
    s = coverage_sketch()
    a = render(s, size, size, stroke=stroke, backend="native")
    b = render(s, size, size, stroke=stroke, backend="reference")
    assert np.array_equal(a.pixels, b.pixels)


@needs_native
def test_render_parity_random_sketches(rng):
    from draftkit.fixtures import random_sketch

    for _ in range(10):
        s = random_sketch(rng)
        a = render(s, 96, 96, backend="native")
        b = render(s, 96, 96, backend="reference")
        assert np.array_equal(a.pixels, b.pixels)


def test_chamfer_identity_is_exact_zero():
    pts = sample_points(coverage_sketch(), per_primitive=32)
    for name in _kernels.available_backends():
        assert chamfer(pts, pts, backend=name) == 0.0


def test_chamfer_known_value_both_backends():
    a = sample_points(Sketch(primitives=(Line(0, 200, 999, 200, 1),)), per_primitive=1000)
    b = sample_points(Sketch(primitives=(Line(0, 210, 999, 210, 1),)), per_primitive=1000)
    for name in _kernels.available_backends():
        assert chamfer(a, b, backend=name) == pytest.approx(10.0, abs=1e-12)


@needs_native
def test_chamfer_parity_random_sets(rng):
    # Summation order differs between backends, so parity is to rounding only.
    for _ in range(20):
        a = np.array([[rng.uniform(0, 999), rng.uniform(0, 999)] for _ in range(rng.randint(1, 60))])
        b = np.array([[rng.uniform(0, 999), rng.uniform(0, 999)] for _ in range(rng.randint(1, 60))])
        from draftkit.raster import PointSample

        ca = chamfer(PointSample(a), PointSample(b), backend="native")
        cb = chamfer(PointSample(a), PointSample(b), backend="reference")
        assert ca == pytest.approx(cb, rel=1e-12)


def test_nn_mean_distance_reference_matches_numpy_oracle(rng):
    ref = _kernels.get_backend("reference")
    a = np.array([[rng.uniform(0, 100), rng.uniform(0, 100)] for _ in range(25)])
    b = np.array([[rng.uniform(0, 100), rng.uniform(0, 100)] for _ in range(40)])
    diff = a[:, None, :] - b[None, :, :]
    want = np.sqrt((diff**2).sum(axis=2)).min(axis=1).mean()
    assert ref.nn_mean_distance(a, b) == pytest.approx(want, rel=1e-12)


def test_env_override_errors_are_loud(monkeypatch):
    monkeypatch.setenv("DRAFTKIT_KERNELS", "cuda")
    with pytest.raises(RuntimeError):
        _kernels._select()
    monkeypatch.setenv("DRAFTKIT_KERNELS", "reference")
    assert _kernels._select().name == "reference"
