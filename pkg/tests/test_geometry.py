"""Geometry model tests: parameter vectors, normalization, validation."""
import math
import random

import pytest

from draftkit.errors import (
    DanglingReferenceError,
    DegenerateBoundingBoxError,
    EmptySketchError,
    MissingFrameError,
)
from draftkit.geometry import (
    ACTIVE_PARAMS,
    Arc,
    Circle,
    ElementRef,
    Line,
    NormalizationTransform,
    Point,
    Sketch,
    arc_endpoints,
    denormalize_sketch,
    normalize_sketch,
    param_vector,
    primitive_bbox,
    resolve_element,
    sketch_bbox,
    validate_sketch,
)

APPROX9 = lambda x: pytest.approx(x, abs=1e-9)  # noqa: E731


def square_sketch(x0, y0, side):
    x1, y1 = x0 + side, y0 + side
    return Sketch(
        primitives=(
            Line(x0, y0, x1, y0),
            Line(x1, y0, x1, y1),
            Line(x1, y1, x0, y1),
            Line(x0, y1, x0, y0),
        )
    )


# --- param_vector -------------------------------------------------------------


def test_param_vector_point():
    assert param_vector(Point(3, 4)).values == (3, 4, 0, 0, 0)


def test_param_vector_line_includes_validity():
    assert param_vector(Line(0, 0, 10, 0, 1)).values == (0, 0, 10, 0, 1)
    assert param_vector(Line(0, 0, 10, 0, 0)).values == (0, 0, 10, 0, 0)


def test_param_vector_circle_zero_padded():
    assert param_vector(Circle(500, 500, 100)).values == (500, 500, 100, 0, 0)


def test_param_vector_arc_uses_all_slots():
    pv = param_vector(Arc(500, 500, 100, 0, 90))
    assert pv.values == (500, 500, 100, 0, 90)
    assert pv.kind == "arc"


def test_active_params_exclude_line_flag():
    assert ACTIVE_PARAMS == {"point": 2, "line": 4, "circle": 3, "arc": 5}


def test_param_vector_injective_within_kind(rng):
    seen = {}
    for _ in range(200):
        p = Line(
            rng.uniform(0, 999), rng.uniform(0, 999), rng.uniform(0, 999), rng.uniform(0, 999)
        )
        v = param_vector(p).values
        assert seen.setdefault(v, p) == p


# --- arc endpoints ------------------------------------------------------------


def test_arc_endpoints_quarter():
    start, end = arc_endpoints(Arc(500, 500, 100, 0, 90))
    assert (start.x_p, start.y_p) == APPROX9((600, 500))
    assert (end.x_p, end.y_p) == APPROX9((500, 600))


def test_arc_endpoints_half_turn():
    start, end = arc_endpoints(Arc(500, 500, 100, 90, 270))
    assert (start.x_p, start.y_p) == APPROX9((500, 600))
    assert (end.x_p, end.y_p) == APPROX9((500, 400))


def test_arc_endpoints_diagonal():
    # cos 45 = sin 45 = sqrt(2)/2, radius 50 around (300, 300)
    start, end = arc_endpoints(Arc(300, 300, 50, 45, 135))
    d = 50 * math.sqrt(2) / 2
    assert (start.x_p, start.y_p) == APPROX9((300 + d, 300 + d))
    assert (end.x_p, end.y_p) == APPROX9((300 - d, 300 + d))


def test_arc_sweep_wraps_through_zero():
    assert Arc(0, 0, 1, 350, 10).sweep() == pytest.approx(20.0)
    assert Arc(0, 0, 1, 10, 350).sweep() == pytest.approx(340.0)


def test_full_turn_endpoints_coincide():
    # validate_sketch rejects zero-sweep arcs; this documents why: the two
    # endpoints land on the same point.
    start, end = arc_endpoints(Arc(100, 100, 40, 30, 30))
    assert math.hypot(start.x_p - end.x_p, start.y_p - end.y_p) < 1e-9


# --- bounding boxes -----------------------------------------------------------


def test_bbox_arc_includes_cardinal_crossing():
    # Sweep 0..180 passes through 90 degrees, so the top of the circle counts.
    assert primitive_bbox(Arc(0, 0, 10, 0, 180)) == APPROX9((-10, 0, 10, 10))


def test_bbox_arc_endpoints_only():
    a = Arc(0, 0, 10, 45, 135)
    d = 10 * math.sqrt(2) / 2
    assert primitive_bbox(a) == APPROX9((-d, d, d, 10))


def test_sketch_bbox_unions_primitives():
    s = Sketch(primitives=(Circle(0, 0, 5), Point(20, -3)))
    assert sketch_bbox(s) == (-5, -5, 20, 5)


def test_sketch_bbox_empty_raises():
    with pytest.raises(EmptySketchError):
        sketch_bbox(Sketch())


# --- normalization ------------------------------------------------------------


def test_normalize_square_spans_grid():
    normalized, t = normalize_sketch(square_sketch(0, 0, 10))
    assert t.scale == pytest.approx(99.9)
    assert sketch_bbox(normalized) == APPROX9((0, 0, 999, 999))


def test_normalize_line_centers_short_axis():
    # Long axis x maps 0..2 onto 0..999 (scale 499.5). The y span becomes
    # 499.5 and is centered in [0, 999]: pad (999 - 499.5) / 2 = 249.75.
    normalized, t = normalize_sketch(Sketch(primitives=(Line(0, 0, 2, 1),)))
    line = normalized.primitives[0]
    assert t.scale == pytest.approx(499.5)
    assert (line.x_start, line.y_start) == APPROX9((0, 249.75))
    assert (line.x_end, line.y_end) == APPROX9((999, 749.25))


def test_normalize_scales_radii():
    s = Sketch(primitives=(Line(0, 0, 10, 10), Circle(5, 5, 2)))
    normalized, t = normalize_sketch(s)
    circle = normalized.primitives[1]
    assert t.scale == pytest.approx(99.9)
    assert (circle.x_c, circle.y_c) == APPROX9((499.5, 499.5))
    assert circle.r == pytest.approx(199.8)


def test_normalize_keeps_angles():
    s = Sketch(primitives=(Line(0, 0, 100, 0), Arc(50, 20, 5, 30, 200)))
    normalized, _ = normalize_sketch(s)
    arc = normalized.primitives[1]
    assert (arc.theta_start, arc.theta_end) == (30, 200)


def test_normalize_empty_raises():
    with pytest.raises(EmptySketchError):
        normalize_sketch(Sketch())


def test_normalize_degenerate_raises():
    with pytest.raises(DegenerateBoundingBoxError):
        normalize_sketch(Sketch(primitives=(Point(5, 5), Point(5, 5))))


def test_denormalize_exact_example():
    normalized, t = normalize_sketch(square_sketch(0, 0, 10))
    raw = denormalize_sketch(normalized, t)
    assert sketch_bbox(raw) == APPROX9((0, 0, 10, 10))


def test_denormalize_requires_matching_frame():
    normalized, t = normalize_sketch(square_sketch(0, 0, 10))
    with pytest.raises(MissingFrameError):
        denormalize_sketch(Sketch(primitives=normalized.primitives), t)
    with pytest.raises(MissingFrameError):
        denormalize_sketch(normalized, NormalizationTransform(2.0, 0.0, 0.0))


def test_identity_transform_round_trip():
    t = NormalizationTransform(1.0, 0.0, 0.0)
    assert t.to_frame(12.5, -3.0) == (12.5, -3.0)
    assert t.to_model(12.5, -3.0) == (12.5, -3.0)


def test_normalize_round_trip_random(rng):
    for _ in range(40):
        prims = []
        for _ in range(rng.randint(2, 6)):
            kind = rng.randrange(3)
            if kind == 0:
                prims.append(
                    Line(
                        rng.uniform(-800, 800),
                        rng.uniform(-800, 800),
                        rng.uniform(-800, 800),
                        rng.uniform(-800, 800),
                    )
                )
            elif kind == 1:
                prims.append(
                    Circle(rng.uniform(-500, 500), rng.uniform(-500, 500), rng.uniform(0.5, 90))
                )
            else:
                prims.append(
                    Arc(
                        rng.uniform(-500, 500),
                        rng.uniform(-500, 500),
                        rng.uniform(0.5, 90),
                        rng.uniform(0, 359),
                        rng.uniform(0, 359),
                    )
                )
        raw = Sketch(primitives=tuple(prims))
        normalized, t = normalize_sketch(raw)
        back = denormalize_sketch(normalized, t)
        for p, q in zip(raw.primitives, back.primitives):
            for a, b in zip(param_vector(p).values, param_vector(q).values):
                assert abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))
        lo_x, lo_y, hi_x, hi_y = sketch_bbox(normalized)
        assert min(lo_x, lo_y) >= -1e-9
        assert max(hi_x, hi_y) <= 999 + 1e-9


# --- validation ---------------------------------------------------------------


def test_validate_clean_rectangle():
    assert validate_sketch(square_sketch(10, 10, 100)) == []


def test_validate_zero_length_line():
    out = validate_sketch(Sketch(primitives=(Line(0, 0, 0, 0, 1),)))
    assert [(v.code, v.index) for v in out] == [("zero_length_line", 0)]


def test_validate_nonpositive_radius():
    out = validate_sketch(Sketch(primitives=(Circle(500, 500, -2),)))
    assert [(v.code, v.index) for v in out] == [("nonpositive_radius", 0)]


def test_validate_degenerate_arc():
    out = validate_sketch(Sketch(primitives=(Arc(500, 500, 10, 45, 45),)))
    assert ("degenerate_arc", 0) in [(v.code, v.index) for v in out]


def test_validate_angle_range_without_frame():
    out = validate_sketch(Sketch(primitives=(Arc(500, 500, 10, -5, 400),)))
    codes = [v.code for v in out]
    assert codes.count("out_of_range") == 2


def test_validate_coordinates_only_with_frame():
    bad = (Line(-5, 0, 100, 0, 1),)
    assert validate_sketch(Sketch(primitives=bad)) == []
    framed = Sketch(primitives=bad, frame=NormalizationTransform(1.0, 0.0, 0.0))
    assert [v.code for v in validate_sketch(framed)] == ["out_of_range"]


def test_validate_bad_validity_flag():
    out = validate_sketch(Sketch(primitives=(Line(0, 0, 1, 1, 2),)))
    assert [v.code for v in out] == ["out_of_range"]


# --- element resolution -------------------------------------------------------


def test_resolve_line_elements():
    s = Sketch(primitives=(Line(0, 0, 10, 20),))
    assert resolve_element(s, ElementRef(0, "start")) == (0, 0)
    assert resolve_element(s, ElementRef(0, "end")) == (10, 20)
    assert resolve_element(s, ElementRef(0, "whole")) == (5, 10)


def test_resolve_arc_elements():
    s = Sketch(primitives=(Arc(500, 500, 100, 0, 90),))
    assert resolve_element(s, ElementRef(0, "center")) == (500, 500)
    assert resolve_element(s, ElementRef(0, "start")) == APPROX9((600, 500))
    assert resolve_element(s, ElementRef(0, "end")) == APPROX9((500, 600))


def test_resolve_circle_center():
    s = Sketch(primitives=(Circle(5, 6, 2),))
    assert resolve_element(s, ElementRef(0, "center")) == (5, 6)
    assert resolve_element(s, ElementRef(0, "whole")) == (5, 6)


def test_resolve_out_of_range_index():
    s = Sketch(primitives=(Point(1, 2),))
    with pytest.raises(DanglingReferenceError):
        resolve_element(s, ElementRef(3, "whole"))


def test_resolve_wrong_element_for_kind():
    s = Sketch(primitives=(Circle(5, 6, 2),))
    with pytest.raises(DanglingReferenceError):
        resolve_element(s, ElementRef(0, "start"))


def test_element_ref_sort_key_orders_tags():
    refs = [ElementRef(0, "center"), ElementRef(0, "whole"), ElementRef(0, "end")]
    ordered = sorted(refs, key=ElementRef.sort_key)
    assert [r.element for r in ordered] == ["whole", "end", "center"]
