"""Fixture generation: seeded random documents and constructed exact cases.

Random documents are self-consistent (constraints extracted from and
dimensions measured on their own geometry), drawn on a millunit grid so that
6-decimal serialization is exact. The constructed fixtures come with
hand-enumerable constraint sets and decisive margins against the default
tolerances.
"""
from __future__ import annotations

import random

from draftkit.codec import Document
from draftkit.constraints import Constraint, extract_constraints
from draftkit.dimensions import AnnotationPolicy, place_dimension, synthesize_dimensions
from draftkit.geometry import (
    Arc,
    Circle,
    ElementRef,
    Line,
    Point,
    Primitive,
    Sketch,
)


def _grid(rng: random.Random, lo: float, hi: float, decimals: int = 3) -> float:
    step = 10**decimals
    return rng.randrange(int(lo * step), int(hi * step) + 1) / step


def random_primitive(rng: random.Random) -> Primitive:
    """One random valid primitive with frame-range coordinates."""
    roll = rng.random()
    if roll < 0.15:
        return Point(_grid(rng, 10, 989), _grid(rng, 10, 989))
    if roll < 0.55:
        while True:
            line = Line(
                _grid(rng, 10, 989),
                _grid(rng, 10, 989),
                _grid(rng, 10, 989),
                _grid(rng, 10, 989),
                1 if rng.random() < 0.9 else 0,
            )
            if line.length() > 1.0:
                return line
    if roll < 0.8:
        return Circle(_grid(rng, 210, 789), _grid(rng, 210, 789), _grid(rng, 10, 200))
    theta_start = _grid(rng, 0, 359)
    sweep = _grid(rng, 15, 340)
    return Arc(
        _grid(rng, 210, 789),
        _grid(rng, 210, 789),
        _grid(rng, 10, 200),
        theta_start,
        round((theta_start + sweep) % 360.0, 3),
    )


def random_sketch(rng: random.Random, min_prims: int = 3, max_prims: int = 12) -> Sketch:
    n = rng.randint(min_prims, max_prims)
    return Sketch(primitives=tuple(random_primitive(rng) for _ in range(n)))


def random_document(
    rng: random.Random,
    min_prims: int = 3,
    max_prims: int = 12,
    with_constraints: bool = True,
    with_dimensions: bool = True,
    with_placement: bool = True,
) -> Document:
    """A self-consistent random document in frame coordinates."""
    sketch = random_sketch(rng, min_prims, max_prims)
    constraints: tuple[Constraint, ...] = ()
    if with_constraints:
        constraints = tuple(extract_constraints(sketch))
    dims = ()
    if with_dimensions:
        policy = AnnotationPolicy(arc_angles=rng.random() < 0.5)
        synthesized = synthesize_dimensions(sketch, policy)
        if with_placement:
            synthesized = [place_dimension(d, sketch) for d in synthesized]
        dims = tuple(synthesized)
    return Document(sketch=sketch, constraints=constraints, dimensions=dims)


def perturb_document(doc: Document, rng: random.Random, sigma: float = 2.0) -> Document:
    """Jitter every coordinate (not angles or flags) by uniform(-sigma, sigma).

    Values and placements are re-derived from the jittered geometry, so the
    result stays self-consistent; constraints are re-extracted.
    """

    def j() -> float:
        return rng.uniform(-sigma, sigma)

    def clamp(x: float) -> float:
        return min(999.0, max(0.0, x))

    prims: list[Primitive] = []
    for p in doc.sketch.primitives:
        if isinstance(p, Point):
            prims.append(Point(clamp(p.x_p + j()), clamp(p.y_p + j())))
        elif isinstance(p, Line):
            prims.append(
                Line(
                    clamp(p.x_start + j()),
                    clamp(p.y_start + j()),
                    clamp(p.x_end + j()),
                    clamp(p.y_end + j()),
                    p.v,
                )
            )
        elif isinstance(p, Circle):
            prims.append(Circle(clamp(p.x_c + j()), clamp(p.y_c + j()), max(1.0, p.r + j())))
        else:
            prims.append(
                Arc(clamp(p.x_a + j()), clamp(p.y_a + j()), max(1.0, p.r + j()), p.theta_start, p.theta_end)
            )
    sketch = Sketch(primitives=tuple(prims), frame=doc.sketch.frame)
    had_angles = any(d.kind == "angle" for d in doc.dimensions)
    policy = AnnotationPolicy(arc_angles=had_angles)
    dims = tuple(place_dimension(d, sketch) for d in synthesize_dimensions(sketch, policy))
    return Document(
        sketch=sketch,
        constraints=tuple(extract_constraints(sketch)),
        dimensions=dims if doc.dimensions else (),
    )


# --- constructed exact fixtures ---------------------------------------------


def rectangle_sketch(x0: float, y0: float, w: float, h: float) -> Sketch:
    """Axis-aligned rectangle drawn as four lines: bottom, right, top, left."""
    x1, y1 = x0 + w, y0 + h
    return Sketch(
        primitives=(
            Line(x0, y0, x1, y0),
            Line(x1, y0, x1, y1),
            Line(x1, y1, x0, y1),
            Line(x0, y1, x0, y0),
        )
    )


def rectangle_constraints() -> frozenset[Constraint]:
    """The 14 constraints of any axis-aligned rectangle drawn bottom/right/top/left.

    4 corner coincidences, 2 parallels, 4 perpendiculars, 2 horizontals, and
    2 verticals.
    """

    def c(kind: str, *refs: tuple[int, str]) -> Constraint:
        return Constraint(kind, tuple(ElementRef(i, tag) for i, tag in refs))

    return frozenset(
        {
            c("coincident", (0, "end"), (1, "start")),
            c("coincident", (1, "end"), (2, "start")),
            c("coincident", (2, "end"), (3, "start")),
            c("coincident", (0, "start"), (3, "end")),
            c("parallel", (0, "whole"), (2, "whole")),
            c("parallel", (1, "whole"), (3, "whole")),
            c("perpendicular", (0, "whole"), (1, "whole")),
            c("perpendicular", (0, "whole"), (3, "whole")),
            c("perpendicular", (1, "whole"), (2, "whole")),
            c("perpendicular", (2, "whole"), (3, "whole")),
            c("horizontal", (0, "whole")),
            c("horizontal", (2, "whole")),
            c("vertical", (1, "whole")),
            c("vertical", (3, "whole")),
        }
    )


def tangent_pair_sketch(cx: float, cy: float, r: float, drop: float = 0.0) -> Sketch:
    """A circle and a horizontal line tangent to its top (offset by `drop`)."""
    y = cy + r - drop
    return Sketch(primitives=(Line(cx - 2 * r, y, cx + 2 * r, y), Circle(cx, cy, r)))


def tangent_pair_constraints() -> frozenset[Constraint]:
    return frozenset(
        {
            Constraint("horizontal", (ElementRef(0, "whole"),)),
            Constraint("tangent", (ElementRef(0, "whole"), ElementRef(1, "whole"))),
        }
    )


def concentric_sketch(cx: float, cy: float, r1: float, r2: float) -> Sketch:
    return Sketch(primitives=(Circle(cx, cy, r1), Circle(cx, cy, r2)))


def concentric_constraints() -> frozenset[Constraint]:
    return frozenset({Constraint("concentric", (ElementRef(0, "whole"), ElementRef(1, "whole")))})


def external_tangent_circles_sketch(cx: float, cy: float, r1: float, r2: float) -> Sketch:
    """Two circles touching externally along the x axis."""
    return Sketch(primitives=(Circle(cx, cy, r1), Circle(cx + r1 + r2, cy, r2)))


def external_tangent_circles_constraints() -> frozenset[Constraint]:
    return frozenset({Constraint("tangent", (ElementRef(0, "whole"), ElementRef(1, "whole")))})


def arc_chain_sketch(cx: float, cy: float, r: float) -> Sketch:
    """A quarter arc joined to a line at its 0-degree endpoint.

    The arc runs 0 -> 90 degrees around (cx, cy); the line heads away from
    the arc start at slope -2, so it is tangent to nothing and triggers
    neither horizontal nor vertical.
    """
    sx, sy = cx + r, cy
    return Sketch(primitives=(Arc(cx, cy, r, 0.0, 90.0), Line(sx, sy, sx + r, sy - 2 * r)))


def arc_chain_constraints() -> frozenset[Constraint]:
    return frozenset(
        {Constraint("coincident", (ElementRef(0, "start"), ElementRef(1, "start")))}
    )


def constraint_fixture_suite() -> list[tuple[str, Sketch, frozenset[Constraint]]]:
    """Thirty constructed sketches with hand-enumerated constraint sets."""
    suite: list[tuple[str, Sketch, frozenset[Constraint]]] = []
    for k, (x0, y0, w, h) in enumerate(
        [
            (100, 100, 700, 400),
            (50, 200, 300, 300),
            (10, 10, 900, 500),
            (250, 125, 500, 750),
            (333, 111, 222, 444),
            (60, 450, 640, 320),
            (120, 40, 160, 880),
            (400, 300, 180, 90),
            (75, 75, 850, 425),
            (210, 330, 440, 550),
        ]
    ):
        suite.append((f"rectangle_{k}", rectangle_sketch(x0, y0, w, h), rectangle_constraints()))
    for k, (cx, cy, r) in enumerate([(300, 300, 100), (500, 250, 75), (420, 500, 150), (618, 360, 60), (256, 256, 128)]):
        suite.append((f"tangent_line_{k}", tangent_pair_sketch(cx, cy, r), tangent_pair_constraints()))
    for k, (cx, cy, r1, r2) in enumerate([(480, 480, 200, 120), (300, 600, 90, 45), (512, 384, 256, 64), (700, 300, 150, 30), (350, 350, 180, 90)]):
        suite.append((f"concentric_{k}", concentric_sketch(cx, cy, r1, r2), concentric_constraints()))
    for k, (cx, cy, r1, r2) in enumerate([(250, 400, 120, 80), (150, 300, 60, 90), (300, 500, 100, 100), (200, 250, 50, 125), (380, 420, 140, 70)]):
        suite.append(
            (
                f"external_tangent_{k}",
                external_tangent_circles_sketch(cx, cy, r1, r2),
                external_tangent_circles_constraints(),
            )
        )
    for k, (cx, cy, r) in enumerate([(300, 500, 150), (200, 600, 100), (450, 450, 200), (350, 700, 120), (260, 520, 90)]):
        suite.append((f"arc_chain_{k}", arc_chain_sketch(cx, cy, r), arc_chain_constraints()))
    return suite


