"""Dimension synthesis, measurement, and deterministic placement.

Four dimension kinds exist: length (a line or two points), diameter
(a circle), radius (a circle or arc), and angle (an arc or two lines).
Synthesis walks a sketch under an annotation policy; placement computes a
text anchor offset from the dimensioned geometry by a configurable gap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from draftkit.errors import DanglingReferenceError
from draftkit.geometry import (
    Arc,
    Circle,
    ElementRef,
    Line,
    Point,
    Sketch,
    resolve_element,
)

DIMENSION_KINDS = ("angle", "diameter", "length", "radius")

DEFAULT_GAP = 15.0


@dataclass(frozen=True)
class Placement:
    """Where a dimension's text sits: radial offset used and the anchor point."""

    offset: float
    anchor: tuple[float, float]


@dataclass(frozen=True)
class Dimension:
    kind: str
    value: float
    refs: tuple[ElementRef, ...]
    placement: Placement | None = None


@dataclass(frozen=True)
class AnnotationPolicy:
    """Which primitives get dimensioned and how values are expressed.

    Lines get length, circles diameter, arcs radius; arc_angles additionally
    emits the sweep angle of every arc. model_space divides linear values by
    the sketch frame's scale (angles are scale-free).
    """

    lines: bool = True
    circles: bool = True
    arcs: bool = True
    arc_angles: bool = False
    model_space: bool = False
    gap: float = DEFAULT_GAP


def sketch_centroid(s: Sketch) -> tuple[float, float]:
    """Mean of primitive representative points (midpoints, centers, points)."""
    xs: list[float] = []
    ys: list[float] = []
    for i, p in enumerate(s.primitives):
        x, y = resolve_element(s, ElementRef(i, "whole"))
        xs.append(x)
        ys.append(y)
    n = len(xs)
    return (sum(xs) / n, sum(ys) / n)


def measure(s: Sketch, d: Dimension) -> float:
    """Re-measure a dimension's value from the geometry it references.

    length: distance between the two endpoints of a line ref, or between two
    point refs. diameter: 2r. radius: r. angle: arc sweep, or the angle in
    [0, 180] between two lines' directions.
    """
    prims = [s.primitives[r.index] if 0 <= r.index < len(s.primitives) else None for r in d.refs]
    if any(p is None for p in prims):
        raise DanglingReferenceError(f"dimension references missing primitive: {d.refs}")
    if d.kind == "length":
        if len(prims) == 1 and isinstance(prims[0], Line):
            return prims[0].length()
        if len(prims) == 2 and all(isinstance(p, Point) for p in prims):
            a, b = prims
            return math.hypot(a.x_p - b.x_p, a.y_p - b.y_p)
    elif d.kind == "diameter":
        if len(prims) == 1 and isinstance(prims[0], Circle):
            return 2.0 * prims[0].r
    elif d.kind == "radius":
        if len(prims) == 1 and isinstance(prims[0], (Circle, Arc)):
            return prims[0].r
    elif d.kind == "angle":
        if len(prims) == 1 and isinstance(prims[0], Arc):
            return prims[0].sweep()
        if len(prims) == 2 and all(isinstance(p, Line) for p in prims):
            a, b = prims
            dax, day = a.x_end - a.x_start, a.y_end - a.y_start
            dbx, dby = b.x_end - b.x_start, b.y_end - b.y_start
            na = math.hypot(dax, day)
            nb = math.hypot(dbx, dby)
            cosang = (dax * dbx + day * dby) / (na * nb)
            return math.degrees(math.acos(max(-1.0, min(1.0, cosang))))
    raise DanglingReferenceError(
        f"dimension kind {d.kind!r} does not apply to refs {d.refs}"
    )


def synthesize_dimensions(
    s: Sketch, policy: AnnotationPolicy = AnnotationPolicy()
) -> list[Dimension]:
    """Emit one dimension per eligible primitive, in primitive order."""
    scale = s.frame.scale if (policy.model_space and s.frame is not None) else 1.0
    out: list[Dimension] = []
    for i, p in enumerate(s.primitives):
        ref = (ElementRef(i, "whole"),)
        if isinstance(p, Line) and policy.lines:
            out.append(Dimension("length", p.length() / scale, ref))
        elif isinstance(p, Circle) and policy.circles:
            out.append(Dimension("diameter", 2.0 * p.r / scale, ref))
        elif isinstance(p, Arc) and policy.arcs:
            out.append(Dimension("radius", p.r / scale, ref))
            if policy.arc_angles:
                out.append(Dimension("angle", p.sweep(), ref))
    return out


def _unit(dx: float, dy: float) -> tuple[float, float]:
    n = math.hypot(dx, dy)
    return (dx / n, dy / n) if n > 0.0 else (1.0, 0.0)


def place_dimension(d: Dimension, s: Sketch, gap: float = DEFAULT_GAP) -> Dimension:
    """Attach a deterministic Placement to a dimension.

    Length dims sit `gap` units from the segment midpoint along the unit
    normal pointing away from the sketch centroid (left normal on ties).
    Diameter and circle radius dims sit on the circle at 45 degrees; arc
    radius dims on the arc at its sweep bisector; angle dims at the bisector
    r + gap out from the center.
    """
    prim = s.primitives[d.refs[0].index] if 0 <= d.refs[0].index < len(s.primitives) else None
    if prim is None:
        raise DanglingReferenceError(f"dimension references missing primitive: {d.refs}")

    if d.kind == "length":
        a = resolve_element(s, replace(d.refs[0], element="start" if isinstance(prim, Line) else "whole"))
        b = resolve_element(s, replace(d.refs[-1], element="end" if isinstance(prim, Line) else "whole"))
        mx, my = ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)
        ux, uy = _unit(b[0] - a[0], b[1] - a[1])
        nx, ny = -uy, ux
        cx, cy = sketch_centroid(s)
        if (mx - cx) * nx + (my - cy) * ny < 0.0:
            nx, ny = -nx, -ny
        return replace(d, placement=Placement(gap, (mx + gap * nx, my + gap * ny)))

    if isinstance(prim, Circle):
        ang = math.radians(45.0)
        r = prim.r if d.kind != "angle" else prim.r + gap
        anchor = (prim.x_c + r * math.cos(ang), prim.y_c + r * math.sin(ang))
        return replace(d, placement=Placement(r, anchor))

    if isinstance(prim, Arc):
        bis = math.radians((prim.theta_start + prim.sweep() / 2.0) % 360.0)
        r = prim.r + gap if d.kind == "angle" else prim.r
        anchor = (prim.x_a + r * math.cos(bis), prim.y_a + r * math.sin(bis))
        return replace(d, placement=Placement(r, anchor))

    if d.kind == "angle" and len(d.refs) == 2:
        # Two-line angle: anchor near the intersection, along the bisector.
        la = s.primitives[d.refs[0].index]
        lb = s.primitives[d.refs[1].index]
        if isinstance(la, Line) and isinstance(lb, Line):
            pt = _line_intersection(la, lb)
            if pt is None:
                ma = resolve_element(s, replace(d.refs[0], element="whole"))
                mb = resolve_element(s, replace(d.refs[1], element="whole"))
                anchor = ((ma[0] + mb[0]) / 2.0, (ma[1] + mb[1]) / 2.0)
                return replace(d, placement=Placement(gap, anchor))
            ua = _unit(la.x_end - la.x_start, la.y_end - la.y_start)
            ub = _unit(lb.x_end - lb.x_start, lb.y_end - lb.y_start)
            bx, by = _unit(ua[0] + ub[0], ua[1] + ub[1])
            return replace(d, placement=Placement(gap, (pt[0] + gap * bx, pt[1] + gap * by)))

    raise DanglingReferenceError(f"cannot place dimension kind {d.kind!r} on refs {d.refs}")


def _line_intersection(a: Line, b: Line) -> tuple[float, float] | None:
    dax, day = a.x_end - a.x_start, a.y_end - a.y_start
    dbx, dby = b.x_end - b.x_start, b.y_end - b.y_start
    den = dax * dby - day * dbx
    if abs(den) < 1e-12 * max(1.0, abs(dax), abs(day), abs(dbx), abs(dby)):
        return None
    t = ((b.x_start - a.x_start) * dby - (b.y_start - a.y_start) * dbx) / den
    return (a.x_start + t * dax, a.y_start + t * day)
