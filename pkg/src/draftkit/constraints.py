"""Geometric constraint detection over sketches.

Seven constraint kinds are recognized: coincident, concentric, horizontal,
parallel, perpendicular, tangent, and vertical. Detection is tolerance-based
(positions within tau_pos drawing units, angles within tau_ang degrees) and
deterministic: symmetric constraints are canonicalized with ascending
references and extraction output is sorted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from draftkit.geometry import (
    Arc,
    Circle,
    ElementRef,
    Line,
    Primitive,
    Sketch,
    arc_endpoints,
)

CONSTRAINT_KINDS = (
    "coincident",
    "concentric",
    "horizontal",
    "parallel",
    "perpendicular",
    "tangent",
    "vertical",
)
SYMMETRIC_KINDS = frozenset(
    {"coincident", "concentric", "parallel", "perpendicular", "tangent"}
)


@dataclass(frozen=True)
class Constraint:
    kind: str
    refs: tuple[ElementRef, ...]


@dataclass(frozen=True)
class ToleranceConfig:
    """Detection tolerances: positions in drawing units, angles in degrees."""

    tau_pos: float = 1.0
    tau_ang: float = 0.5

    def __post_init__(self) -> None:
        if self.tau_pos <= 0.0 or self.tau_ang <= 0.0:
            raise ValueError("tolerances must be positive")


DEFAULT_TOLERANCES = ToleranceConfig()


def canonical_constraint(c: Constraint) -> Constraint:
    """Sort refs of symmetric kinds by (index, element) so equality is stable."""
    if c.kind in SYMMETRIC_KINDS:
        return Constraint(c.kind, tuple(sorted(c.refs, key=ElementRef.sort_key)))
    return c


def constraint_sort_key(c: Constraint) -> tuple:
    return (c.kind, tuple(r.sort_key() for r in c.refs))


def _direction(line: Line) -> tuple[float, float]:
    dx = line.x_end - line.x_start
    dy = line.y_end - line.y_start
    n = math.hypot(dx, dy)
    return (dx / n, dy / n)


def _endpoints(p: Primitive) -> list[tuple[str, tuple[float, float]]]:
    """Tagged endpoints for endpoint-bearing primitives; empty otherwise."""
    if isinstance(p, Line):
        return [("start", (p.x_start, p.y_start)), ("end", (p.x_end, p.y_end))]
    if isinstance(p, Arc):
        start, end = arc_endpoints(p)
        return [("start", (start.x_p, start.y_p)), ("end", (end.x_p, end.y_p))]
    return []


def _center_radius(p: Primitive) -> tuple[float, float, float] | None:
    if isinstance(p, Circle):
        return (p.x_c, p.y_c, p.r)
    if isinstance(p, Arc):
        return (p.x_a, p.y_a, p.r)
    return None


def _point_line_distance(px: float, py: float, line: Line) -> float:
    """Distance from a point to the line's supporting (infinite) line."""
    dx, dy = _direction(line)
    return abs((px - line.x_start) * dy - (py - line.y_start) * dx)


def _dist(a: tuple[float, float], b: tuple[float, float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _duplicate_segments(a: Line, b: Line, tau_pos: float) -> bool:
    # Double-drawn edges: same endpoint set, forward or reversed.
    a1 = (a.x_start, a.y_start)
    a2 = (a.x_end, a.y_end)
    b1 = (b.x_start, b.y_start)
    b2 = (b.x_end, b.y_end)
    forward = _dist(a1, b1) <= tau_pos and _dist(a2, b2) <= tau_pos
    reverse = _dist(a1, b2) <= tau_pos and _dist(a2, b1) <= tau_pos
    return forward or reverse


def classify_single(
    p: Primitive, tol: ToleranceConfig = DEFAULT_TOLERANCES, index: int = 0
) -> list[Constraint]:
    """Single-primitive constraints: horizontal / vertical lines."""
    out: list[Constraint] = []
    if isinstance(p, Line):
        dx, dy = _direction(p)
        sin_tol = math.sin(math.radians(tol.tau_ang))
        ref = (ElementRef(index, "whole"),)
        if abs(dy) <= sin_tol:
            out.append(Constraint("horizontal", ref))
        if abs(dx) <= sin_tol:
            out.append(Constraint("vertical", ref))
    return out


def classify_pair(
    a: Primitive,
    b: Primitive,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    index_a: int = 0,
    index_b: int = 1,
) -> list[Constraint]:
    """Pairwise constraints between two primitives of a sketch.

    Line pairs yield parallel or perpendicular (perpendicular wins when both
    would fire; duplicates of the same segment yield neither). Line/curve and
    curve/curve pairs yield tangent, curve pairs concentric, and every pair
    of endpoint-bearing primitives yields coincident constraints for
    endpoints that touch.
    """
    out: list[Constraint] = []
    sin_tol = math.sin(math.radians(tol.tau_ang))

    if isinstance(a, Line) and isinstance(b, Line):
        da = _direction(a)
        db = _direction(b)
        cross = abs(da[0] * db[1] - da[1] * db[0])
        dot = abs(da[0] * db[0] + da[1] * db[1])
        whole = (ElementRef(index_a, "whole"), ElementRef(index_b, "whole"))
        if dot <= sin_tol:
            out.append(Constraint("perpendicular", whole))
        elif cross <= sin_tol and not _duplicate_segments(a, b, tol.tau_pos):
            out.append(Constraint("parallel", whole))

    ca = _center_radius(a)
    cb = _center_radius(b)
    if isinstance(a, Line) and cb is not None:
        if abs(_point_line_distance(cb[0], cb[1], a) - cb[2]) <= tol.tau_pos:
            out.append(
                Constraint("tangent", (ElementRef(index_a, "whole"), ElementRef(index_b, "whole")))
            )
    elif isinstance(b, Line) and ca is not None:
        if abs(_point_line_distance(ca[0], ca[1], b) - ca[2]) <= tol.tau_pos:
            out.append(
                Constraint("tangent", (ElementRef(index_a, "whole"), ElementRef(index_b, "whole")))
            )
    elif ca is not None and cb is not None:
        d = math.hypot(ca[0] - cb[0], ca[1] - cb[1])
        whole = (ElementRef(index_a, "whole"), ElementRef(index_b, "whole"))
        if d <= tol.tau_pos:
            out.append(Constraint("concentric", whole))
        external = abs(d - (ca[2] + cb[2])) <= tol.tau_pos
        internal = abs(d - abs(ca[2] - cb[2])) <= tol.tau_pos
        if external or internal:
            out.append(Constraint("tangent", whole))

    for tag_a, pt_a in _endpoints(a):
        for tag_b, pt_b in _endpoints(b):
            if _dist(pt_a, pt_b) <= tol.tau_pos:
                out.append(
                    Constraint(
                        "coincident",
                        (ElementRef(index_a, tag_a), ElementRef(index_b, tag_b)),
                    )
                )

    return [canonical_constraint(c) for c in out]


def extract_constraints(
    s: Sketch, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> list[Constraint]:
    """All single and pairwise constraints of a sketch, deduplicated and sorted."""
    found: set[Constraint] = set()
    for i, p in enumerate(s.primitives):
        found.update(classify_single(p, tol, index=i))
    for (i, a), (j, b) in combinations(enumerate(s.primitives), 2):
        found.update(classify_pair(a, b, tol, index_a=i, index_b=j))
    return sorted(found, key=constraint_sort_key)
