"""Core geometry model: primitives, sketches, and frame normalization.

Primitives use the hybrid parametrization: a point is (x_p, y_p), a line is
(x_start, y_start, x_end, y_end, v) with a binary validity flag v (1 solid,
0 dashed), a circle is (x_c, y_c, r), and an arc is (x_a, y_a, r,
theta_start, theta_end) with angles in degrees swept counter-clockwise.
Normalized sketches live in the [0, 1000) frame with geometry fitted to
[0, 999] on the longer bounding-box axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, Union

from draftkit.errors import (
    DanglingReferenceError,
    DegenerateBoundingBoxError,
    EmptySketchError,
    MissingFrameError,
)

EHP_SPAN = 999.0
EHP_LIMIT = 1000.0

ELEMENT_TAGS = ("whole", "start", "end", "center")
_ELEMENT_ORDER = {tag: i for i, tag in enumerate(ELEMENT_TAGS)}


@dataclass(frozen=True)
class Point:
    kind: ClassVar[str] = "point"
    x_p: float
    y_p: float


@dataclass(frozen=True)
class Line:
    kind: ClassVar[str] = "line"
    x_start: float
    y_start: float
    x_end: float
    y_end: float
    v: int = 1

    def length(self) -> float:
        return math.hypot(self.x_end - self.x_start, self.y_end - self.y_start)


@dataclass(frozen=True)
class Circle:
    kind: ClassVar[str] = "circle"
    x_c: float
    y_c: float
    r: float


@dataclass(frozen=True)
class Arc:
    kind: ClassVar[str] = "arc"
    x_a: float
    y_a: float
    r: float
    theta_start: float
    theta_end: float

    def sweep(self) -> float:
        """Counter-clockwise sweep in degrees, in [0, 360)."""
        return (self.theta_end - self.theta_start) % 360.0


Primitive = Union[Point, Line, Circle, Arc]

PARAM_SLOTS = 5
# Number of meaningful parameter entries per kind, excluding the line
# validity flag (which is categorical, not a coordinate).
ACTIVE_PARAMS = {"point": 2, "line": 4, "circle": 3, "arc": 5}


@dataclass(frozen=True)
class ParamVector:
    """Fixed-width parameter encoding: 5 slots, zero-padded past the kind's arity."""

    kind: str
    values: tuple[float, float, float, float, float]


@dataclass(frozen=True)
class ElementRef:
    """Reference to a primitive sub-element: (index into sketch, element tag)."""

    index: int
    element: str = "whole"

    def sort_key(self) -> tuple[int, int]:
        return (self.index, _ELEMENT_ORDER.get(self.element, len(ELEMENT_TAGS)))


@dataclass(frozen=True)
class NormalizationTransform:
    """Uniform scale plus translation between model space and the drawing frame."""

    scale: float
    offset_x: float
    offset_y: float

    def to_frame(self, x: float, y: float) -> tuple[float, float]:
        return ((x - self.offset_x) * self.scale, (y - self.offset_y) * self.scale)

    def to_model(self, x: float, y: float) -> tuple[float, float]:
        return (x / self.scale + self.offset_x, y / self.scale + self.offset_y)


IDENTITY_TRANSFORM = NormalizationTransform(scale=1.0, offset_x=0.0, offset_y=0.0)


@dataclass(frozen=True)
class Sketch:
    """Ordered collection of primitives, optionally carrying its frame transform."""

    primitives: tuple[Primitive, ...] = ()
    frame: NormalizationTransform | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.primitives, tuple):
            object.__setattr__(self, "primitives", tuple(self.primitives))


@dataclass(frozen=True)
class Violation:
    """One validation finding: a code, the offending primitive index, a message."""

    code: str
    index: int
    message: str


def param_vector(p: Primitive) -> ParamVector:
    """Encode a primitive as its zero-padded 5-slot parameter vector."""
    if isinstance(p, Point):
        vals = (p.x_p, p.y_p, 0.0, 0.0, 0.0)
    elif isinstance(p, Line):
        vals = (p.x_start, p.y_start, p.x_end, p.y_end, float(p.v))
    elif isinstance(p, Circle):
        vals = (p.x_c, p.y_c, p.r, 0.0, 0.0)
    elif isinstance(p, Arc):
        vals = (p.x_a, p.y_a, p.r, p.theta_start, p.theta_end)
    else:
        raise TypeError(f"not a primitive: {p!r}")
    return ParamVector(kind=p.kind, values=vals)


def arc_endpoints(a: Arc) -> tuple[Point, Point]:
    """Start and end points of an arc, from its center, radius, and angles."""
    ts = math.radians(a.theta_start)
    te = math.radians(a.theta_end)
    start = Point(a.x_a + a.r * math.cos(ts), a.y_a + a.r * math.sin(ts))
    end = Point(a.x_a + a.r * math.cos(te), a.y_a + a.r * math.sin(te))
    return start, end


def angle_in_sweep(angle: float, a: Arc) -> bool:
    """True when `angle` (degrees) lies on the arc's CCW sweep, endpoints inclusive."""
    rel = (angle - a.theta_start) % 360.0
    return rel <= a.sweep()


def primitive_bbox(p: Primitive) -> tuple[float, float, float, float]:
    """Tight axis-aligned bounding box (min_x, min_y, max_x, max_y)."""
    if isinstance(p, Point):
        return (p.x_p, p.y_p, p.x_p, p.y_p)
    if isinstance(p, Line):
        return (
            min(p.x_start, p.x_end),
            min(p.y_start, p.y_end),
            max(p.x_start, p.x_end),
            max(p.y_start, p.y_end),
        )
    if isinstance(p, Circle):
        return (p.x_c - p.r, p.y_c - p.r, p.x_c + p.r, p.y_c + p.r)
    if isinstance(p, Arc):
        start, end = arc_endpoints(p)
        xs = [start.x_p, end.x_p]
        ys = [start.y_p, end.y_p]
        # Extremes occur only where the sweep crosses a cardinal direction.
        for ang, dx, dy in ((0.0, 1.0, 0.0), (90.0, 0.0, 1.0), (180.0, -1.0, 0.0), (270.0, 0.0, -1.0)):
            if angle_in_sweep(ang, p):
                xs.append(p.x_a + p.r * dx)
                ys.append(p.y_a + p.r * dy)
        return (min(xs), min(ys), max(xs), max(ys))
    raise TypeError(f"not a primitive: {p!r}")


def sketch_bbox(s: Sketch) -> tuple[float, float, float, float]:
    if not s.primitives:
        raise EmptySketchError("cannot compute the bounding box of an empty sketch")
    boxes = [primitive_bbox(p) for p in s.primitives]
    return (
        min(b[0] for b in boxes),
        min(b[1] for b in boxes),
        max(b[2] for b in boxes),
        max(b[3] for b in boxes),
    )


def _transform_primitive(p: Primitive, t: NormalizationTransform) -> Primitive:
    if isinstance(p, Point):
        x, y = t.to_frame(p.x_p, p.y_p)
        return Point(x, y)
    if isinstance(p, Line):
        xs, ys = t.to_frame(p.x_start, p.y_start)
        xe, ye = t.to_frame(p.x_end, p.y_end)
        return Line(xs, ys, xe, ye, p.v)
    if isinstance(p, Circle):
        x, y = t.to_frame(p.x_c, p.y_c)
        return Circle(x, y, p.r * t.scale)
    if isinstance(p, Arc):
        x, y = t.to_frame(p.x_a, p.y_a)
        return Arc(x, y, p.r * t.scale, p.theta_start, p.theta_end)
    raise TypeError(f"not a primitive: {p!r}")


def _untransform_primitive(p: Primitive, t: NormalizationTransform) -> Primitive:
    if isinstance(p, Point):
        x, y = t.to_model(p.x_p, p.y_p)
        return Point(x, y)
    if isinstance(p, Line):
        xs, ys = t.to_model(p.x_start, p.y_start)
        xe, ye = t.to_model(p.x_end, p.y_end)
        return Line(xs, ys, xe, ye, p.v)
    if isinstance(p, Circle):
        x, y = t.to_model(p.x_c, p.y_c)
        return Circle(x, y, p.r / t.scale)
    if isinstance(p, Arc):
        x, y = t.to_model(p.x_a, p.y_a)
        return Arc(x, y, p.r / t.scale, p.theta_start, p.theta_end)
    raise TypeError(f"not a primitive: {p!r}")


def normalize_sketch(s: Sketch) -> tuple[Sketch, NormalizationTransform]:
    """Fit a sketch into the drawing frame.

    Uniform (aspect-preserving) scale maps the longer bounding-box side onto
    [0, 999]; the shorter side is centered within [0, 999]. Raises
    EmptySketchError for empty sketches and DegenerateBoundingBoxError when
    the bounding box has no extent in either axis.
    """
    if not s.primitives:
        raise EmptySketchError("cannot normalize an empty sketch")
    min_x, min_y, max_x, max_y = sketch_bbox(s)
    ext_x = max_x - min_x
    ext_y = max_y - min_y
    extent = max(ext_x, ext_y)
    if extent <= 0.0:
        raise DegenerateBoundingBoxError(
            "sketch bounding box has zero extent in both axes"
        )
    scale = EHP_SPAN / extent
    pad_x = (EHP_SPAN - ext_x * scale) / 2.0
    pad_y = (EHP_SPAN - ext_y * scale) / 2.0
    t = NormalizationTransform(
        scale=scale,
        offset_x=min_x - pad_x / scale,
        offset_y=min_y - pad_y / scale,
    )
    prims = tuple(_transform_primitive(p, t) for p in s.primitives)
    return Sketch(primitives=prims, frame=t), t


def denormalize_sketch(s: Sketch, t: NormalizationTransform) -> Sketch:
    """Invert a normalization. The sketch must carry a frame equal to `t`."""
    if s.frame is None:
        raise MissingFrameError("sketch carries no normalization frame")
    if s.frame != t:
        raise MissingFrameError("sketch frame does not match the given transform")
    prims = tuple(_untransform_primitive(p, t) for p in s.primitives)
    return Sketch(primitives=prims, frame=None)


def validate_sketch(s: Sketch) -> list[Violation]:
    """Collect structural violations without raising.

    Checks nonpositive radii, zero-length lines, degenerate (zero-sweep)
    arcs, and out-of-range values: angles must lie in [0, 360) always,
    coordinates in [0, 1000) when the sketch carries a frame.
    """
    out: list[Violation] = []
    check_range = s.frame is not None

    def coord_ok(v: float) -> bool:
        return 0.0 <= v < EHP_LIMIT

    for i, p in enumerate(s.primitives):
        if isinstance(p, Line):
            if p.x_start == p.x_end and p.y_start == p.y_end:
                out.append(Violation("zero_length_line", i, "line endpoints coincide"))
            if p.v not in (0, 1):
                out.append(Violation("out_of_range", i, f"validity flag {p.v!r} not in {{0, 1}}"))
        elif isinstance(p, (Circle, Arc)):
            r = p.r
            if r <= 0.0:
                out.append(Violation("nonpositive_radius", i, f"radius {r} <= 0"))
        if isinstance(p, Arc):
            if p.sweep() == 0.0:
                out.append(Violation("degenerate_arc", i, "arc sweep is zero"))
            for name, ang in (("theta_start", p.theta_start), ("theta_end", p.theta_end)):
                if not 0.0 <= ang < 360.0:
                    out.append(Violation("out_of_range", i, f"{name}={ang} outside [0, 360)"))
        if check_range:
            coords: tuple[float, ...]
            if isinstance(p, Point):
                coords = (p.x_p, p.y_p)
            elif isinstance(p, Line):
                coords = (p.x_start, p.y_start, p.x_end, p.y_end)
            else:
                coords = (p.x_c, p.y_c) if isinstance(p, Circle) else (p.x_a, p.y_a)
            if not all(coord_ok(c) for c in coords):
                out.append(Violation("out_of_range", i, f"coordinates {coords} outside [0, 1000)"))
    return out


def resolve_element(s: Sketch, ref: ElementRef) -> tuple[float, float]:
    """Resolve an element reference to a 2D coordinate.

    `whole` means the point itself, a line's midpoint, or a circle/arc
    center; `start`/`end` are line or arc endpoints; `center` is a circle or
    arc center. Anything else raises DanglingReferenceError.
    """
    if not 0 <= ref.index < len(s.primitives):
        raise DanglingReferenceError(
            f"primitive index {ref.index} out of range for sketch of {len(s.primitives)}"
        )
    p = s.primitives[ref.index]
    tag = ref.element
    if isinstance(p, Point):
        if tag == "whole":
            return (p.x_p, p.y_p)
    elif isinstance(p, Line):
        if tag == "whole":
            return ((p.x_start + p.x_end) / 2.0, (p.y_start + p.y_end) / 2.0)
        if tag == "start":
            return (p.x_start, p.y_start)
        if tag == "end":
            return (p.x_end, p.y_end)
    elif isinstance(p, Circle):
        if tag in ("whole", "center"):
            return (p.x_c, p.y_c)
    elif isinstance(p, Arc):
        if tag in ("whole", "center"):
            return (p.x_a, p.y_a)
        if tag in ("start", "end"):
            start, end = arc_endpoints(p)
            pt = start if tag == "start" else end
            return (pt.x_p, pt.y_p)
    raise DanglingReferenceError(f"element {tag!r} does not exist on a {p.kind}")
