"""Deterministic anti-aliased rendering and curve sampling.

Sketches are rendered from the [0, 1000) drawing frame onto a grayscale
float image (0 background, 1 full stroke). Per-pixel coverage is
clamp(0.5 + (half_stroke - distance), 0, 1) with distance measured in pixels
to the stroked curve; primitives composite with max, so draw order cannot
change the result. Rendering is pixel-identical across runs and platforms.
"""
from __future__ import annotations

import math
import struct
import zlib
from dataclasses import dataclass

import numpy as np

from draftkit import _kernels
from draftkit.errors import UnnormalizedSketchError
from draftkit.geometry import (
    EHP_LIMIT,
    Arc,
    Circle,
    Line,
    Point,
    Primitive,
    Sketch,
    arc_endpoints,
)


@dataclass(frozen=True)
class RasterImage:
    """Rendered page: (height, width) float64 intensities in [0, 1]."""

    width: int
    height: int
    pixels: np.ndarray

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RasterImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )


@dataclass(frozen=True, eq=False)
class PointSample:
    """Points sampled along primitive curves, as an (n, 2) float64 array."""

    points: np.ndarray

    def __len__(self) -> int:
        return len(self.points)


def _field_coords(p: Primitive) -> tuple[float, ...]:
    if isinstance(p, Point):
        return (p.x_p, p.y_p)
    if isinstance(p, Line):
        return (p.x_start, p.y_start, p.x_end, p.y_end)
    if isinstance(p, Circle):
        return (p.x_c, p.y_c)
    return (p.x_a, p.y_a)


def _check_normalized(s: Sketch) -> None:
    for i, p in enumerate(s.primitives):
        for c in _field_coords(p):
            if not 0.0 <= c < EHP_LIMIT:
                raise UnnormalizedSketchError(
                    f"primitive {i} coordinate {c} outside [0, {EHP_LIMIT})"
                )


def _clip_box(
    min_x: float, min_y: float, max_x: float, max_y: float, pad: float, w: int, h: int
) -> tuple[int, int, int, int] | None:
    ix0 = max(0, int(math.floor(min_x - pad)))
    iy0 = max(0, int(math.floor(min_y - pad)))
    ix1 = min(w, int(math.ceil(max_x + pad)) + 1)
    iy1 = min(h, int(math.ceil(max_y + pad)) + 1)
    if ix0 >= ix1 or iy0 >= iy1:
        return None
    return ix0, ix1, iy0, iy1


def render(
    s: Sketch,
    width: int = 512,
    height: int = 512,
    stroke: float = 2.0,
    backend: str | None = None,
) -> RasterImage:
    """Render a drawing-frame sketch to a grayscale coverage image.

    Positions scale per axis (width/1000, height/1000); radii use the x
    scale. stroke is the stroke width in pixels and must be >= 1. Raises
    UnnormalizedSketchError when any coordinate falls outside the frame.
    """
    if width < 1 or height < 1:
        raise ValueError("image dimensions must be positive")
    if stroke < 1.0:
        raise ValueError("stroke width must be >= 1 pixel")
    _check_normalized(s)
    k = _kernels.get_backend(backend)
    img = np.zeros((height, width), dtype=np.float64)
    sx = width / EHP_LIMIT
    sy = height / EHP_LIMIT
    half = 0.5 * stroke
    pad = half + 1.0

    for p in s.primitives:
        if isinstance(p, Point):
            cx, cy = p.x_p * sx, p.y_p * sy
            box = _clip_box(cx, cy, cx, cy, pad, width, height)
            if box:
                k.circle_coverage(img, *box, cx, cy, 0.0, half)
        elif isinstance(p, Line):
            x0, y0 = p.x_start * sx, p.y_start * sy
            x1, y1 = p.x_end * sx, p.y_end * sy
            box = _clip_box(min(x0, x1), min(y0, y1), max(x0, x1), max(y0, y1), pad, width, height)
            if box:
                k.line_coverage(img, *box, x0, y0, x1, y1, half)
        elif isinstance(p, Circle):
            cx, cy, r = p.x_c * sx, p.y_c * sy, p.r * sx
            box = _clip_box(cx - r, cy - r, cx + r, cy + r, pad, width, height)
            if box:
                k.circle_coverage(img, *box, cx, cy, r, half)
        elif isinstance(p, Arc):
            cx, cy, r = p.x_a * sx, p.y_a * sy, p.r * sx
            ts = math.radians(p.theta_start)
            te = math.radians(p.theta_end)
            sdx, sdy = math.cos(ts), math.sin(ts)
            edx, edy = math.cos(te), math.sin(te)
            ax, ay = cx + r * sdx, cy + r * sdy
            bx, by = cx + r * edx, cy + r * edy
            big = 1 if p.sweep() > 180.0 else 0
            box = _clip_box(cx - r, cy - r, cx + r, cy + r, pad, width, height)
            if box:
                k.arc_coverage(
                    img, *box, cx, cy, r, sdx, sdy, edx, edy, ax, ay, bx, by, big, half
                )
    return RasterImage(width=width, height=height, pixels=img)


def sample_points(s: Sketch, per_primitive: int = 64) -> PointSample:
    """Sample points along each primitive, uniformly by arc length.

    Lines and arcs include both endpoints (per_primitive >= 2 points each);
    circles take per_primitive points at uniform angles starting at 0
    degrees; bare points contribute themselves once.
    """
    if per_primitive < 2:
        raise ValueError("per_primitive must be >= 2")
    pts: list[tuple[float, float]] = []
    n = per_primitive
    for p in s.primitives:
        if isinstance(p, Point):
            pts.append((p.x_p, p.y_p))
        elif isinstance(p, Line):
            for k in range(n):
                t = k / (n - 1)
                pts.append(
                    (
                        p.x_start + t * (p.x_end - p.x_start),
                        p.y_start + t * (p.y_end - p.y_start),
                    )
                )
        elif isinstance(p, Circle):
            for k in range(n):
                a = math.radians(360.0 * k / n)
                pts.append((p.x_c + p.r * math.cos(a), p.y_c + p.r * math.sin(a)))
        elif isinstance(p, Arc):
            sweep = p.sweep()
            for k in range(n):
                a = math.radians(p.theta_start + sweep * k / (n - 1))
                pts.append((p.x_a + p.r * math.cos(a), p.y_a + p.r * math.sin(a)))
    arr = np.array(pts, dtype=np.float64) if pts else np.zeros((0, 2), dtype=np.float64)
    return PointSample(points=arr)


def to_grayscale_bytes(img: RasterImage, invert: bool = True) -> np.ndarray:
    """Quantize to uint8, top row first; invert gives dark strokes on white."""
    q = np.rint(img.pixels * 255.0).astype(np.uint8)
    if invert:
        q = 255 - q
    return q[::-1, :]  # row 0 of the raster is y=0; images store top-down


def write_png(img: RasterImage, path: str, invert: bool = True) -> bytes:
    """Encode as 8-bit grayscale PNG; returns the bytes written.

    Hand-rolled encoder (zlib + struct) so output bytes are deterministic
    for a given environment.
    """
    data = to_grayscale_bytes(img, invert=invert)
    raw = b"".join(b"\x00" + row.tobytes() for row in data)

    def chunk(tag: bytes, payload: bytes) -> bytes:
        body = tag + payload
        return struct.pack(">I", len(payload)) + body + struct.pack(">I", zlib.crc32(body))

    png = b"".join(
        (
            b"\x89PNG\r\n\x1a\n",
            chunk(b"IHDR", struct.pack(">IIBBBBB", img.width, img.height, 8, 0, 0, 0, 0)),
            chunk(b"IDAT", zlib.compress(raw, 6)),
            chunk(b"IEND", b""),
        )
    )
    with open(path, "wb") as fh:
        fh.write(png)
    return png
