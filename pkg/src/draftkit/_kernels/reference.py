"""Pure numpy kernels: the fallback backend.

Every formula here is written with the exact operation sequence used by the
compiled backend (explicit multiplies, plain division, sqrt, clamp low then
high) so both produce bit-identical coverage values.
"""
from __future__ import annotations

import numpy as np

name = "reference"


def _pixel_grid(ix0: int, ix1: int, iy0: int, iy1: int) -> tuple[np.ndarray, np.ndarray]:
    xs = np.arange(ix0, ix1, dtype=np.float64) + 0.5
    ys = np.arange(iy0, iy1, dtype=np.float64) + 0.5
    return xs[None, :], ys[:, None]


def _blend(img: np.ndarray, ix0: int, ix1: int, iy0: int, iy1: int, d: np.ndarray, half: float) -> None:
    cov = 0.5 + (half - d)
    cov = np.minimum(np.maximum(cov, 0.0), 1.0)
    region = img[iy0:iy1, ix0:ix1]
    np.maximum(region, cov, out=region)


def line_coverage(
    img: np.ndarray,
    ix0: int,
    ix1: int,
    iy0: int,
    iy1: int,
    x0: float,
    y0: float,
    x1: float,
    y1: float,
    half: float,
) -> None:
    """Max-blend coverage of a stroked segment into img over the clipped box."""
    px, py = _pixel_grid(ix0, ix1, iy0, iy1)
    dx = x1 - x0
    dy = y1 - y0
    len2 = dx * dx + dy * dy
    if len2 > 0.0:
        t = ((px - x0) * dx + (py - y0) * dy) / len2
        t = np.minimum(np.maximum(t, 0.0), 1.0)
    else:
        t = np.zeros((iy1 - iy0, ix1 - ix0))
    qx = x0 + t * dx
    qy = y0 + t * dy
    ddx = px - qx
    ddy = py - qy
    d = np.sqrt(ddx * ddx + ddy * ddy)
    _blend(img, ix0, ix1, iy0, iy1, d, half)


def circle_coverage(
    img: np.ndarray,
    ix0: int,
    ix1: int,
    iy0: int,
    iy1: int,
    cx: float,
    cy: float,
    r: float,
    half: float,
) -> None:
    """Max-blend coverage of a stroked circle outline (r=0 draws a dot)."""
    px, py = _pixel_grid(ix0, ix1, iy0, iy1)
    ux = px - cx
    uy = py - cy
    d = np.abs(np.sqrt(ux * ux + uy * uy) - r)
    _blend(img, ix0, ix1, iy0, iy1, d, half)


def arc_coverage(
    img: np.ndarray,
    ix0: int,
    ix1: int,
    iy0: int,
    iy1: int,
    cx: float,
    cy: float,
    r: float,
    sdx: float,
    sdy: float,
    edx: float,
    edy: float,
    sx: float,
    sy: float,
    ex: float,
    ey: float,
    big_sweep: int,
    half: float,
) -> None:
    """Max-blend coverage of a stroked arc.

    (sdx, sdy) / (edx, edy) are the start/end direction unit vectors and
    (sx, sy) / (ex, ey) the endpoints, all precomputed by the caller so that
    no trigonometry happens per pixel. Sweep membership uses cross-product
    sign tests; off-sweep pixels measure distance to the nearer endpoint.
    """
    px, py = _pixel_grid(ix0, ix1, iy0, iy1)
    ux = px - cx
    uy = py - cy
    if big_sweep:
        e_u = edx * uy - edy * ux
        u_s = ux * sdy - uy * sdx
        inside = ~((e_u > 0.0) & (u_s > 0.0))
    else:
        s_u = sdx * uy - sdy * ux
        u_e = ux * edy - uy * edx
        inside = (s_u >= 0.0) & (u_e >= 0.0)
    d_on = np.abs(np.sqrt(ux * ux + uy * uy) - r)
    dsx = px - sx
    dsy = py - sy
    dex = px - ex
    dey = py - ey
    d_s = np.sqrt(dsx * dsx + dsy * dsy)
    d_e = np.sqrt(dex * dex + dey * dey)
    d_off = np.minimum(d_s, d_e)
    d = np.where(inside, d_on, d_off)
    _blend(img, ix0, ix1, iy0, iy1, d, half)


def nn_mean_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Mean over rows of `a` of the Euclidean distance to the nearest row of `b`."""
    ax = a[:, 0][:, None]
    ay = a[:, 1][:, None]
    bx = b[:, 0][None, :]
    by = b[:, 1][None, :]
    dx = ax - bx
    dy = ay - by
    d2 = dx * dx + dy * dy
    return float(np.mean(np.sqrt(d2.min(axis=1))))
