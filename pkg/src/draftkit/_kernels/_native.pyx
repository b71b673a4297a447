# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels: per-pixel stroke coverage and nearest-neighbor scans.

Mirrors reference.py operation for operation; keep the two in sync. The
extension is compiled with -ffp-contract=off so results stay bit-identical
to the numpy backend.
"""
from libc.math cimport INFINITY, fabs, sqrt

name = "native"


cdef inline double _clamp01(double c) nogil:
    if c < 0.0:
        c = 0.0
    if c > 1.0:
        c = 1.0
    return c


def line_coverage(
    double[:, ::1] img,
    int ix0,
    int ix1,
    int iy0,
    int iy1,
    double x0,
    double y0,
    double x1,
    double y1,
    double half,
):
    """Max-blend coverage of a stroked segment into img over the clipped box."""
    cdef int ix, iy
    cdef double px, py, t, qx, qy, ddx, ddy, d, cov
    cdef double dx = x1 - x0
    cdef double dy = y1 - y0
    cdef double len2 = dx * dx + dy * dy
    for iy in range(iy0, iy1):
        py = iy + 0.5
        for ix in range(ix0, ix1):
            px = ix + 0.5
            if len2 > 0.0:
                t = ((px - x0) * dx + (py - y0) * dy) / len2
                if t < 0.0:
                    t = 0.0
                if t > 1.0:
                    t = 1.0
            else:
                t = 0.0
            qx = x0 + t * dx
            qy = y0 + t * dy
            ddx = px - qx
            ddy = py - qy
            d = sqrt(ddx * ddx + ddy * ddy)
            cov = _clamp01(0.5 + (half - d))
            if cov > img[iy, ix]:
                img[iy, ix] = cov


def circle_coverage(
    double[:, ::1] img,
    int ix0,
    int ix1,
    int iy0,
    int iy1,
    double cx,
    double cy,
    double r,
    double half,
):
    """Max-blend coverage of a stroked circle outline (r=0 draws a dot)."""
    cdef int ix, iy
    cdef double px, py, ux, uy, d, cov
    for iy in range(iy0, iy1):
        py = iy + 0.5
        for ix in range(ix0, ix1):
            px = ix + 0.5
            ux = px - cx
            uy = py - cy
            d = fabs(sqrt(ux * ux + uy * uy) - r)
            cov = _clamp01(0.5 + (half - d))
            if cov > img[iy, ix]:
                img[iy, ix] = cov


def arc_coverage(
    double[:, ::1] img,
    int ix0,
    int ix1,
    int iy0,
    int iy1,
    double cx,
    double cy,
    double r,
    double sdx,
    double sdy,
    double edx,
    double edy,
    double sx,
    double sy,
    double ex,
    double ey,
    int big_sweep,
    double half,
):
    """Max-blend coverage of a stroked arc; see reference.arc_coverage."""
    cdef int ix, iy
    cdef bint inside
    cdef double px, py, ux, uy, d, cov
    cdef double e_u, u_s, s_u, u_e
    cdef double dsx, dsy, dex, dey, d_s, d_e
    for iy in range(iy0, iy1):
        py = iy + 0.5
        for ix in range(ix0, ix1):
            px = ix + 0.5
            ux = px - cx
            uy = py - cy
            if big_sweep:
                e_u = edx * uy - edy * ux
                u_s = ux * sdy - uy * sdx
                inside = not (e_u > 0.0 and u_s > 0.0)
            else:
                s_u = sdx * uy - sdy * ux
                u_e = ux * edy - uy * edx
                inside = s_u >= 0.0 and u_e >= 0.0
            if inside:
                d = fabs(sqrt(ux * ux + uy * uy) - r)
            else:
                dsx = px - sx
                dsy = py - sy
                dex = px - ex
                dey = py - ey
                d_s = sqrt(dsx * dsx + dsy * dsy)
                d_e = sqrt(dex * dex + dey * dey)
                d = d_s if d_s < d_e else d_e
            cov = _clamp01(0.5 + (half - d))
            if cov > img[iy, ix]:
                img[iy, ix] = cov


def nn_mean_distance(double[:, ::1] a, double[:, ::1] b):
    """Mean over rows of `a` of the Euclidean distance to the nearest row of `b`."""
    cdef Py_ssize_t i, j
    cdef Py_ssize_t na = a.shape[0]
    cdef Py_ssize_t nb = b.shape[0]
    cdef double best, dx, dy, d2
    cdef double total = 0.0
    for i in range(na):
        best = INFINITY
        for j in range(nb):
            dx = a[i, 0] - b[j, 0]
            dy = a[i, 1] - b[j, 1]
            d2 = dx * dx + dy * dy
            if d2 < best:
                best = d2
        total += sqrt(best)
    return total / na
