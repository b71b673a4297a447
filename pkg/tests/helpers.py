"""Shared test oracles, implemented independently of the package internals."""
from __future__ import annotations

import itertools
import math

import numpy as np

from draftkit.constraints import Constraint, ToleranceConfig
from draftkit.geometry import Arc, Circle, ElementRef, Line, Primitive, Sketch


def brute_force_constraints(s: Sketch, tol: ToleranceConfig = ToleranceConfig()) -> set[Constraint]:
    """Direct predicate scan over all primitives and pairs, via atan2 angles."""
    found: set[Constraint] = set()
    prims = s.primitives
    sin_tol = math.sin(math.radians(tol.tau_ang))

    def angle_of(line: Line) -> float:
        return math.atan2(line.y_end - line.y_start, line.x_end - line.x_start)

    def ends(p: Primitive) -> list[tuple[str, float, float]]:
        if isinstance(p, Line):
            return [("start", p.x_start, p.y_start), ("end", p.x_end, p.y_end)]
        if isinstance(p, Arc):
            ts, te = math.radians(p.theta_start), math.radians(p.theta_end)
            return [
                ("start", p.x_a + p.r * math.cos(ts), p.y_a + p.r * math.sin(ts)),
                ("end", p.x_a + p.r * math.cos(te), p.y_a + p.r * math.sin(te)),
            ]
        return []

    def center_of(p: Primitive) -> tuple[float, float, float] | None:
        if isinstance(p, Circle):
            return (p.x_c, p.y_c, p.r)
        if isinstance(p, Arc):
            return (p.x_a, p.y_a, p.r)
        return None

    def line_center_tangent(line: Line, c: tuple[float, float, float]) -> bool:
        ang = angle_of(line)
        dist = abs(-(c[0] - line.x_start) * math.sin(ang) + (c[1] - line.y_start) * math.cos(ang))
        return abs(dist - c[2]) <= tol.tau_pos

    for i, p in enumerate(prims):
        if isinstance(p, Line):
            ang = angle_of(p)
            if abs(math.sin(ang)) <= sin_tol:
                found.add(Constraint("horizontal", (ElementRef(i, "whole"),)))
            if abs(math.cos(ang)) <= sin_tol:
                found.add(Constraint("vertical", (ElementRef(i, "whole"),)))

    for i, k in itertools.combinations(range(len(prims)), 2):
        a, b = prims[i], prims[k]
        whole = (ElementRef(i, "whole"), ElementRef(k, "whole"))
        if isinstance(a, Line) and isinstance(b, Line):
            diff = angle_of(a) - angle_of(b)
            ea, eb = ends(a), ends(b)
            duplicates = (
                math.hypot(ea[0][1] - eb[0][1], ea[0][2] - eb[0][2]) <= tol.tau_pos
                and math.hypot(ea[1][1] - eb[1][1], ea[1][2] - eb[1][2]) <= tol.tau_pos
            ) or (
                math.hypot(ea[0][1] - eb[1][1], ea[0][2] - eb[1][2]) <= tol.tau_pos
                and math.hypot(ea[1][1] - eb[0][1], ea[1][2] - eb[0][2]) <= tol.tau_pos
            )
            if abs(math.cos(diff)) <= sin_tol:
                found.add(Constraint("perpendicular", whole))
            elif abs(math.sin(diff)) <= sin_tol and not duplicates:
                found.add(Constraint("parallel", whole))
        ca, cb = center_of(a), center_of(b)
        if isinstance(a, Line) and cb is not None and line_center_tangent(a, cb):
            found.add(Constraint("tangent", whole))
        if isinstance(b, Line) and ca is not None and line_center_tangent(b, ca):
            found.add(Constraint("tangent", whole))
        if ca is not None and cb is not None:
            d = math.hypot(ca[0] - cb[0], ca[1] - cb[1])
            if d <= tol.tau_pos:
                found.add(Constraint("concentric", whole))
            if abs(d - (ca[2] + cb[2])) <= tol.tau_pos or abs(d - abs(ca[2] - cb[2])) <= tol.tau_pos:
                found.add(Constraint("tangent", whole))
        for tag_a, xa, ya in ends(a):
            for tag_b, xb, yb in ends(b):
                if math.hypot(xa - xb, ya - yb) <= tol.tau_pos:
                    found.add(
                        Constraint("coincident", (ElementRef(i, tag_a), ElementRef(k, tag_b)))
                    )
    return found


def brute_force_assignment(cost: np.ndarray, max_cost: float = math.inf) -> tuple[list[tuple[int, int]], float]:
    """Enumerate every injection of the smaller side into the larger.

    Returns the optimal kept pairs (lowest lexicographic among optima) and
    their total cost, using the same sentinel-and-drop convention as the
    implementation under test.
    """
    a = np.asarray(cost, dtype=np.float64)
    n, m = a.shape
    if n == 0 or m == 0:
        return [], 0.0
    finite = np.isfinite(a)
    max_finite = float(np.abs(a[finite]).max()) if finite.any() else 0.0
    big = max(1e9, 1e3 * max_finite)
    work = np.where(finite, a, big)

    best_total = math.inf
    best_pairs: list[tuple[int, int]] | None = None
    rows = range(n)
    if n <= m:
        for cols in itertools.permutations(range(m), n):
            total = sum(work[i, cols[i]] for i in rows)
            pairs = [(i, cols[i]) for i in rows]
            if total < best_total - 1e-12 or (
                abs(total - best_total) <= 1e-12 and (best_pairs is None or pairs < best_pairs)
            ):
                best_total = total
                best_pairs = pairs
    else:
        for picked_rows in itertools.permutations(range(n), m):
            total = sum(work[picked_rows[j], j] for j in range(m))
            pairs = sorted((picked_rows[j], j) for j in range(m))
            if total < best_total - 1e-12 or (
                abs(total - best_total) <= 1e-12 and (best_pairs is None or pairs < best_pairs)
            ):
                best_total = total
                best_pairs = pairs
    assert best_pairs is not None
    kept = [(i, j) for i, j in best_pairs if finite[i, j] and a[i, j] <= max_cost]
    return kept, float(sum(a[i, j] for i, j in kept))
